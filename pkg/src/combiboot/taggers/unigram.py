from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..columns import AnnotationColumn
from ..corpus import Corpus
from ..errors import TrainError


def _modal(counter: Counter) -> str:
    return min(counter, key=lambda t: (-counter[t], t))


@dataclass(frozen=True)
class UnigramModel:
    """Most frequent training tag per word, with the corpus-wide modal tag as fallback."""

    best: dict
    fallback: str

    def tag(self, corpus: Corpus, source_name="unigram") -> AnnotationColumn:
        return tag_unigram(self, corpus, source_name)


def train_unigram(train: Corpus) -> UnigramModel:
    if train.token_count == 0:
        raise TrainError("cannot train a unigram tagger on an empty corpus")
    per_word: dict[str, Counter] = {}
    overall = Counter()
    for form, tag in train.tokens():
        per_word.setdefault(form, Counter())[tag] += 1
        overall[tag] += 1
    return UnigramModel({w: _modal(c) for w, c in per_word.items()}, _modal(overall))


def tag_unigram(model: UnigramModel, corpus: Corpus, source_name="unigram") -> AnnotationColumn:
    return AnnotationColumn(
        source_name, tuple(model.best.get(f, model.fallback) for f in corpus.forms())
    )


class UnigramTagger:
    name = "unigram"

    def train(self, corpus: Corpus) -> UnigramModel:
        return train_unigram(corpus)
