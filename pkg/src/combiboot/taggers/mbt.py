"""Memory-based tagger in the MBT style.

Known words are classified from (two left tags, focus ambitag, focus word,
right ambitag); unknown words from (two left tags, first letter, last three
letters, right ambitag). Left tags are the tagger's own earlier decisions
at tagging time and gold tags at training time.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .. import mbl
from ..columns import AnnotationColumn
from ..corpus import Corpus
from ..errors import TrainError

PAD = "_"
UNKNOWN_AMBITAG = "?"


@dataclass(frozen=True)
class MbtConfig:
    rare_threshold: int = 5
    classifier: mbl.ClassifierConfig = mbl.ClassifierConfig(k=1, weighting="gain_ratio")


@dataclass(frozen=True)
class MbtModel:
    ambitags: dict
    known: mbl.InstanceBase
    unknown: mbl.InstanceBase | None
    fallback: str
    config: MbtConfig = MbtConfig()

    def tag(self, corpus: Corpus, source_name="mbt") -> AnnotationColumn:
        return tag_mbt(self, corpus, source_name)


def _right_ambitag(ambitags, forms, i):
    if i + 1 >= len(forms):
        return PAD
    return ambitags.get(forms[i + 1], UNKNOWN_AMBITAG)


def known_features(ambitags, forms, left, i) -> tuple:
    return (left[0], left[1], ambitags[forms[i]], forms[i], _right_ambitag(ambitags, forms, i))


def unknown_features(ambitags, forms, left, i) -> tuple:
    w = forms[i]
    tail = (PAD * 3 + w)[-3:]
    return (left[0], left[1], w[0], tail[0], tail[1], tail[2], _right_ambitag(ambitags, forms, i))


def train_mbt(train: Corpus, config: MbtConfig | None = None) -> MbtModel:
    config = config or MbtConfig()
    if train.token_count == 0:
        raise TrainError("cannot train MBT on an empty corpus")
    seen: dict[str, set] = {}
    freq = Counter()
    for form, tag in train.tokens():
        seen.setdefault(form, set()).add(tag)
        freq[form] += 1
    ambitags = {w: "|".join(sorted(ts)) for w, ts in seen.items()}

    known_cases, unknown_cases = [], []
    for sent in train.sentences:
        forms = [t.form for t in sent]
        tags = [t.tag for t in sent]
        for i in range(len(sent)):
            left = (tags[i - 2] if i >= 2 else PAD, tags[i - 1] if i >= 1 else PAD)
            known_cases.append((known_features(ambitags, forms, left, i), tags[i]))
            if freq[forms[i]] <= config.rare_threshold:
                unknown_cases.append((unknown_features(ambitags, forms, left, i), tags[i]))

    overall = Counter(train.tags())
    fallback = min(overall, key=lambda t: (-overall[t], t))
    return MbtModel(
        ambitags=ambitags,
        known=mbl.train(known_cases, config.classifier),
        unknown=mbl.train(unknown_cases, config.classifier) if unknown_cases else None,
        fallback=fallback,
        config=config,
    )


def tag_sentence(model: MbtModel, forms) -> list[str]:
    out: list[str] = []
    for i, w in enumerate(forms):
        left = (out[i - 2] if i >= 2 else PAD, out[i - 1] if i >= 1 else PAD)
        if w in model.ambitags:
            tag, _ = mbl.classify(model.known, known_features(model.ambitags, forms, left, i))
        elif model.unknown is not None:
            tag, _ = mbl.classify(model.unknown, unknown_features(model.ambitags, forms, left, i))
        else:
            tag = model.fallback
        out.append(tag)
    return out


def tag_mbt(model: MbtModel, corpus: Corpus, source_name="mbt") -> AnnotationColumn:
    values = []
    for sent in corpus.sentences:
        values.extend(tag_sentence(model, [t.form for t in sent]))
    return AnnotationColumn(source_name, tuple(values))


class MbtTagger:
    name = "mbt"

    def __init__(self, config: MbtConfig | None = None):
        self.config = config or MbtConfig()

    def train(self, corpus: Corpus) -> MbtModel:
        return train_mbt(corpus, self.config)
