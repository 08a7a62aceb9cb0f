"""Component (level-0) taggers.

A tagger object exposes ``train(corpus) -> model`` and every model exposes
``tag(corpus, source_name) -> AnnotationColumn``. Predictions from tools
that are not reimplemented here enter through ``load_external_column``.
"""

from ..columns import AnnotationColumn, load_external_column, write_column
from .hmm import HmmConfig, HmmModel, HmmTagger, tag_hmm, train_hmm
from .mbt import MbtConfig, MbtModel, MbtTagger, tag_mbt, train_mbt
from .unigram import UnigramModel, UnigramTagger, tag_unigram, train_unigram

TAGGERS = {
    "hmm": HmmTagger,
    "mbt": MbtTagger,
    "unigram": UnigramTagger,
}


def make_tagger(name: str):
    try:
        return TAGGERS[name]()
    except KeyError:
        raise ValueError(f"unknown tagger {name!r}; choose from {sorted(TAGGERS)}") from None


__all__ = [
    "AnnotationColumn", "load_external_column", "write_column",
    "HmmConfig", "HmmModel", "HmmTagger", "tag_hmm", "train_hmm",
    "MbtConfig", "MbtModel", "MbtTagger", "tag_mbt", "train_mbt",
    "UnigramModel", "UnigramTagger", "tag_unigram", "train_unigram",
    "TAGGERS", "make_tagger",
]
