"""Leak-free stacking of component taggers and resources into an IB1 combiner.

Level-1 training cases come from n-fold cross-validation: every internal
tagger is trained on all folds but one and tags the held-out fold, so no
feature value of a training case was produced by a model that saw that
case's sentence. Lexicon, word and external sources are not trained on the
target corpus and are applied directly to both train and test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from . import mbl
from .columns import AnnotationColumn, load_external_column
from .corpus import Corpus, FoldPlan, make_folds, vocabulary
from .errors import AlignmentError, ConfigError, FoldError
from .evaluation import EvalReport, accuracy
from .lexicon import Lexicon, annotate
from .taggers import make_tagger

INTERNAL = "internal_tagger"
LEXICON = "lexicon"
EXTERNAL = "external_column"
WORD = "word"
KINDS = (INTERNAL, LEXICON, EXTERNAL, WORD)

StackedCase = mbl.TrainingCase


class ExternalColumns(NamedTuple):
    """Pre-computed values of one external source for the train and test corpora.

    Each side is an ``AnnotationColumn`` or the text of an aligned column file.
    """

    train: object = None
    test: object = None


@dataclass(frozen=True)
class SourceSpec:
    name: str
    kind: str
    payload: object = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"source {self.name!r}: unknown kind {self.kind!r}")
        if self.kind == INTERNAL:
            if isinstance(self.payload, str):
                try:
                    object.__setattr__(self, "payload", make_tagger(self.payload))
                except ValueError as exc:
                    raise ConfigError(f"source {self.name!r}: {exc}") from None
            if not hasattr(self.payload, "train"):
                raise ConfigError(f"source {self.name!r}: internal taggers need a trainable tagger")
        elif self.kind == LEXICON and not isinstance(self.payload, Lexicon):
            raise ConfigError(f"source {self.name!r}: lexicon sources need a Lexicon")
        elif self.kind == EXTERNAL and not isinstance(self.payload, ExternalColumns):
            raise ConfigError(f"source {self.name!r}: external sources need ExternalColumns")


def word(name="WORD") -> SourceSpec:
    return SourceSpec(name, WORD)


def internal(name, tagger) -> SourceSpec:
    return SourceSpec(name, INTERNAL, tagger)


def lexicon_source(name, lexicon) -> SourceSpec:
    return SourceSpec(name, LEXICON, lexicon)


def external(name, train=None, test=None) -> SourceSpec:
    return SourceSpec(name, EXTERNAL, ExternalColumns(train, test))


def select_blocks(blocks: dict, names) -> list:
    """Concatenate named groups of sources, e.g. ``["CGN", "W1"]``."""
    out = []
    for n in names:
        if n not in blocks:
            raise ConfigError(f"unknown block {n!r}")
        out.extend(blocks[n])
    return out


def _check_names(sources):
    seen = set()
    for s in sources:
        if s.name in seen:
            raise ConfigError(f"duplicate source name {s.name!r}")
        seen.add(s.name)


def direct_column(spec: SourceSpec, corpus: Corpus, role: str) -> AnnotationColumn:
    """Column for a source that is applied without training on ``corpus``."""
    if spec.kind == WORD:
        return AnnotationColumn(spec.name, tuple(corpus.forms()))
    if spec.kind == LEXICON:
        col = annotate(spec.payload, corpus)
        return AnnotationColumn(spec.name, col.values)
    if spec.kind == EXTERNAL:
        value = getattr(spec.payload, role)
        if value is None:
            raise ConfigError(f"source {spec.name!r} has no {role} column")
        if isinstance(value, str):
            return load_external_column(corpus, value, spec.name)
        if len(value) != corpus.token_count:
            raise AlignmentError(
                f"source {spec.name!r}: {role} column has {len(value)} values for "
                f"{corpus.token_count} tokens",
                position=min(len(value), corpus.token_count),
            )
        return AnnotationColumn(spec.name, tuple(value))
    raise ValueError(f"{spec.kind} sources are not applied directly")


def cross_validated_column(spec: SourceSpec, train: Corpus, folds: FoldPlan) -> AnnotationColumn:
    values = [None] * train.token_count
    for fold in range(folds.n):
        members = folds.members(fold)
        if not members:
            continue
        model = spec.payload.train(train.subset(folds.complement(fold)))
        col = model.tag(train.subset(members), spec.name)
        it = iter(col.values)
        for s in members:
            start, end = train.sentence_span(s)
            for pos in range(start, end):
                values[pos] = next(it)
    return AnnotationColumn(spec.name, tuple(values))


def level1_columns(train: Corpus, sources, folds: FoldPlan) -> list[AnnotationColumn]:
    if len(folds.assignment) != len(train):
        raise FoldError(
            f"fold plan covers {len(folds.assignment)} sentences, corpus has {len(train)}"
        )
    _check_names(sources)
    return [
        cross_validated_column(s, train, folds) if s.kind == INTERNAL
        else direct_column(s, train, "train")
        for s in sources
    ]


def columns_for_test(train: Corpus, test: Corpus, sources) -> list[AnnotationColumn]:
    """Columns over ``test``; internal taggers are retrained once on all of ``train``."""
    _check_names(sources)
    cols = []
    for s in sources:
        if s.kind == INTERNAL:
            cols.append(s.payload.train(train).tag(test, s.name))
        else:
            cols.append(direct_column(s, test, "test"))
    return cols


def assemble_cases(columns, gold: Corpus) -> list[StackedCase]:
    targets = gold.tags()
    if not columns:
        raise ConfigError("at least one source is required")
    return [
        StackedCase(tuple(col.values[i] for col in columns), targets[i])
        for i in range(len(targets))
    ]


def generate_level1_training(train: Corpus, sources, folds: FoldPlan) -> list[StackedCase]:
    return assemble_cases(level1_columns(train, sources, folds), train)


def generate_test_cases(train: Corpus, test: Corpus, sources) -> list[StackedCase]:
    return assemble_cases(columns_for_test(train, test, sources), test)


@dataclass(frozen=True)
class ExperimentPlan:
    train: Corpus
    test: Corpus
    sources: tuple
    folds: int = 9
    classifier: mbl.ClassifierConfig = mbl.ClassifierConfig()
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        _check_names(self.sources)
        if not self.sources:
            raise ConfigError("an experiment needs at least one source")
        for s in self.sources:
            if s.kind == EXTERNAL and (s.payload.train is None or s.payload.test is None):
                raise ConfigError(f"external source {s.name!r} needs both train and test columns")

    @property
    def name(self) -> str:
        return "+".join(s.name for s in self.sources)


@dataclass
class ExperimentResult:
    column: AnnotationColumn
    report: EvalReport
    component_reports: list
    train_cases: list
    test_cases: list
    test_columns: list = field(default_factory=list)


def run_experiment_detailed(plan: ExperimentPlan) -> ExperimentResult:
    folds = make_folds(plan.train, plan.folds)
    train_cases = generate_level1_training(plan.train, plan.sources, folds)
    base = mbl.train(train_cases, plan.classifier)
    cols = columns_for_test(plan.train, plan.test, plan.sources)
    test_cases = assemble_cases(cols, plan.test)
    predicted = mbl.classify_many(base, [c.features for c in test_cases], plan.classifier)
    column = AnnotationColumn(plan.name, tuple(predicted))

    vocab = vocabulary(plan.train)
    report = accuracy(column, plan.test, vocab, plan.name)
    components = [
        accuracy(col, plan.test, vocab, s.name)
        for s, col in zip(plan.sources, cols)
        if s.kind == INTERNAL
    ]
    return ExperimentResult(column, report, components, train_cases, test_cases, cols)


def run_experiment(plan: ExperimentPlan):
    """Train the combiner on cross-validated cases and score it on the test corpus."""
    result = run_experiment_detailed(plan)
    return result.column, result.report
