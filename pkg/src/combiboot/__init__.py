"""Bootstrapping a tagger for a new tagset by stacking existing taggers and lexicons."""

from .columns import AnnotationColumn, load_external_column, write_column
from .corpus import (
    Corpus,
    FoldPlan,
    TaggedToken,
    make_folds,
    parse_vertical,
    split_train_test,
    vocabulary,
    write_vertical,
)
from .evaluation import EvalReport, accuracy, error_reduction, render_table
from .lexicon import Lexicon, annotate, build_lexicon, lookup
from .mbl import ClassifierConfig, InstanceBase, TrainingCase, classify, overlap_distance
from .stacking import (
    ExperimentPlan,
    SourceSpec,
    generate_level1_training,
    generate_test_cases,
    run_experiment,
)

__version__ = "0.1.0"
