"""Experiment configuration files.

Line-oriented ``key = value`` text. ``source`` may repeat and keeps file
order; every other key may appear once. Blank lines and lines starting
with ``#`` are ignored. Relative paths resolve against the config file's
directory.

    train = train.tsv
    test = test.tsv
    folds = 9
    source = WORD:word
    source = TNT:internal_tagger:hmm
    source = CEL:lexicon:celex.tsv
    source = W1:external_column:w1_train.col,w1_test.col
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from . import mbl
from .columns import read_column
from .corpus import read_corpus, split_train_test
from .errors import ConfigError
from .lexicon import read_lexicon
from .stacking import EXTERNAL, INTERNAL, KINDS, LEXICON, WORD, ExperimentPlan, SourceSpec, external

SCALAR_KEYS = ("train", "test", "folds", "k", "weighting", "seed")
REQUIRED_KEYS = ("train",)
DEFAULT_TRAIN_FRACTION = "0.9"


@dataclass(frozen=True)
class SourceDecl:
    name: str
    kind: str
    payload: str = ""
    line: int | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    train: str
    test: str | None = None
    folds: int = 9
    k: int = 1
    weighting: str = "none"
    seed: int | None = None
    sources: tuple = ()
    base_dir: str = "."


def parse_source(value: str, line=None) -> SourceDecl:
    """Parse ``name:kind[:payload]``; the payload may itself contain colons."""
    parts = value.split(":", 2)
    if len(parts) < 2 or not parts[0] or not parts[1]:
        raise ConfigError(f"source must look like name:kind:payload, got {value!r}", line)
    name, kind = parts[0].strip(), parts[1].strip()
    payload = parts[2].strip() if len(parts) == 3 else ""
    if kind not in KINDS:
        raise ConfigError(f"unknown source kind {kind!r}; expected one of {KINDS}", line)
    if kind != WORD and not payload:
        raise ConfigError(f"source {name!r} of kind {kind} needs a payload", line)
    if kind == EXTERNAL and len(payload.split(",")) != 2:
        raise ConfigError(
            f"external source {name!r} needs 'train_path,test_path' as payload", line
        )
    return SourceDecl(name, kind, payload, line)


def _int(value, key, line, minimum):
    try:
        n = int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}", line) from None
    if n < minimum:
        raise ConfigError(f"{key} must be >= {minimum}, got {n}", line)
    return n


def parse_config(text: str, base_dir=".") -> ExperimentConfig:
    values: dict = {}
    sources = []
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "source":
            decl = parse_source(value, lineno)
            if decl.name in names:
                raise ConfigError(f"duplicate source name {decl.name!r}", lineno)
            names.add(decl.name)
            sources.append(decl)
            continue
        if key not in SCALAR_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        if key == "folds":
            value = _int(value, key, lineno, 2)
        elif key == "k":
            value = _int(value, key, lineno, 1)
        elif key == "seed":
            value = _int(value, key, lineno, 0)
        elif key == "weighting" and value not in mbl.WEIGHTINGS:
            raise ConfigError(f"weighting must be one of {mbl.WEIGHTINGS}", lineno)
        values[key] = value
    for key in REQUIRED_KEYS:
        if key not in values:
            raise ConfigError(f"missing required key {key!r}")
    if not sources:
        raise ConfigError("at least one 'source' line is required")
    return ExperimentConfig(sources=tuple(sources), base_dir=str(base_dir), **values)


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), base_dir=path.parent)


def with_overrides(cfg: ExperimentConfig, **overrides) -> ExperimentConfig:
    """Return ``cfg`` with every non-``None`` override applied."""
    return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})


def _resolve(cfg: ExperimentConfig, p: str) -> Path:
    path = Path(p)
    return path if path.is_absolute() else Path(cfg.base_dir) / path


def build_sources(cfg: ExperimentConfig, train, test=None) -> list[SourceSpec]:
    """Materialize source declarations; external test columns need ``test``."""
    specs = []
    for d in cfg.sources:
        if d.kind == WORD:
            specs.append(SourceSpec(d.name, WORD))
        elif d.kind == INTERNAL:
            specs.append(SourceSpec(d.name, INTERNAL, d.payload))
        elif d.kind == LEXICON:
            specs.append(SourceSpec(d.name, LEXICON, read_lexicon(_resolve(cfg, d.payload), d.name)))
        else:
            train_path, test_path = (s.strip() for s in d.payload.split(","))
            train_col = read_column(train, _resolve(cfg, train_path), d.name)
            test_col = read_column(test, _resolve(cfg, test_path), d.name) if test is not None else None
            specs.append(external(d.name, train_col, test_col))
    return specs


def build_plan(cfg: ExperimentConfig) -> ExperimentPlan:
    """Load corpora and resources. Without ``test`` the train file is split 90/10
    (contiguous, or shuffled when a seed is configured)."""
    train = read_corpus(_resolve(cfg, cfg.train))
    if cfg.test is not None:
        test = read_corpus(_resolve(cfg, cfg.test))
    else:
        if any(d.kind == EXTERNAL for d in cfg.sources):
            raise ConfigError("external sources need an explicit 'test' corpus")
        train, test = split_train_test(train, DEFAULT_TRAIN_FRACTION, cfg.seed)
    return ExperimentPlan(
        train=train,
        test=test,
        sources=build_sources(cfg, train, test),
        folds=cfg.folds,
        classifier=mbl.ClassifierConfig(cfg.k, cfg.weighting),
        seed=cfg.seed or 0,
    )
