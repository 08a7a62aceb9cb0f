"""IB1 memory-based classification over symbolic feature vectors.

Cases are stored verbatim. A query is classified by majority vote over
every stored case whose overlap distance is among the ``k`` smallest
distinct distances. Vote ties go to the class with the larger training
frequency, then to the lexicographically smallest class.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .corpus import check_symbol
from .errors import DimensionError, ParseError, TrainError

WEIGHTINGS = ("none", "gain_ratio")


class TrainingCase(NamedTuple):
    features: tuple
    target: str


@dataclass(frozen=True)
class ClassifierConfig:
    k: int = 1
    weighting: str = "none"

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {self.weighting!r}")


class Diagnostics(NamedTuple):
    neighbor_count: int
    distances: tuple  # the distinct distances that formed the neighbor set
    votes: dict


def overlap_distance(a: Sequence, b: Sequence, weights=None) -> float:
    if len(a) != len(b):
        raise DimensionError(f"arity mismatch: {len(a)} vs {len(b)}")
    if weights is None:
        return sum(1 for x, y in zip(a, b) if x != y)
    if len(weights) != len(a):
        raise DimensionError(f"{len(weights)} weights for arity {len(a)}")
    d = 0.0
    for x, y, w in zip(a, b, weights):
        if x != y:
            d += w
    return d


def _entropy(counts) -> float:
    total = sum(counts)
    h = 0.0
    for c in counts:
        if c:
            p = c / total
            h -= p * math.log2(p)
    return h


def gain_ratio_weights(cases: Sequence[TrainingCase]) -> tuple:
    """Information gain of each feature divided by its split information.

    A feature with zero split information (a single value across all
    cases) gets weight 0.
    """
    n = len(cases)
    class_entropy = _entropy(Counter(c.target for c in cases).values())
    weights = []
    for j in range(len(cases[0].features)):
        by_value: dict = {}
        for c in cases:
            by_value.setdefault(c.features[j], Counter())[c.target] += 1
        split_info = _entropy([sum(cnt.values()) for cnt in by_value.values()])
        if split_info <= 0.0:
            weights.append(0.0)
            continue
        cond = sum(sum(cnt.values()) / n * _entropy(cnt.values()) for cnt in by_value.values())
        gain = max(class_entropy - cond, 0.0)
        weights.append(gain / split_info)
    return tuple(weights)


@dataclass(frozen=True)
class InstanceBase:
    cases: tuple
    class_freq: dict
    arity: int
    weights: tuple
    config: ClassifierConfig = ClassifierConfig()
    _codes: list = field(default=None, repr=False, compare=False)
    _matrix: np.ndarray = field(default=None, repr=False, compare=False)
    _targets: tuple = field(default=None, repr=False, compare=False)
    _weights: np.ndarray = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.cases)

    def __getstate__(self):
        return {"cases": self.cases, "config": self.config}

    def __setstate__(self, state):
        rebuilt = train(state["cases"], state["config"])
        self.__dict__.update(rebuilt.__dict__)


def train(cases, config: ClassifierConfig | None = None) -> InstanceBase:
    config = config or ClassifierConfig()
    cases = tuple(TrainingCase(tuple(c[0]), c[1]) for c in cases)
    if not cases:
        raise TrainError("cannot train on an empty case list")
    arity = len(cases[0].features)
    if arity == 0:
        raise DimensionError("cases need at least one feature")
    for i, c in enumerate(cases):
        if len(c.features) != arity:
            raise DimensionError(f"case {i} has arity {len(c.features)}, expected {arity}")

    if config.weighting == "gain_ratio":
        weights = gain_ratio_weights(cases)
    else:
        weights = (1.0,) * arity

    codes = [dict() for _ in range(arity)]
    matrix = np.empty((len(cases), arity), dtype=np.int64)
    for i, c in enumerate(cases):
        for j, v in enumerate(c.features):
            matrix[i, j] = codes[j].setdefault(v, len(codes[j]))

    class_freq = dict(Counter(c.target for c in cases))
    return InstanceBase(
        cases=cases,
        class_freq=class_freq,
        arity=arity,
        weights=weights,
        config=config,
        _codes=codes,
        _matrix=matrix,
        _targets=tuple(c.target for c in cases),
        _weights=np.asarray(weights, dtype=np.float64),
    )


def distances(base: InstanceBase, query: Sequence) -> np.ndarray:
    """Weighted overlap distance from ``query`` to every stored case, in storage order."""
    if len(query) != base.arity:
        raise DimensionError(f"query arity {len(query)} does not match base arity {base.arity}")
    d = np.zeros(len(base.cases), dtype=np.float64)
    # accumulate feature by feature, left to right, so the float sums match
    # a plain sequential loop exactly
    for j, v in enumerate(query):
        code = base._codes[j].get(v, -1)
        d += base._weights[j] * (base._matrix[:, j] != code)
    return d


def pick_class(votes: Counter, class_freq: dict) -> str:
    return min(votes, key=lambda c: (-votes[c], -class_freq.get(c, 0), c))


def classify(base: InstanceBase, query: Sequence, config: ClassifierConfig | None = None):
    """Return ``(class, Diagnostics)`` for ``query``.

    ``config`` only contributes ``k`` here; weighting is fixed when the base
    is trained. Without a config the training config is used.
    """
    k = (config or base.config).k
    d = distances(base, query)
    levels = np.unique(d)[:k]
    mask = d <= levels[-1]
    idx = np.flatnonzero(mask)
    votes = Counter(base._targets[i] for i in idx)
    winner = pick_class(votes, base.class_freq)
    return winner, Diagnostics(len(idx), tuple(float(x) for x in levels), dict(votes))


def classify_many(base: InstanceBase, queries, config: ClassifierConfig | None = None) -> list:
    return [classify(base, q, config)[0] for q in queries]


def write_cases(cases) -> str:
    out = []
    for c in cases:
        out.append("\t".join((*c[0], c[1])) + "\n")
    return "".join(out)


def parse_cases(text: str) -> list[TrainingCase]:
    """Read tab-separated cases; the last column is the target."""
    cases = []
    ncols = None
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line == "":
            continue
        fields = line.split("\t")
        if ncols is None:
            ncols = len(fields)
            if ncols < 2:
                raise ParseError("a case needs at least one feature and a target", lineno)
        elif len(fields) != ncols:
            raise ParseError(f"expected {ncols} columns, found {len(fields)}", lineno)
        for f in fields:
            try:
                check_symbol(f, "case field")
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from exc
        cases.append(TrainingCase(tuple(fields[:-1]), fields[-1]))
    return cases


def read_cases(path) -> list[TrainingCase]:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_cases(fh.read())


def save_cases(cases, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(write_cases(cases))
