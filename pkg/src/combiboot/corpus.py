"""Tagged corpora: data model, vertical file format, splitting and folds."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import ConfigError, EmptyCorpusError, FoldError, ParseError, SplitError

_ILLEGAL = ("\t", "\n", "\r")


def check_symbol(value, what="symbol"):
    """Raise ``ValueError`` unless ``value`` is a non-empty string without tabs or newlines."""
    if not isinstance(value, str) or not value:
        raise ValueError(f"{what} must be a non-empty string, got {value!r}")
    for ch in _ILLEGAL:
        if ch in value:
            raise ValueError(f"{what} {value!r} contains an illegal character {ch!r}")
    return value


class TaggedToken(NamedTuple):
    form: str
    tag: str


@dataclass(frozen=True)
class Corpus:
    """Sentence-segmented sequence of (form, tag) tokens in one tagset.

    ``sentences`` is stored as a tuple of tuples; lists are accepted and
    converted. A corpus may hold zero sentences but no sentence may be empty.
    """

    tagset_name: str
    sentences: tuple = ()
    _offsets: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        sentences = []
        for i, sent in enumerate(self.sentences):
            tokens = tuple(TaggedToken(*tok) for tok in sent)
            if not tokens:
                raise ValueError(f"sentence {i} is empty")
            for tok in tokens:
                check_symbol(tok.form, "form")
                check_symbol(tok.tag, "tag")
            sentences.append(tokens)
        object.__setattr__(self, "sentences", tuple(sentences))
        offsets, pos = [], 0
        for sent in self.sentences:
            offsets.append(pos)
            pos += len(sent)
        offsets.append(pos)
        object.__setattr__(self, "_offsets", tuple(offsets))

    def __len__(self):
        return len(self.sentences)

    @property
    def token_count(self) -> int:
        return self._offsets[-1]

    def sentence_span(self, i: int) -> tuple[int, int]:
        """Token index range ``[start, end)`` of sentence ``i``."""
        return self._offsets[i], self._offsets[i + 1]

    def tokens(self) -> list[TaggedToken]:
        return [tok for sent in self.sentences for tok in sent]

    def forms(self) -> list[str]:
        return [tok.form for sent in self.sentences for tok in sent]

    def tags(self) -> list[str]:
        return [tok.tag for sent in self.sentences for tok in sent]

    def subset(self, indices: Iterable[int]) -> "Corpus":
        """New corpus holding the sentences at ``indices``, in the given order."""
        return Corpus(self.tagset_name, tuple(self.sentences[i] for i in indices))


def token_count(corpus: Corpus) -> int:
    return corpus.token_count


def iter_vertical_rows(text: str):
    """Yield sentences of ``(line_number, fields)`` rows from vertical text.

    Shared by the corpus, column and lexicon readers. Rows are split on tabs
    but not validated here.
    """
    lines = text.split("\n")
    # a final newline leaves one empty trailing element
    if lines and lines[-1] == "":
        lines.pop()
    # trailing blank lines are ignored
    while lines and lines[-1] == "":
        lines.pop()
    current = []
    prev_blank = False
    for lineno, line in enumerate(lines, start=1):
        if line == "":
            if prev_blank or not current:
                raise ParseError("unexpected blank line", lineno)
            yield current
            current = []
            prev_blank = True
            continue
        prev_blank = False
        current.append((lineno, line.split("\t")))
    if current:
        yield current


def _check_fields(lineno, fields, ncols=2):
    if len(fields) != ncols:
        raise ParseError(f"expected {ncols} tab-separated fields, found {len(fields)}", lineno)
    for f in fields:
        if f == "":
            raise ParseError("empty field", lineno)
        if "\r" in f:
            raise ParseError("carriage return inside field", lineno)


def parse_vertical(text: str, tagset_name: str = "target") -> Corpus:
    """Parse ``form<TAB>tag`` lines with blank-line sentence boundaries."""
    sentences = []
    for rows in iter_vertical_rows(text):
        sent = []
        for lineno, fields in rows:
            _check_fields(lineno, fields)
            sent.append(TaggedToken(fields[0], fields[1]))
        sentences.append(tuple(sent))
    if not sentences:
        raise EmptyCorpusError("corpus contains no sentences")
    return Corpus(tagset_name, tuple(sentences))


def write_vertical(corpus: Corpus) -> str:
    out = []
    for sent in corpus.sentences:
        for form, tag in sent:
            out.append(f"{form}\t{tag}\n")
        out.append("\n")
    return "".join(out)


def read_corpus(path, tagset_name=None) -> Corpus:
    from pathlib import Path

    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    return parse_vertical(text, tagset_name or path.stem)


def write_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(write_vertical(corpus))


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        # repr round-trips, so 0.9 becomes exactly 9/10
        return Fraction(repr(x))
    return Fraction(x)


def split_train_test(corpus: Corpus, train_fraction=Fraction(9, 10), seed=None):
    """Sentence-level train/test split.

    With ``seed=None`` the sentences keep corpus order, so train is a head and
    test the tail. With an integer seed the sentence order is shuffled by a
    ``random.Random(seed)`` first. Train takes the longest prefix whose token
    count stays within ``train_fraction`` of the total.
    """
    try:
        frac = _as_fraction(train_fraction)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad train fraction {train_fraction!r}") from exc
    if not 0 < frac < 1:
        raise ConfigError(f"train fraction must lie in (0, 1), got {train_fraction}")
    if len(corpus) < 2:
        raise SplitError("need at least two sentences to split")

    order = list(range(len(corpus)))
    if seed is not None:
        random.Random(seed).shuffle(order)
    budget = frac * corpus.token_count
    used = 0
    cut = 0
    for idx in order:
        n = len(corpus.sentences[idx])
        if used + n > budget:
            break
        used += n
        cut += 1
    if cut == 0 or cut == len(order):
        raise SplitError(
            f"fraction {frac} leaves an empty part ({cut} of {len(order)} sentences in train)"
        )
    return corpus.subset(order[:cut]), corpus.subset(order[cut:])


@dataclass(frozen=True)
class FoldPlan:
    n: int
    assignment: tuple

    def fold_of(self, sentence_index: int) -> int:
        return self.assignment[sentence_index]

    def members(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.assignment) if f == fold]

    def complement(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.assignment) if f != fold]

    def sizes(self) -> list[int]:
        sizes = [0] * self.n
        for f in self.assignment:
            sizes[f] += 1
        return sizes


def make_folds(corpus: Corpus, n: int) -> FoldPlan:
    """Contiguous balanced fold plan; the first ``m % n`` folds get one extra sentence."""
    if not isinstance(n, int) or n < 2:
        raise ConfigError(f"fold count must be an integer >= 2, got {n!r}")
    m = len(corpus)
    if m < n:
        raise FoldError(f"cannot make {n} folds from {m} sentences")
    base, extra = divmod(m, n)
    assignment = []
    for fold in range(n):
        assignment.extend([fold] * (base + (1 if fold < extra else 0)))
    return FoldPlan(n, tuple(assignment))


def vocabulary(corpus: Corpus) -> set[str]:
    return {tok.form for sent in corpus.sentences for tok in sent}
