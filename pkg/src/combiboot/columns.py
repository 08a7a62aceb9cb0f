"""Per-token annotation columns and the aligned column file format."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, check_symbol, iter_vertical_rows, _check_fields
from .errors import AlignmentError, ParseError


@dataclass(frozen=True)
class AnnotationColumn:
    """One value per corpus token, produced by a single named source."""

    source_name: str
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for v in self.values:
            check_symbol(v, "column value")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def write_column(corpus: Corpus, column: AnnotationColumn) -> str:
    """Render ``column`` next to the forms of ``corpus`` as ``form<TAB>value`` lines."""
    if len(column) != corpus.token_count:
        raise AlignmentError(
            f"column {column.source_name!r} has {len(column)} values for "
            f"{corpus.token_count} tokens",
            position=min(len(column), corpus.token_count),
        )
    out = []
    values = iter(column.values)
    for sent in corpus.sentences:
        for tok in sent:
            out.append(f"{tok.form}\t{next(values)}\n")
        out.append("\n")
    return "".join(out)


def load_external_column(corpus: Corpus, text: str, source_name: str) -> AnnotationColumn:
    """Adopt the values of an aligned prediction file.

    Every row's form must match the corpus token at the same position and the
    sentence boundaries must coincide. The error reports the first token
    position where the file and the corpus disagree.
    """
    rows = []
    if text.strip("\n"):
        for sent in iter_vertical_rows(text):
            for j, (lineno, fields) in enumerate(sent):
                _check_fields(lineno, fields)
                rows.append((fields[0], fields[1], j == len(sent) - 1))
    expected = []
    for sent in corpus.sentences:
        for j, tok in enumerate(sent):
            expected.append((tok.form, j == len(sent) - 1))

    for pos, ((form, _), row) in enumerate(zip(expected, rows)):
        if row[0] != form:
            raise AlignmentError(
                f"{source_name}: token {pos} is {row[0]!r} in the column file but {form!r} in the corpus",
                position=pos,
            )
    if len(rows) != len(expected):
        pos = min(len(rows), len(expected))
        raise AlignmentError(
            f"{source_name}: column file has {len(rows)} tokens, corpus has {len(expected)}",
            position=pos,
        )
    for pos, ((_, is_last), row) in enumerate(zip(expected, rows)):
        if row[2] != is_last:
            raise AlignmentError(
                f"{source_name}: sentence boundary mismatch at token {pos}", position=pos
            )
    return AnnotationColumn(source_name, tuple(r[1] for r in rows))


def read_column(corpus: Corpus, path, source_name: str) -> AnnotationColumn:
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    try:
        return load_external_column(corpus, text, source_name)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc
