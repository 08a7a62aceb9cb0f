"""Ambiguity-class lexicon: word form -> sorted set of coarse categories."""

from __future__ import annotations

from dataclasses import dataclass, field

from .columns import AnnotationColumn
from .corpus import Corpus, check_symbol
from .errors import DataError, ParseError

UNKNOWN = "UNKNOWN"
SEPARATOR = "|"


@dataclass(frozen=True)
class Lexicon:
    entries: dict = field(default_factory=dict)
    name: str = "lexicon"

    def __len__(self):
        return len(self.entries)

    def __contains__(self, form):
        return form in self.entries


def build_lexicon(pairs, name="lexicon") -> Lexicon:
    """Collect (form, category) pairs; the result ignores input order and duplicates."""
    grouped: dict[str, set] = {}
    for i, pair in enumerate(pairs):
        try:
            form, category = pair
            check_symbol(form, "form")
            check_symbol(category, "category")
        except (TypeError, ValueError) as exc:
            raise DataError(f"record {i}: {exc}", index=i) from exc
        if category == UNKNOWN:
            raise DataError(f"record {i}: category name {UNKNOWN!r} is reserved", index=i)
        grouped.setdefault(form, set()).add(category)
    entries = {form: tuple(sorted(cats)) for form, cats in sorted(grouped.items())}
    return Lexicon(entries, name)


def lookup(lexicon: Lexicon, form: str) -> str:
    cats = lexicon.entries.get(form)
    if cats is None:
        return UNKNOWN
    return SEPARATOR.join(cats)


def annotate(lexicon: Lexicon, corpus: Corpus) -> AnnotationColumn:
    return AnnotationColumn(lexicon.name, tuple(lookup(lexicon, f) for f in corpus.forms()))


def parse_lexicon(text: str, name="lexicon") -> Lexicon:
    pairs = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line == "":
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(f"expected 2 tab-separated fields, found {len(fields)}", lineno)
        pairs.append((fields[0], fields[1]))
    try:
        return build_lexicon(pairs, name)
    except DataError as exc:
        raise ParseError(str(exc)) from exc


def write_lexicon(lexicon: Lexicon) -> str:
    return "".join(
        f"{form}\t{cat}\n" for form, cats in lexicon.entries.items() for cat in cats
    )


def read_lexicon(path, name=None) -> Lexicon:
    from pathlib import Path

    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_lexicon(fh.read(), name or path.stem)
