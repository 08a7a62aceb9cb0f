import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from combiboot.columns import AnnotationColumn, load_external_column, write_column
from combiboot.corpus import Corpus, parse_vertical
from combiboot.errors import AlignmentError, DataError, ParseError
from combiboot.lexicon import (
    UNKNOWN,
    annotate,
    build_lexicon,
    lookup,
    parse_lexicon,
    write_lexicon,
)

CORPUS = parse_vertical("omdat\tVG\nik\tVNW\n\nklas\tN\nsta\tWW\n\n")


def test_build_dedupes_and_sorts():
    lex = build_lexicon([("sta", "werkwoord"), ("sta", "substantief"), ("sta", "werkwoord")])
    assert lex.entries == {"sta": ("substantief", "werkwoord")}
    assert len(build_lexicon([])) == 0
    assert build_lexicon([("klas", "substantief")]).entries == {"klas": ("substantief",)}


def test_build_is_permutation_invariant():
    pairs = [("a", "x"), ("b", "y"), ("a", "z"), ("a", "x"), ("c", "x")]
    results = {tuple(build_lexicon(p).entries.items()) for p in itertools.permutations(pairs)}
    assert len(results) == 1


@pytest.mark.parametrize("pairs,index", [
    ([("a", "x"), ("", "y")], 1),
    ([("a", "")], 0),
    ([("a", "x"), ("b", "x"), ("c", UNKNOWN)], 2),
])
def test_build_errors(pairs, index):
    with pytest.raises(DataError) as err:
        build_lexicon(pairs)
    assert err.value.index == index


def test_lookup():
    lex = build_lexicon([("klas", "substantief"), ("sta", "werkwoord"), ("sta", "substantief")])
    assert lookup(lex, "omdat") == "UNKNOWN"
    assert lookup(lex, "klas") == "substantief"
    assert lookup(lex, "sta") == "substantief|werkwoord"


def test_annotate():
    lex = build_lexicon([("klas", "substantief")], name="CEL")
    col = annotate(lex, CORPUS)
    assert col.source_name == "CEL"
    assert col.values == ("UNKNOWN", "UNKNOWN", "substantief", "UNKNOWN")
    assert annotate(build_lexicon([("zzz", "x")]), CORPUS).values == ("UNKNOWN",) * 4


def test_lexicon_file_round_trip():
    lex = build_lexicon([("sta", "werkwoord"), ("sta", "substantief"), ("a b", "c")])
    assert parse_lexicon(write_lexicon(lex)) == lex
    assert parse_lexicon("x\ty\n\nx\tz\n").entries == {"x": ("y", "z")}
    with pytest.raises(ParseError):
        parse_lexicon("x\ty\tz\n")


def test_external_column_echo():
    text = "omdat\tConj(onder, metfin)\nik\tPron(per, 1, ev, nom)\n\nklas\tN(soort, ev, neut)\nsta\tV(intrans, ott, 1, ev)\n\n"
    col = load_external_column(CORPUS, text, "W1")
    assert col.source_name == "W1"
    assert col.values[0] == "Conj(onder, metfin)"
    assert write_column(CORPUS, col) == text


def test_external_column_missing_line():
    text = "omdat\tA\nik\tB\n\nsta\tD\n\n"
    with pytest.raises(AlignmentError) as err:
        load_external_column(CORPUS, text, "W1")
    assert err.value.position == 2


def test_external_column_truncated_and_boundary():
    with pytest.raises(AlignmentError) as err:
        load_external_column(CORPUS, "omdat\tA\nik\tB\n\nklas\tC\n\n", "W1")
    assert err.value.position == 3
    # same forms, sentence boundary in the wrong place
    with pytest.raises(AlignmentError) as err:
        load_external_column(CORPUS, "omdat\tA\n\nik\tB\nklas\tC\nsta\tD\n\n", "W1")
    assert err.value.position == 0


def test_column_length_checked():
    with pytest.raises(AlignmentError):
        write_column(CORPUS, AnnotationColumn("x", ("a",)))


@given(st.lists(st.text("abcXYZ() ,", min_size=1, max_size=5), min_size=4, max_size=4))
def test_column_round_trip(values):
    col = AnnotationColumn("src", tuple(values))
    assert load_external_column(CORPUS, write_column(CORPUS, col), "src") == col


def test_empty_column_over_empty_corpus():
    assert load_external_column(Corpus("t", []), "", "x").values == ()
