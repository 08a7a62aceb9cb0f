import random

import pytest

from combiboot.columns import AnnotationColumn
from combiboot.corpus import Corpus
from combiboot.errors import AlignmentError, DomainError
from combiboot.evaluation import EvalReport, accuracy, error_reduction, fmt, render_table, report_tsv

GOLD = Corpus("t", [[(f"w{i}", "X") for i in range(10)]])
VOCAB = {f"w{i}" for i in range(9)}  # w9 is unknown


def col(values):
    return AnnotationColumn("p", tuple(values))


def test_all_correct():
    r = accuracy(col(["X"] * 10), GOLD, VOCAB)
    assert (r.total_acc, r.known_acc, r.unknown_acc) == (100.0, 100.0, 100.0)


def test_ten_token_example():
    r = accuracy(col(["X"] * 9 + ["Y"]), GOLD, VOCAB)
    assert fmt(r.unknown_pct) == "10.00"
    assert fmt(r.unknown_acc) == "0.00"
    assert fmt(r.known_acc) == "100.00"
    assert fmt(r.total_acc) == "90.00"


def test_no_unknown_tokens_renders_dashes():
    r = accuracy(col(["X"] * 10), GOLD, VOCAB | {"w9"})
    assert r.unknown_acc is None
    assert fmt(r.unknown_acc) == "--"
    assert "--" in render_table([r], "baseline")


def test_membership_is_exact():
    gold = Corpus("t", [[("De", "X"), ("de", "X")]])
    r = accuracy(col(["X", "X"]), gold, {"de"})
    assert (r.known_count, r.unknown_count) == (1, 1)


def test_length_mismatch():
    with pytest.raises(AlignmentError):
        accuracy(col(["X"]), GOLD, VOCAB)


@pytest.mark.parametrize("base,new,expected", [
    (90, 95, -50.0),
    (95, 90, 100.0),
    (50, 50, 0.0),
    (0, 100, -100.0),
])
def test_error_reduction(base, new, expected):
    assert error_reduction(base, new) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("base,new", [(100, 99), (101, 50), (50, -1)])
def test_error_reduction_domain(base, new):
    with pytest.raises(DomainError):
        error_reduction(base, new)


def test_fmt_rounds_half_away_from_zero():
    assert fmt(0.125) == "0.13"
    assert fmt(-0.125) == "-0.13"
    assert fmt(2.675) == "2.68"
    assert fmt(-44.65, 1) == "-44.7"
    assert fmt(-0.004) == "0.00"


def report(name, u, k, t, unknown=100, total=1000):
    # build a report whose percentages are exactly u, k, t
    known = total - unknown
    return EvalReport(name, total, known, unknown, round(t * total / 100),
                      round(k * known / 100), round(u * unknown / 100))


def test_render_layouts():
    a = report("HMM", 50, 90, 86)
    b = report("HMM+W1", 80, 95, 93.5)
    base = render_table([a, b], "baseline")
    assert base.splitlines()[0].split() == ["tagger", "u", "k", "t", "%unknown"]
    assert "10.00" in base
    abl = render_table([a, b], "ablation")
    assert abl.splitlines()[0].split() == ["sources", "t"]
    assert abl.splitlines()[-1].split() == ["HMM+W1", "93.50"]
    red = render_table([a, b], "reduction").splitlines()
    assert red[-1].split() == ["delta", "error", "(%)", "-60.0", "-50.0", "-53.6"]
    with pytest.raises(ValueError):
        render_table([a], "pie")
    with pytest.raises(ValueError):
        render_table([], "baseline")


def test_reduction_row_example():
    a = EvalReport("A", 1000, 1000, 0, 947, 947, 0)
    b = EvalReport("B", 1000, 1000, 0, 970, 970, 0)
    row = render_table([a, b], "reduction").splitlines()[-1].split()
    assert row[-1] == "-43.4"
    assert row[3] == "--"


def test_weighted_identity_holds_on_random_columns():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 40)
        gold = Corpus("t", [[(rng.choice("abcdef"), rng.choice("XY")) for _ in range(n)]])
        pred = col(rng.choice("XY") for _ in range(n))
        r = accuracy(pred, gold, set(rng.sample("abcdef", 3)))
        u = r.unknown_acc or 0.0
        k = r.known_acc or 0.0
        frac = r.unknown_count / r.total_count
        assert r.total_acc == pytest.approx(frac * u + (1 - frac) * k, abs=1e-9)


def test_sentence_permutation_invariance():
    rng = random.Random(4)
    sents = [[(rng.choice("abcd"), rng.choice("XY")) for _ in range(rng.randint(1, 4))] for _ in range(10)]
    preds = [[rng.choice("XY") for _ in s] for s in sents]
    order = list(range(10))
    rng.shuffle(order)

    def score(idx):
        gold = Corpus("t", [sents[i] for i in idx])
        return accuracy(col(v for i in idx for v in preds[i]), gold, {"a", "b"}, "p")

    assert score(range(10)) == score(order)


def test_report_tsv():
    text = report_tsv(report("HMM", 50, 90, 86))
    lines = dict(line.split("\t") for line in text.splitlines())
    assert lines["total_acc"] == "86.00"
    assert lines["unknown_pct"] == "10.00"
