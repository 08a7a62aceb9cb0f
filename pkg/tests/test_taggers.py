import math
import pickle
import random
from dataclasses import replace

import pytest

from combiboot.corpus import Corpus
from combiboot.errors import TrainError
from combiboot.taggers import (
    HmmConfig,
    MbtConfig,
    make_tagger,
    tag_hmm,
    tag_mbt,
    tag_unigram,
    train_hmm,
    train_mbt,
    train_unigram,
)
from combiboot.taggers.hmm import BOS, EOS, viterbi
from combiboot.taggers.mbt import known_features
from oracles import brute_force_decode, path_score, random_hmm

EMPTY = Corpus("t", [])


def deterministic_corpus():
    sents = [[("the", "D"), ("dog", "N"), ("runs", "V"), (".", "P")],
             [("a", "D"), ("cat", "N"), ("sleeps", "V"), (".", "P")],
             [("the", "D"), ("cat", "N"), ("runs", "V"), (".", "P")]]
    return Corpus("t", sents)


# ---- HMM -------------------------------------------------------------------

def test_hmm_reproduces_deterministic_corpus():
    c = deterministic_corpus()
    model = train_hmm(c)
    assert tag_hmm(model, c).values == tuple(c.tags())


def test_hmm_tag_inventory_and_empty():
    model = train_hmm(Corpus("t", [[("a", "X"), ("b", "Y")]]))
    assert model.tags == ("X", "Y")
    assert tag_hmm(model, EMPTY).values == ()
    with pytest.raises(TrainError):
        train_hmm(EMPTY)


def test_deleted_interpolation_by_hand():
    # padded tag rows: BOS BOS A B EOS (twice) and BOS BOS A C EOS.
    # (BOS,BOS,A) f=3: c3=2/2, c2=2/2, c1=2/8 -> trigram and bigram tie, 1.5 each
    # (BOS,A,B)   f=2: c3=1/2, c2=1/2, c1=1/8 -> 1 each to trigram and bigram
    # (BOS,A,C)   f=1: all zero -> 1/3 each
    # (A,B,EOS)   f=2: c3=1/1, c2=1/1, c1=2/8 -> 1 each to trigram and bigram
    # (A,C,EOS)   f=1: c3=0, c2=0 (singleton histories), c1=2/8 -> 1 to unigram
    # totals: unigram 4/3, bigram 23/6, trigram 23/6, over 9 trigram tokens
    c = Corpus("t", [[("a", "A"), ("b", "B")], [("a", "A"), ("b", "B")], [("c", "A"), ("d", "C")]])
    l1, l2, l3 = train_hmm(c).lambdas
    assert l1 == pytest.approx(4 / 27, abs=1e-12)
    assert l2 == pytest.approx(23 / 54, abs=1e-12)
    assert l3 == pytest.approx(23 / 54, abs=1e-12)


def test_hmm_distributions_normalize():
    rng = random.Random(0)
    sents = [[(rng.choice(["a", "b", "c", "dd", "eat"]), rng.choice("XYZ")) for _ in range(rng.randint(1, 6))]
             for _ in range(40)]
    model = train_hmm(Corpus("t", sents))
    assert sum(model.lambdas) == pytest.approx(1, abs=1e-9)
    outcomes = model.tags + (EOS,)
    histories = [(BOS, BOS), (BOS, "X"), ("X", "Y"), ("Z", "Z"), ("Y", "nope")]
    for a, b in histories:
        total = sum(model.transition(a, b, c) for c in outcomes)
        assert total == pytest.approx(1, abs=1e-9)
    for t in model.tags:
        total = sum(counts.get(t, 0) / model.tag_count[t] for counts in model.lexicon.values())
        assert total == pytest.approx(1, abs=1e-9)
    for word in ["zeat", "qq", "ba"]:
        assert sum(model.suffix_distribution(word).values()) == pytest.approx(1, abs=1e-9)


def test_unknown_word_follows_suffix():
    # rare N words end in -ing, rare V words in -en; one-word sentences keep
    # the transitions flat between the two tags
    sents = [[(w, "N")] for w in ["loping", "baking", "siting"]] + \
            [[(w, "V")] for w in ["lopen", "baken", "siten"]]
    model = train_hmm(Corpus("t", sents))
    assert model.transition(BOS, BOS, "N") == pytest.approx(model.transition(BOS, BOS, "V"))
    # equal tag priors give theta = 0, so the longest known suffix decides alone
    assert model.theta == 0
    assert model.suffix_distribution("zwing") == {"N": 1.0, "V": 0.0}
    assert tag_hmm(model, Corpus("t", [[("zwing", "?")]])).values == ("N",)
    assert tag_hmm(model, Corpus("t", [[("zwen", "?")]])).values == ("V",)


def test_viterbi_matches_brute_force_on_random_models():
    rng = random.Random(2024)
    for _ in range(30):
        model = random_hmm(rng)
        for _ in range(5):
            words = [rng.choice(list(model.lexicon) + ["zx", "y"]) for _ in range(rng.randint(1, 5))]
            best, winners = brute_force_decode(model, words)
            assert winners and len(winners) == 1
            assert model.decode(words, beam=None) == winners[0]


def test_viterbi_on_trained_models_reaches_the_maximum():
    # count-based models can tie, so check the score and membership in the argmax set
    rng = random.Random(5)
    for _ in range(20):
        tags = "ABC"[: rng.randint(2, 3)]
        sents = [[(rng.choice(["p", "q", "r", "st"]), rng.choice(tags)) for _ in range(rng.randint(1, 4))]
                 for _ in range(8)]
        model = replace(train_hmm(Corpus("t", sents)), config=HmmConfig(beam=None))
        for _ in range(5):
            words = [rng.choice(["p", "q", "r", "st", "new"]) for _ in range(rng.randint(1, 5))]
            best, winners = brute_force_decode(model, words)
            got = model.decode(words)
            assert got in winners
            assert path_score(model, words, got) == best


def test_beam_keeps_only_top_states():
    calls = []

    def emissions(w):
        return [("A", 0.0), ("B", -0.1), ("C", -0.2)]

    def log_t(a, b, c):
        calls.append((a, b))
        return 0.0

    viterbi(["x", "y", "z"], emissions, log_t, beam=2)
    histories = {h for h in calls if h[0] != BOS}
    # after pruning to two states only those two can act as histories
    assert len({h for h in histories}) <= 2


def test_hmm_pickles():
    model = train_hmm(deterministic_corpus())
    model.decode(["the", "dog"])
    clone = pickle.loads(pickle.dumps(model))
    assert clone == model
    assert clone.decode(["a", "dog", "runs"]) == model.decode(["a", "dog", "runs"])


# ---- MBT -------------------------------------------------------------------

def test_mbt_known_instance_base_by_hand():
    c = Corpus("t", [[("the", "D"), ("run", "N")], [("we", "P"), ("run", "V")]])
    model = train_mbt(c)
    assert model.ambitags == {"the": "D", "run": "N|V", "we": "P"}
    assert list(model.known.cases) == [
        (("_", "_", "D", "the", "N|V"), "D"),
        (("_", "D", "N|V", "run", "_"), "N"),
        (("_", "_", "P", "we", "N|V"), "P"),
        (("_", "P", "N|V", "run", "_"), "V"),
    ]
    # every word occurs at most twice, so all tokens also feed the unknown base
    assert len(model.unknown.cases) == 4
    assert model.unknown.cases[0].features == ("_", "_", "t", "t", "h", "e", "N|V")


def test_mbt_reproduces_unambiguous_corpus():
    c = deterministic_corpus()
    assert tag_mbt(train_mbt(c), c).values == tuple(c.tags())


def test_mbt_small_cases():
    model = train_mbt(Corpus("t", [[("solo", "X")]]))
    assert len(model.ambitags) == 1
    assert tag_mbt(model, EMPTY).values == ()
    with pytest.raises(TrainError):
        train_mbt(EMPTY)


def test_mbt_left_context_uses_own_predictions():
    c = Corpus("t", [[("the", "D"), ("run", "N")], [("we", "P"), ("run", "V")]])
    model = train_mbt(c)
    assert tag_mbt(model, c).values == ("D", "N", "P", "V")
    f = known_features(model.ambitags, ["we", "run"], ("_", "P"), 1)
    assert f == ("_", "P", "N|V", "run", "_")


def test_mbt_unknown_words_without_rare_cases_fall_back():
    c = Corpus("t", [[("a", "X")]] * 3 + [[("a", "X"), ("b", "Y")]])
    model = train_mbt(c, MbtConfig(rare_threshold=0))
    assert model.unknown is None
    assert tag_mbt(model, Corpus("t", [[("zzz", "?")]])).values == ("X",)


# ---- unigram and registry ----------------------------------------------------

def test_unigram_rules():
    c = Corpus("t", [[("w", "X"), ("w", "X"), ("w", "Y"), ("v", "B"), ("v", "A"), ("n", "N"), ("m", "N")]])
    model = train_unigram(c)
    assert model.best["w"] == "X"
    assert model.best["v"] == "A"
    assert model.fallback == "N"
    assert tag_unigram(model, Corpus("t", [[("unseen", "?")]])).values == ("N",)
    with pytest.raises(TrainError):
        train_unigram(EMPTY)


@pytest.mark.parametrize("name", ["hmm", "mbt", "unigram"])
def test_every_tagger_column_length_and_determinism(name):
    rng = random.Random(9)
    sents = [[(rng.choice(["x", "y", "zz", "abc"]), rng.choice("PQR")) for _ in range(rng.randint(1, 5))]
             for _ in range(15)]
    train = Corpus("t", sents[:10])
    test = Corpus("t", sents[10:] + [[("novel", "P")]])
    model = make_tagger(name).train(train)
    a = model.tag(test, name)
    assert len(a) == test.token_count
    assert a == make_tagger(name).train(train).tag(test, name)


def test_unknown_tagger_name():
    with pytest.raises(ValueError):
        make_tagger("maxent")


def test_log_emissions_are_finite():
    model = train_hmm(deterministic_corpus())
    for w in ["the", "runs", "unknownish"]:
        assert all(math.isfinite(s) for _, s in model.emissions(w))
