"""Synthetic bootstrapping scenarios.

Generates a small corpus in a "new" target tagset together with resources
that know the language much better than the small corpus does: an external
column in a second tagset (a fixed tag mapping plus symbol noise, covering
every word) and an ambiguity-class lexicon. Test sentences contain a fixed
share of word forms that never occur in the training part.

    python -m combiboot.synthetic fixtures/synthetic --seed 7
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass
from pathlib import Path

from .columns import AnnotationColumn, write_column
from .corpus import Corpus, vocabulary, write_vertical
from .lexicon import Lexicon, build_lexicon, write_lexicon

# target tag -> (tag in the auxiliary tagset, coarse lexicon category or None).
# The auxiliary tagset does not split adjectives by position.
TAGS = {
    "N(ev,zijd)": ("Noun(com,sing,mf)", "substantief"),
    "N(ev,onz)": ("Noun(com,sing,n)", "substantief"),
    "N(mv)": ("Noun(com,plu)", "substantief"),
    "WW(pv,trans)": ("V(trans,fin)", "werkwoord"),
    "WW(pv,intr)": ("V(intrans,fin)", "werkwoord"),
    "WW(inf)": ("V(inf)", "werkwoord"),
    "ADJ(prenom)": ("Adj", "adjectief"),
    "ADJ(vrij)": ("Adj", "adjectief"),
    "BW": ("Adv", "bijwoord"),
    "TW": ("Num", "telwoord"),
    "LID(bep)": ("Art(def)", None),
    "LID(onbep)": ("Art(indef)", None),
    "VZ": ("Prep", None),
    "VNW(pers)": ("Pron(per)", None),
    "VNW(betr)": ("Pron(rel)", None),
    "VG(neven)": ("Conj(coord)", None),
    "VG(onder)": ("Conj(subord)", None),
    "LET": ("Punc", None),
}
AUX_TAGS = sorted({aux for aux, _ in TAGS.values()})

CLOSED = {
    "LID(bep)": ["de", "het"],
    "LID(onbep)": ["een"],
    "VZ": ["in", "op", "met", "van", "voor", "naar", "bij", "uit", "door", "over"],
    "VNW(pers)": ["ik", "jij", "hij", "zij", "wij", "het", "ze", "u"],
    "VNW(betr)": ["die", "dat", "wat"],
    "VG(neven)": ["en", "maar", "of"],
    "VG(onder)": ["omdat", "dat", "als", "of", "toen"],
    "LET": [".", ",", "!", "?"],
}
# Suffix inventories per word class. Tags that differ only in a lexical
# property (gender, transitivity) share an inventory, so form gives no cue.
SUFFIXES = {
    "N(ev,zijd)": ["", "ing", "heid", "er", "el", "t"],
    "N(ev,onz)": ["", "ing", "heid", "er", "el", "t"],
    "N(mv)": ["en", "s", "ers", "ingen"],
    "WW(pv,trans)": ["t", "de", "te", "", "en"],
    "WW(pv,intr)": ["t", "de", "te", "", "en"],
    "WW(inf)": ["en", "n"],
    "ADJ": ["ig", "e", "lijk", "isch", "", "er"],
    "BW": ["s", "lijks", "", "jes"],
    "TW": ["tig", "honderd", "duizend"],
}
# adjective tags share one word pool; position decides the tag
POOL_OF = {"ADJ(prenom)": "ADJ", "ADJ(vrij)": "ADJ"}

# grammar over phrase-level states; each state emits one of several tags
SPLIT = {
    "N": {"N(ev,zijd)": 1, "N(ev,onz)": 1, "N(mv)": 1},
    "V": {"WW(pv,trans)": 1, "WW(pv,intr)": 1},
    "LID": {"LID(bep)": 3, "LID(onbep)": 1},
    "PRON": {"VNW(pers)": 1},
    "REL": {"VNW(betr)": 1},
    "CONJ": {"VG(neven)": 1, "VG(onder)": 1},
}
GRAMMAR = {
    "START": {"LID": 4, "PRON": 4, "N": 1, "BW": 1, "VZ": 1},
    "LID": {"N": 5, "ADJ(prenom)": 3},
    "ADJ(prenom)": {"N": 5, "ADJ(prenom)": 1},
    "N": {"V": 4, "VZ": 2, "LET": 2, "CONJ": 1, "REL": 1},
    "PRON": {"V": 6, "N": 1},
    "REL": {"PRON": 2, "LID": 2, "V": 1},
    "V": {"LID": 3, "BW": 2, "VZ": 2, "WW(inf)": 1, "TW": 1, "ADJ(vrij)": 2, "LET": 1, "PRON": 1},
    "WW(inf)": {"LET": 3, "VZ": 1, "CONJ": 1},
    "ADJ(vrij)": {"LET": 3, "VZ": 1, "CONJ": 1},
    "BW": {"V": 2, "ADJ(vrij)": 2, "WW(inf)": 2, "LET": 1},
    "TW": {"N": 4},
    "VZ": {"LID": 5, "PRON": 1, "N": 1, "TW": 1},
    "CONJ": {"PRON": 3, "LID": 3},
    "LET": {},
}

_CONS = "bdfghklmnprstvwz"
_VOW = "aeiou"


def _stem(rng: random.Random) -> str:
    return "".join(rng.choice(_CONS) + rng.choice(_VOW) for _ in range(rng.randint(1, 3))) + rng.choice(_CONS)


@dataclass
class Scenario:
    train: Corpus
    test: Corpus
    aux_train: AnnotationColumn
    aux_test: AnnotationColumn
    lexicon: Lexicon

    @property
    def unknown_rate(self) -> float:
        vocab = vocabulary(self.train)
        forms = self.test.forms()
        return sum(f not in vocab for f in forms) / len(forms)


class _Language:
    def __init__(self, rng: random.Random, open_words_per_tag: int):
        self.rng = rng
        self.pools: dict[str, list[str]] = {t: list(ws) for t, ws in CLOSED.items()}
        used = set(w for ws in CLOSED.values() for w in ws)
        stems: list[str] = []
        for pool_name, suffixes in SUFFIXES.items():
            pool: list[str] = []
            while len(pool) < open_words_per_tag:
                # some stems recur across classes, which creates ambiguous forms
                if stems and rng.random() < 0.1:
                    stem = rng.choice(stems)
                else:
                    stem = _stem(rng)
                    stems.append(stem)
                w = stem + rng.choice(suffixes)
                if w not in pool:
                    pool.append(w)
            self.pools[pool_name] = pool
            used.update(pool)
        self.used = used

    def tag_sequence(self, max_len=18) -> list[str]:
        rng = self.rng
        seq: list[str] = []
        state = "START"
        while GRAMMAR[state] and len(seq) < max_len:
            states, weights = zip(*GRAMMAR[state].items())
            state = rng.choices(states, weights)[0]
            if state in SPLIT:
                tags, tw = zip(*SPLIT[state].items())
                seq.append(rng.choices(tags, tw)[0])
            else:
                seq.append(state)
        if seq[-1] != "LET":
            seq.append("LET")
        return seq

    def word(self, tag: str) -> str:
        pool = self.pools[POOL_OF.get(tag, tag)]
        # Zipf-like preference for the head of the pool
        weights = [1.0 / (i + 1) for i in range(len(pool))]
        return self.rng.choices(pool, weights)[0]

    def novel_word(self, tag: str) -> str:
        suffixes = SUFFIXES[POOL_OF.get(tag, tag)]
        while True:
            w = _stem(self.rng) + self.rng.choice(suffixes)
            if w not in self.used:
                self.used.add(w)
                return w


def _aux_column(rng, corpus: Corpus, noise: float, name="AUX") -> AnnotationColumn:
    values = []
    for tag in corpus.tags():
        aux = TAGS[tag][0]
        if rng.random() < noise:
            aux = rng.choice([a for a in AUX_TAGS if a != aux])
        values.append(aux)
    return AnnotationColumn(name, tuple(values))


def make_scenario(
    seed: int = 0,
    train_tokens: int = 2000,
    test_tokens: int = 1000,
    oov_rate: float = 0.3,
    noise: float = 0.05,
    open_words_per_tag: int = 120,
    lexicon_coverage: float = 0.85,
) -> Scenario:
    rng = random.Random(seed)
    lang = _Language(rng, open_words_per_tag)

    train_sents, n = [], 0
    while n < train_tokens:
        sent = [(lang.word(t), t) for t in lang.tag_sequence()]
        train_sents.append(sent)
        n += len(sent)
    train = Corpus("target", train_sents)
    vocab = vocabulary(train)

    # test: known positions reuse training words; a chosen share of open-class
    # positions get forms never seen in training
    tag_seqs, n = [], 0
    while n < test_tokens:
        seq = lang.tag_sequence()
        tag_seqs.append(seq)
        n += len(seq)
    open_positions = [(i, j) for i, seq in enumerate(tag_seqs) for j, t in enumerate(seq) if POOL_OF.get(t, t) in SUFFIXES]
    n_novel = min(round(oov_rate * n), len(open_positions))
    novel = set(rng.sample(open_positions, n_novel))
    seen_by_tag: dict[str, list[str]] = {}
    for form, tag in train.tokens():
        bucket = seen_by_tag.setdefault(tag, [])
        if form not in bucket:
            bucket.append(form)
    test_sents = []
    for i, seq in enumerate(tag_seqs):
        sent = []
        for j, tag in enumerate(seq):
            if (i, j) in novel:
                w = lang.novel_word(tag)
            else:
                w = lang.word(tag)
                if w not in vocab:
                    w = rng.choice(seen_by_tag[tag])
            sent.append((w, tag))
        test_sents.append(sent)
    test = Corpus("target", test_sents)

    pairs = []
    for corpus in (train, test):
        for form, tag in corpus.tokens():
            cat = TAGS[tag][1]
            if cat is not None:
                pairs.append((form, cat))
    forms = sorted({f for f, _ in pairs})
    keep = set(rng.sample(forms, round(lexicon_coverage * len(forms))))
    lexicon = build_lexicon([p for p in pairs if p[0] in keep], name="CEL")

    return Scenario(
        train=train,
        test=test,
        aux_train=_aux_column(rng, train, noise),
        aux_test=_aux_column(rng, test, noise),
        lexicon=lexicon,
    )


EXPERIMENT_CFG = """\
# synthetic bootstrapping fixture
train = train.tsv
test = test.tsv
folds = 9
k = 1
weighting = none
seed = 7
source = WORD:word
source = HMM:internal_tagger:hmm
source = UNI:internal_tagger:unigram
source = CEL:lexicon:lexicon.tsv
source = AUX:external_column:aux_train.col,aux_test.col
"""


def write_fixture(out_dir, seed: int = 7) -> Scenario:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sc = make_scenario(seed)
    files = {
        "train.tsv": write_vertical(sc.train),
        "test.tsv": write_vertical(sc.test),
        "aux_train.col": write_column(sc.train, sc.aux_train),
        "aux_test.col": write_column(sc.test, sc.aux_test),
        "lexicon.tsv": write_lexicon(sc.lexicon),
        "exp.cfg": EXPERIMENT_CFG,
    }
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8")
    return sc


def main(argv=None):
    ap = argparse.ArgumentParser(description="Write a synthetic bootstrapping fixture.")
    ap.add_argument("out_dir")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    sc = write_fixture(args.out_dir, args.seed)
    print(f"train {sc.train.token_count} tokens, test {sc.test.token_count} tokens, "
          f"{100 * sc.unknown_rate:.1f}% unknown")


if __name__ == "__main__":
    main()
