"""Trigram HMM tagger in the TnT style.

Transition probabilities interpolate unigram, bigram and trigram relative
frequencies with weights set by deleted interpolation. Unknown words get a
tag distribution from successive suffix abstraction over rare training
words, turned into an emission score by dividing out the tag prior.
Decoding is Viterbi over (previous tag, tag) states with optional top-b
beam pruning.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from ..columns import AnnotationColumn
from ..corpus import Corpus
from ..errors import TrainError

# a tab can never occur inside a data tag, so these cannot collide
BOS = "\tBOS"
EOS = "\tEOS"


@dataclass(frozen=True)
class HmmConfig:
    max_suffix_len: int = 10
    rare_threshold: int = 10
    beam: int | None = 5
    # training is deterministic; kept so every tagger config carries a seed
    seed: int = 0


@dataclass(frozen=True)
class HmmModel:
    tags: tuple
    uni: dict
    n_uni: float
    bi: dict
    bi_hist: dict
    tri: dict
    tri_hist: dict
    lambdas: tuple
    lexicon: dict
    tag_count: dict
    tag_prior: dict
    suffix_counts: dict
    suffix_base: dict
    theta: float
    config: HmmConfig = HmmConfig()
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _tcache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def transition(self, a: str, b: str, c: str) -> float:
        """Interpolated P(c | a, b); unseen histories back off to the next lower order."""
        p1 = self.uni.get(c, 0) / self.n_uni
        hb = self.bi_hist.get(b, 0)
        p2 = self.bi.get((b, c), 0) / hb if hb else p1
        hab = self.tri_hist.get((a, b), 0)
        p3 = self.tri.get((a, b, c), 0) / hab if hab else p2
        l1, l2, l3 = self.lambdas
        return l1 * p1 + l2 * p2 + l3 * p3

    def suffix_distribution(self, word: str) -> dict:
        """P(tag | longest known suffix of ``word``) by successive abstraction."""
        dist = dict(self.suffix_base)
        theta = self.theta
        for i in range(1, min(self.config.max_suffix_len, len(word)) + 1):
            counts = self.suffix_counts.get(word[-i:])
            if counts is None:
                break
            total = sum(counts.values())
            keys = set(dist) | set(counts)
            dist = {
                t: (counts.get(t, 0) / total + theta * dist.get(t, 0.0)) / (1 + theta)
                for t in keys
            }
        return dist

    def emissions(self, word: str) -> list[tuple[str, float]]:
        """Candidate tags for ``word`` with their log emission scores, in tag order."""
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        seen = self.lexicon.get(word)
        if seen is not None:
            out = [(t, math.log(seen[t] / self.tag_count[t])) for t in self.tags if seen.get(t)]
        else:
            dist = self.suffix_distribution(word)
            out = [
                (t, math.log(dist[t] / self.tag_prior[t]))
                for t in self.tags
                if dist.get(t, 0.0) > 0.0
            ]
        self._cache[word] = out
        return out

    def decode(self, words, beam="config") -> list[str]:
        if beam == "config":
            beam = self.config.beam
        return viterbi(words, self.emissions, self._log_transition_fn(), beam)

    def _log_transition_fn(self):
        cache = self._tcache

        def log_t(a, b, c):
            key = (a, b, c)
            v = cache.get(key)
            if v is None:
                p = self.transition(a, b, c)
                v = math.log(p) if p > 0 else -math.inf
                cache[key] = v
            return v

        return log_t

    def tag(self, corpus: Corpus, source_name="hmm") -> AnnotationColumn:
        return tag_hmm(self, corpus, source_name)

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_cache"] = {}
        state["_tcache"] = {}
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)


def viterbi(words, emissions, log_transition, beam=None) -> list[str]:
    """Best tag sequence under a second-order HMM.

    ``emissions(word)`` yields ``(tag, log_emission)`` candidates and
    ``log_transition(a, b, c)`` scores tag ``c`` after ``a, b``. With
    ``beam`` set, only the ``beam`` best states survive each position.
    Score ties keep the state reached first.
    """
    if not words:
        return []
    states = {(BOS, BOS): 0.0}
    backpointers = []
    for w in words:
        cands = emissions(w)
        new: dict = {}
        bp: dict = {}
        for (a, b), s in states.items():
            for c, le in cands:
                sc = s + log_transition(a, b, c) + le
                key = (b, c)
                if key not in new or sc > new[key]:
                    new[key] = sc
                    bp[key] = (a, b)
        if beam is not None and len(new) > beam:
            ranked = sorted(new.items(), key=lambda kv: -kv[1])[:beam]
            new = dict(ranked)
        states = new
        backpointers.append(bp)

    best_state, best_score = None, None
    for (a, b), s in states.items():
        sc = s + log_transition(a, b, EOS)
        if best_score is None or sc > best_score:
            best_state, best_score = (a, b), sc

    out = []
    state = best_state
    for bp in reversed(backpointers):
        out.append(state[1])
        state = bp[state]
    out.reverse()
    return out


def deleted_interpolation(uni, n_uni, bi, bi_hist, tri, tri_hist) -> tuple:
    """Interpolation weights (unigram, bigram, trigram).

    Each trigram type votes with its count for the order whose
    leave-one-out estimate is largest; tied orders share the vote equally.
    """
    votes = [0.0, 0.0, 0.0]
    for (a, b, c), f in tri.items():
        h3 = tri_hist[(a, b)]
        c3 = (f - 1) / (h3 - 1) if h3 > 1 else 0.0
        h2 = bi_hist[b]
        c2 = (bi[(b, c)] - 1) / (h2 - 1) if h2 > 1 else 0.0
        c1 = (uni[c] - 1) / (n_uni - 1) if n_uni > 1 else 0.0
        scores = (c1, c2, c3)
        top = max(scores)
        winners = [i for i, s in enumerate(scores) if s == top]
        for i in winners:
            votes[i] += f / len(winners)
    total = sum(votes)
    if total <= 0:
        return (1 / 3, 1 / 3, 1 / 3)
    return tuple(v / total for v in votes)


def train_hmm(train: Corpus, config: HmmConfig | None = None) -> HmmModel:
    config = config or HmmConfig()
    if train.token_count == 0:
        raise TrainError("cannot train an HMM on an empty corpus")

    uni, bi, tri = Counter(), Counter(), Counter()
    bi_hist, tri_hist = Counter(), Counter()
    lexicon: dict[str, Counter] = {}
    tag_count = Counter()
    word_freq = Counter()
    for sent in train.sentences:
        seq = [BOS, BOS] + [t for _, t in sent] + [EOS]
        for i in range(2, len(seq)):
            a, b, c = seq[i - 2], seq[i - 1], seq[i]
            uni[c] += 1
            bi[(b, c)] += 1
            bi_hist[b] += 1
            tri[(a, b, c)] += 1
            tri_hist[(a, b)] += 1
        for form, tag in sent:
            lexicon.setdefault(form, Counter())[tag] += 1
            tag_count[tag] += 1
            word_freq[form] += 1
    n_uni = sum(uni.values())
    lambdas = deleted_interpolation(uni, n_uni, bi, bi_hist, tri, tri_hist)

    tags = tuple(sorted(tag_count))
    n_tok = train.token_count
    tag_prior = {t: tag_count[t] / n_tok for t in tags}

    rare = [(f, t) for f, t in train.tokens() if word_freq[f] <= config.rare_threshold]
    if not rare:
        rare = train.tokens()
    suffix_counts: dict[str, Counter] = {}
    base = Counter()
    for form, tag in rare:
        base[tag] += 1
        for i in range(1, min(config.max_suffix_len, len(form)) + 1):
            suffix_counts.setdefault(form[-i:], Counter())[tag] += 1
    n_rare = len(rare)
    suffix_base = {t: base[t] / n_rare for t in tags if base[t]}

    s = len(tags)
    if s > 1:
        mean = 1.0 / s
        theta = math.sqrt(sum((tag_prior[t] - mean) ** 2 for t in tags) / (s - 1))
    else:
        theta = 0.0

    return HmmModel(
        tags=tags,
        uni=dict(uni),
        n_uni=n_uni,
        bi=dict(bi),
        bi_hist=dict(bi_hist),
        tri=dict(tri),
        tri_hist=dict(tri_hist),
        lambdas=lambdas,
        lexicon={w: dict(c) for w, c in lexicon.items()},
        tag_count=dict(tag_count),
        tag_prior=tag_prior,
        suffix_counts={s_: dict(c) for s_, c in suffix_counts.items()},
        suffix_base=suffix_base,
        theta=theta,
        config=config,
    )


def tag_hmm(model: HmmModel, corpus: Corpus, source_name="hmm") -> AnnotationColumn:
    values = []
    for sent in corpus.sentences:
        values.extend(model.decode([tok.form for tok in sent]))
    return AnnotationColumn(source_name, tuple(values))


class HmmTagger:
    name = "hmm"

    def __init__(self, config: HmmConfig | None = None):
        self.config = config or HmmConfig()

    def train(self, corpus: Corpus) -> HmmModel:
        return train_hmm(corpus, self.config)
