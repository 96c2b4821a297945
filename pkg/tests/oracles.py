"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written the slow, obvious way -- pure
Python loops, exact Fraction arithmetic where order relations matter, and
exhaustive enumeration instead of greedy search -- so that agreement with
the library is evidence, not tautology.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations


# --- divergence oracles ----------------------------------------------------

def kl_oracle(p, q) -> float:
    """Direct term-by-term evaluation of KL(p||q) in bits."""
    total = 0.0
    for pi, qi in zip(p, q, strict=True):
        if pi == 0.0:
            continue
        if qi == 0.0:
            return float("inf")
        total += pi * math.log2(pi / qi)
    return total


def js_divergence_oracle(p, q) -> float:
    m = [(pi + qi) / 2.0 for pi, qi in zip(p, q, strict=True)]
    return (kl_oracle(p, m) + kl_oracle(q, m)) / 2.0


def js_distance_oracle(p, q) -> float:
    return math.sqrt(js_divergence_oracle(p, q))


def similarity_oracle(p, q) -> float:
    return 1.0 - js_distance_oracle(p, q)


# --- segmentation oracle ---------------------------------------------------

def _full_segmentations(text, words, start):
    """Yield every segmentation of text[start:] into lexicon words or
    single characters."""
    if start == len(text):
        yield ()
        return
    candidates = [text[start]]
    for w in words:
        if text.startswith(w, start) and len(w) > 1:
            candidates.append(w)
    for cand in candidates:
        for rest in _full_segmentations(text, words, start + len(cand)):
            yield (cand,) + rest


def _window_score(chunk, char_freq):
    """Score a chunk by the four disambiguation rules, exactly.

    Returns a tuple ordered so that plain max() picks the winner:
    greater total length, greater mean word length, smaller length
    variance, greater single-character freedom.  Mean and variance use
    Fraction arithmetic so ties are decided exactly, not by float luck.
    """
    lens = [len(w) for w in chunk]
    n = len(chunk)
    total = sum(lens)
    mean = Fraction(total, n)
    var = sum((Fraction(ln) - mean) ** 2 for ln in lens) / n
    freedom = 0.0
    for w in chunk:
        if len(w) == 1:
            freedom += math.log(max(char_freq.get(w, 1), 1))
    return (total, mean, -var, freedom)


def mmseg_oracle(text, words, char_freq=None):
    """Exhaustive re-derivation of complex maximum matching.

    At each position every full segmentation of the remaining text is
    enumerated; its leading window of up to three words forms a candidate
    chunk.  The best chunk under the four rules (ties: lexicographically
    earliest chunk) contributes its first word.
    """
    char_freq = char_freq or {}
    out = []
    pos = 0
    while pos < len(text):
        chunks = set()
        for seg in _full_segmentations(text, words, pos):
            chunks.add(seg[:3])
        best = None
        best_score = None
        for chunk in sorted(chunks):
            score = _window_score(chunk, char_freq)
            if best_score is None or score > best_score:
                best, best_score = chunk, score
        out.append(best[0])
        pos += len(best[0])
    return out


# --- planted-topic matching oracle -----------------------------------------

def best_topic_matching(distance):
    """Minimal-cost one-to-one assignment by brute force.

    distance[i][j] is the cost of pairing trained topic i with planted
    topic j; K is small so all K! permutations are scanned.
    """
    k = len(distance)
    best_perm, best_cost = None, None
    for perm in permutations(range(k)):
        cost = sum(distance[i][perm[i]] for i in range(k))
        if best_cost is None or cost < best_cost:
            best_perm, best_cost = perm, cost
    return list(best_perm), best_cost


# --- synthetic corpus with known topic structure -----------------------------

def planted_corpus(n_topics=4, support=10, n_docs=200, doc_len=60, seed=77):
    """Documents drawn each from one planted topic with disjoint supports.

    Planted topic t owns the words [t*support, (t+1)*support) of a shared
    word list; each document samples its tokens uniformly from its topic's
    support.  The planted word distribution per topic is therefore uniform
    over its own words and zero elsewhere.  Returns (token sequences,
    per-topic {word: probability} maps, planted topic index per doc).
    """
    import numpy as np

    from topicshelf.segment import TokenSequence

    rng = np.random.default_rng(seed)
    v = n_topics * support
    words = [f"w{i:03d}" for i in range(v)]
    docs, labels = [], []
    for d in range(n_docs):
        t = d % n_topics
        draws = rng.integers(t * support, (t + 1) * support, size=doc_len)
        docs.append(TokenSequence(f"doc{d:03d}", [words[i] for i in draws]))
        labels.append(t)
    planted = [
        {words[w]: 1.0 / support for w in range(t * support, (t + 1) * support)}
        for t in range(n_topics)
    ]
    return docs, planted, labels


# --- classical MDS oracle -----------------------------------------------------

def classical_mds_oracle(dist):
    """Gower-centered classical scaling, top-2 axes, sign-normalized.

    Formulated with per-row/column mean centering (not the projection
    matrix) and scipy's LAPACK eigensolver so it shares no code path with
    the embedding under test.
    """
    import numpy as np
    from scipy.linalg import eigh

    d2 = np.asarray(dist, dtype=np.float64) ** 2
    row = d2.mean(axis=1, keepdims=True)
    col = d2.mean(axis=0, keepdims=True)
    b = -0.5 * (d2 - row - col + d2.mean())
    b = (b + b.T) / 2.0
    n = b.shape[0]
    vals, vecs = eigh(b, subset_by_index=[n - 2, n - 1])
    vals, vecs = vals[::-1], vecs[:, ::-1]
    coords = np.zeros((n, 2))
    for axis in range(2):
        if vals[axis] > 0:
            coords[:, axis] = vecs[:, axis] * np.sqrt(vals[axis])
        i = int(np.argmax(np.abs(coords[:, axis])))
        if coords[i, axis] < 0:
            coords[:, axis] = -coords[:, axis]
    return coords
