"""Latent Dirichlet allocation trained by collapsed Gibbs sampling.

The sampler is deliberately written as a sequential scalar loop: collapsed
Gibbs is order-dependent, and the determinism contract (same corpus and
config give bit-identical model files) rules out parallel or vectorized
resampling of tokens within a sweep.  Randomness comes from a PCG64
generator consumed in a fixed order: one block of initial topic labels,
then one block of uniforms per sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, Vocabulary
from .errors import (
    DegenerateVocabulary,
    EmptyCorpus,
    IndexOutOfRange,
    VocabularyMismatch,
)
from .storage import read_container, take, write_container

MODEL_MAGIC = b"TSMD"
DEFAULT_BETA = 0.01


@dataclass(frozen=True)
class TrainConfig:
    """Sampler hyperparameters.  alpha=None selects the 50/K default."""

    k: int
    iterations: int
    alpha: float | None = None
    beta: float = DEFAULT_BETA
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.alpha is None:
            object.__setattr__(self, "alpha", 50.0 / self.k)
        if self.alpha <= 0.0 or self.beta <= 0.0:
            raise ValueError("priors must be strictly positive")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


@dataclass(eq=False)
class TopicModel:
    config: TrainConfig
    vocabulary: Vocabulary
    doc_ids: list[str]
    phi: np.ndarray  # K x V word distributions, rows sum to 1
    theta: np.ndarray  # D x K topic distributions, rows sum to 1
    assignments: list[np.ndarray]  # final-sweep topic label per token

    @property
    def k(self) -> int:
        return self.config.k


@dataclass(eq=False)
class ModelSuite:
    """Models over several K values sharing one vocabulary."""

    vocab_sha256: str
    models: dict[int, TopicModel]

    def __post_init__(self):
        for model in self.models.values():
            if model.vocabulary.sha256() != self.vocab_sha256:
                raise VocabularyMismatch("suite models must share one vocabulary")


def derive_seed(seed: int, k: int) -> int:
    """Independent per-K seed so suite members do not share random streams."""
    return int(np.random.SeedSequence((seed, k)).generate_state(1, np.uint64)[0])


def train(corpus: Corpus, config: TrainConfig, sweep_callback=None) -> TopicModel:
    """Collapsed Gibbs sampling; point estimates from the final sweep.

    The conditional for token i in document d with word w is proportional
    to (n_dk + alpha) * (n_kw + beta) / (n_k + V*beta), all counts taken
    with token i removed.  sweep_callback(sweep, doc_topic, word_topic,
    topic_totals) is invoked after every sweep with the live count tables;
    callers must treat them as read-only.
    """
    v = len(corpus.vocabulary)
    if corpus.n_tokens == 0:
        raise EmptyCorpus("cannot train on a corpus with no tokens")
    if v < 2:
        raise DegenerateVocabulary(f"need at least 2 word types, have {v}")

    doc_of: list[int] = []
    word_of: list[int] = []
    for d, tokens in enumerate(corpus.doc_tokens):
        doc_of.extend([d] * len(tokens))
        word_of.extend(tokens.tolist())
    n_tokens = len(doc_of)
    n_docs = len(corpus.doc_ids)

    k = config.k
    alpha = config.alpha
    beta = config.beta
    v_beta = v * beta
    rng = np.random.Generator(np.random.PCG64(config.seed))

    z = rng.integers(0, k, size=n_tokens).tolist()
    n_dk = [[0] * k for _ in range(n_docs)]
    n_wk = [[0] * k for _ in range(v)]  # word-major for cache-friendly lookup
    n_k = [0] * k
    for i in range(n_tokens):
        n_dk[doc_of[i]][z[i]] += 1
        n_wk[word_of[i]][z[i]] += 1
        n_k[z[i]] += 1

    cumulative = [0.0] * k
    topics = range(k)
    for sweep in range(config.iterations):
        u = rng.random(n_tokens).tolist()
        for i in range(n_tokens):
            row = n_dk[doc_of[i]]
            col = n_wk[word_of[i]]
            old = z[i]
            row[old] -= 1
            col[old] -= 1
            n_k[old] -= 1
            total = 0.0
            for j in topics:
                total += (row[j] + alpha) * (col[j] + beta) / (n_k[j] + v_beta)
                cumulative[j] = total
            # u < 1 and cumulative[k-1] == total, so the walk cannot run off
            # the end even when rounding makes u*total == total.
            target = u[i] * total
            new = 0
            while cumulative[new] < target:
                new += 1
            z[i] = new
            row[new] += 1
            col[new] += 1
            n_k[new] += 1
        if sweep_callback is not None:
            sweep_callback(sweep, n_dk, n_wk, n_k)

    n_kw = np.array(n_wk, dtype=np.float64).T if v else np.zeros((k, 0))
    phi = (n_kw + beta) / (np.array(n_k, dtype=np.float64)[:, None] + v_beta)
    doc_lengths = np.array(
        [len(t) for t in corpus.doc_tokens], dtype=np.float64
    )
    theta = (np.array(n_dk, dtype=np.float64) + alpha) / (
        doc_lengths[:, None] + k * alpha
    )

    assignments = []
    pos = 0
    for tokens in corpus.doc_tokens:
        end = pos + len(tokens)
        assignments.append(np.array(z[pos:end], dtype=np.uint32))
        pos = end

    return TopicModel(
        config=config,
        vocabulary=corpus.vocabulary,
        doc_ids=list(corpus.doc_ids),
        phi=phi,
        theta=theta,
        assignments=assignments,
    )


def train_suite(
    corpus: Corpus,
    ks: list[int],
    iterations: int,
    seed: int = 0,
    alpha: float | None = None,
    beta: float = DEFAULT_BETA,
) -> ModelSuite:
    if len(set(ks)) != len(ks):
        raise ValueError("K values must be distinct")
    models = {}
    for k in ks:
        config = TrainConfig(
            k=k,
            iterations=iterations,
            alpha=alpha,
            beta=beta,
            seed=derive_seed(seed, k),
        )
        models[k] = train(corpus, config)
    return ModelSuite(corpus.vocabulary.sha256(), models)


def top_words(model: TopicModel, topic: int, n: int) -> list[tuple[str, float]]:
    """Highest-probability words of one topic, ties broken by word id."""
    if not 0 <= topic < model.k:
        raise IndexOutOfRange(f"topic {topic} outside [0, {model.k})")
    row = model.phi[topic]
    order = np.lexsort((np.arange(len(row)), -row))
    words = model.vocabulary.id_to_word
    return [(words[i], float(row[i])) for i in order[: min(n, len(row))]]


# --- persistence -------------------------------------------------------------

def save_model(model: TopicModel, path) -> None:
    cfg = model.config
    header = {
        "config": {
            "k": cfg.k,
            "iterations": cfg.iterations,
            "alpha": cfg.alpha,
            "beta": cfg.beta,
            "seed": cfg.seed,
        },
        "rng": "pcg64",
        "vocab_sha256": model.vocabulary.sha256(),
        "vocab_size": len(model.vocabulary),
        "doc_ids": model.doc_ids,
        "doc_lengths": [int(len(a)) for a in model.assignments],
    }
    flat = (
        np.concatenate(model.assignments)
        if model.assignments
        else np.array([], dtype=np.uint32)
    )
    write_container(
        path,
        MODEL_MAGIC,
        header,
        [
            model.phi.astype("<f8"),
            model.theta.astype("<f8"),
            flat.astype("<u4"),
        ],
    )


def load_model(path, vocabulary: Vocabulary) -> TopicModel:
    """Load a model file, refusing a vocabulary with a different hash."""
    header, payload = read_container(path, MODEL_MAGIC)
    if header["vocab_sha256"] != vocabulary.sha256():
        raise VocabularyMismatch(
            f"{path}: model was trained against a different vocabulary"
        )
    config = TrainConfig(**header["config"])
    v = header["vocab_size"]
    doc_ids = list(header["doc_ids"])
    d = len(doc_ids)
    offset = 0
    phi_flat, offset = take(payload, offset, np.float64, config.k * v)
    theta_flat, offset = take(payload, offset, np.float64, d * config.k)
    assignments = []
    for length in header["doc_lengths"]:
        arr, offset = take(payload, offset, np.uint32, length)
        assignments.append(arr.astype(np.uint32))
    return TopicModel(
        config=config,
        vocabulary=vocabulary,
        doc_ids=doc_ids,
        phi=phi_flat.reshape(config.k, v).copy(),
        theta=theta_flat.reshape(d, config.k).copy(),
        assignments=assignments,
    )
