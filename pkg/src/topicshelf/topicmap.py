"""Map of all topics pooled across models: distances, embedding, clusters.

Topics from every model in a suite are pooled into one point set (a model
with K topics contributes K points), pairwise-compared by Jensen-Shannon
distance over their word distributions, flattened to 2-D with isomap, and
grouped by seeded k-means.  Everything downstream of the distance matrix
is deterministic given the seed, so a cached layout can be reproduced.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import DegenerateSpectrum, TooFewPoints, UnknownTerm, VocabularyMismatch
from .lda import ModelSuite, top_words
from .metrics import js_distance

DEFAULT_NEIGHBORS = 12
DEFAULT_CLUSTERS = 10
DEFAULT_MARKER_BASE = 100.0
KMEANS_RESTARTS = 100
LAYOUT_WORDS = 15


@dataclass(frozen=True, order=True)
class TopicRef:
    """One topic of one model, the map's point identity."""

    k: int
    topic: int

    def label(self) -> str:
        return f"{self.k}:{self.topic}"


@dataclass(eq=False)
class TopicMapLayout:
    points: list[dict]  # per pooled topic: k, topic, x, y, size, cluster, words
    params: dict


def pooled_refs(suite: ModelSuite) -> list[TopicRef]:
    """Pooled point order: ascending K, then topic index."""
    refs = []
    for k in sorted(suite.models):
        refs.extend(TopicRef(k, t) for t in range(suite.models[k].k))
    return refs


def _pooled_phi(suite: ModelSuite) -> np.ndarray:
    for model in suite.models.values():
        if model.vocabulary.sha256() != suite.vocab_sha256:
            raise VocabularyMismatch("pooled models must share one vocabulary")
    return np.vstack([suite.models[k].phi for k in sorted(suite.models)])


def topic_distance_matrix(suite: ModelSuite) -> np.ndarray:
    """Symmetric zero-diagonal matrix of js_distance over pooled topics."""
    phi = _pooled_phi(suite)
    n = phi.shape[0]
    dist = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            d = js_distance(phi[i], phi[j])
            dist[i, j] = d
            dist[j, i] = d
    return dist


def _require_distance_matrix(dist: np.ndarray) -> np.ndarray:
    dist = np.asarray(dist, dtype=np.float64)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise ValueError(f"distance matrix must be square, got {dist.shape}")
    if not np.array_equal(dist, dist.T):
        raise ValueError("distance matrix must be symmetric")
    if np.any(np.diag(dist) != 0.0):
        raise ValueError("distance matrix must have a zero diagonal")
    return dist


def _neighbor_graph(dist: np.ndarray, n_neighbors: int) -> csr_matrix:
    """Union-symmetrized kNN graph, bridged until fully connected.

    Disconnected components are joined by repeatedly adding the globally
    shortest edge between any two points in different components, so no
    topic can fall off the map.
    """
    n = dist.shape[0]
    n_neighbors = min(n_neighbors, n - 1)
    rows, cols = [], []
    for i in range(n):
        order = np.argsort(dist[i], kind="stable")
        picked = [j for j in order if j != i][:n_neighbors]
        rows.extend([i] * len(picked))
        cols.extend(picked)
    mask = np.zeros((n, n), dtype=bool)
    mask[rows, cols] = True
    mask |= mask.T

    while True:
        graph = csr_matrix(np.where(mask, dist, 0.0))
        n_comp, labels = connected_components(graph, directed=False)
        if n_comp == 1:
            break
        split = labels[:, None] != labels[None, :]
        candidates = np.where(split, dist, np.inf)
        i, j = np.unravel_index(np.argmin(candidates), candidates.shape)
        mask[i, j] = mask[j, i] = True
    return csr_matrix(np.where(mask, dist, 0.0))


def _classical_mds(geodesic: np.ndarray) -> np.ndarray:
    n = geodesic.shape[0]
    j = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * j @ (geodesic**2) @ j
    b = (b + b.T) / 2.0  # kill asymmetric rounding before eigh
    eigvals, eigvecs = np.linalg.eigh(b)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]

    positive = eigvals > 1e-12 * max(abs(eigvals[0]), 1.0)
    coords = np.zeros((n, 2), dtype=np.float64)
    usable = min(2, int(positive[:2].sum()))
    for axis in range(usable):
        coords[:, axis] = eigvecs[:, axis] * np.sqrt(eigvals[axis])
    if usable < 2:
        warnings.warn(
            "geodesic matrix yields fewer than 2 positive eigenvalues; "
            "emitting a 1-D layout with a zero y column",
            DegenerateSpectrum,
        )
    for axis in range(2):
        extreme = np.argmax(np.abs(coords[:, axis]))
        if coords[extreme, axis] < 0:
            coords[:, axis] = -coords[:, axis]
    return coords


def isomap_embed(dist: np.ndarray, n_neighbors: int = DEFAULT_NEIGHBORS) -> np.ndarray:
    """2-D isomap: kNN graph geodesics fed through classical MDS.

    Axis orientation is fixed by making the largest-magnitude coordinate
    of each axis positive, so independent runs produce identical layouts.
    """
    dist = _require_distance_matrix(dist)
    if n_neighbors < 1:
        raise ValueError("n_neighbors must be >= 1")
    if dist.shape[0] < 2:
        raise ValueError("need at least 2 points to embed")
    graph = _neighbor_graph(dist, n_neighbors)
    geodesic = shortest_path(graph, method="D", directed=False)
    if np.isinf(geodesic).any():
        raise AssertionError("bridged graph is still disconnected")
    return _classical_mds(geodesic)


# --- clustering ---------------------------------------------------------------

def _kmeans_once(points: np.ndarray, k: int, rng) -> tuple[np.ndarray, float]:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]), dtype=np.float64)
    centers[0] = points[rng.integers(n)]
    closest = ((points - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = float(closest.sum())
        if total == 0.0:
            # all remaining mass on already-chosen points: pick deterministically
            centers[c] = points[int(np.argmax(closest))]
        else:
            target = rng.random() * total
            idx = int(np.searchsorted(np.cumsum(closest), target, side="right"))
            centers[c] = points[min(idx, n - 1)]
        closest = np.minimum(closest, ((points - centers[c]) ** 2).sum(axis=1))

    labels = np.zeros(n, dtype=np.int64)
    for _ in range(300):
        sq = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = np.argmin(sq, axis=1)
        dist_to_own = sq[np.arange(n), new_labels]
        for c in range(k):
            chosen = new_labels == c
            if chosen.any():
                centers[c] = points[chosen].mean(axis=0)
            else:
                # re-seed an emptied cluster with the worst-fit point
                worst = int(np.argmax(dist_to_own))
                centers[c] = points[worst]
                new_labels[worst] = c
                dist_to_own[worst] = 0.0
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    inertia = float(((points - centers[labels]) ** 2).sum())
    return labels, inertia


def cluster_topics(coords: np.ndarray, k: int = DEFAULT_CLUSTERS, seed: int = 0) -> np.ndarray:
    """Seeded k-means++ with restarts; the lowest-inertia run wins."""
    points = np.asarray(coords, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    if k > points.shape[0]:
        raise TooFewPoints(f"{k} clusters for {points.shape[0]} points")
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    best_labels, best_inertia = None, np.inf
    for _ in range(KMEANS_RESTARTS):
        labels, inertia = _kmeans_once(points, k, rng)
        if inertia < best_inertia:
            best_labels, best_inertia = labels, inertia
    return best_labels


# --- per-point attributes -------------------------------------------------------

def term_saturation(suite: ModelSuite, term: str) -> dict[TopicRef, float]:
    """Per-topic weight for a term, scaled so the best topic is exactly 1."""
    any_model = next(iter(suite.models.values()))
    if term not in any_model.vocabulary:
        raise UnknownTerm(term)
    word = any_model.vocabulary.word_to_id[term]
    raw = {
        TopicRef(k, t): float(suite.models[k].phi[t, word])
        for k in sorted(suite.models)
        for t in range(suite.models[k].k)
    }
    peak = max(raw.values())
    return {ref: value / peak for ref, value in raw.items()}


def marker_sizes(suite: ModelSuite, base: float = DEFAULT_MARKER_BASE) -> dict[int, float]:
    """Marker area inversely proportional to each model's topic count."""
    return {k: base / k for k in sorted(suite.models)}


# --- layout assembly and cache ---------------------------------------------------

def build_layout(
    suite: ModelSuite,
    n_neighbors: int = DEFAULT_NEIGHBORS,
    clusters: int = DEFAULT_CLUSTERS,
    seed: int = 0,
    marker_base: float = DEFAULT_MARKER_BASE,
    cluster_space: str = "embedding",
) -> TopicMapLayout:
    """Full map pipeline; cluster_space picks 2-D coords or raw phi rows."""
    if cluster_space not in ("embedding", "distribution"):
        raise ValueError(f"unknown cluster_space {cluster_space!r}")
    refs = pooled_refs(suite)
    dist = topic_distance_matrix(suite)
    coords = isomap_embed(dist, n_neighbors)
    space = coords if cluster_space == "embedding" else _pooled_phi(suite)
    labels = cluster_topics(space, min(clusters, len(refs)), seed)
    sizes = marker_sizes(suite, marker_base)
    points = [
        {
            "k": ref.k,
            "topic": ref.topic,
            "x": float(coords[i, 0]),
            "y": float(coords[i, 1]),
            "size": sizes[ref.k],
            "cluster": int(labels[i]),
            "words": [
                w for w, _ in top_words(suite.models[ref.k], ref.topic, LAYOUT_WORDS)
            ],
        }
        for i, ref in enumerate(refs)
    ]
    params = {
        "n_neighbors": n_neighbors,
        "clusters": clusters,
        "seed": seed,
        "marker_base": marker_base,
        "cluster_space": cluster_space,
        "vocab_sha256": suite.vocab_sha256,
    }
    return TopicMapLayout(points=points, params=params)


def save_layout(layout: TopicMapLayout, path) -> None:
    """One JSON record per line: a header, then one record per topic."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps({"record": "params", **layout.params}, sort_keys=True))
        fh.write("\n")
        for point in layout.points:
            fh.write(json.dumps(point, sort_keys=True, ensure_ascii=False))
            fh.write("\n")


def load_layout(path) -> TopicMapLayout:
    with open(path, encoding="utf-8") as fh:
        lines = [json.loads(line) for line in fh if line.strip()]
    if not lines or lines[0].get("record") != "params":
        raise ValueError(f"{path}: not a layout file")
    params = {key: v for key, v in lines[0].items() if key != "record"}
    return TopicMapLayout(points=lines[1:], params=params)
