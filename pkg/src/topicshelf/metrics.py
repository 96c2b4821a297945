"""Information-theoretic distances between discrete probability distributions.

All logarithms are base 2, so divergences are in bits and the
Jensen-Shannon distance is exactly bounded by [0, 1].  The ``0 * log 0``
limit is handled by masking zero-probability entries out, never by IEEE
special-value arithmetic, so results are reproducible across platforms.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, InvalidDistribution

# Inputs whose mass is off by more than this are rejected rather than
# silently renormalized; smaller drift (accumulated float rounding) is fixed.
SUM_TOLERANCE = 1e-6


def as_distribution(p) -> np.ndarray:
    """Validate and renormalize a vector into a float64 distribution.

    Raises InvalidDistribution for negative entries or a total mass further
    than SUM_TOLERANCE from 1.
    """
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidDistribution(f"expected 1-d vector, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidDistribution("empty vector")
    if np.any(arr < 0.0):
        raise InvalidDistribution("negative probability mass")
    total = float(arr.sum())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise InvalidDistribution(f"mass sums to {total!r}, not 1")
    return arr / total


def _check_pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    a = as_distribution(p)
    b = as_distribution(q)
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimensions differ: {a.size} vs {b.size}")
    return a, b


def _kl_bits(p: np.ndarray, q: np.ndarray) -> float:
    """KL on pre-validated arrays; +inf when supp(p) escapes supp(q)."""
    mask = p > 0.0
    pm = p[mask]
    qm = q[mask]
    if np.any(qm == 0.0):
        return float("inf")
    return float(np.sum(pm * np.log2(pm / qm)))


def kl_divergence(p, q) -> float:
    """Kullback-Leibler divergence KL(p || q) in bits.

    Terms with p_i = 0 contribute nothing; any p_i > 0 over q_i = 0 makes
    the divergence +inf.
    """
    a, b = _check_pair(p, q)
    return _kl_bits(a, b)


def js_divergence(p, q) -> float:
    """Jensen-Shannon divergence in bits; bounded by [0, 1] under log2.

    Computed as the average of the KL divergences of both inputs from
    their midpoint, which makes the value symmetric bit-for-bit.
    """
    a, b = _check_pair(p, q)
    m = (a + b) / 2.0
    div = (_kl_bits(a, m) + _kl_bits(b, m)) / 2.0
    # Rounding can push the sum a few ulp outside the theoretical range.
    return min(max(div, 0.0), 1.0)


def js_distance(p, q) -> float:
    """Jensen-Shannon distance: sqrt of the divergence.  A true metric."""
    return float(np.sqrt(js_divergence(p, q)))


def similarity(p, q) -> float:
    """Similarity in [0, 1]: one minus the Jensen-Shannon distance."""
    return 1.0 - js_distance(p, q)
