"""Kernel functions on [-1, 1] and the recursive trigonometric basis.

All functions are pure, operate in double precision, and accept scalars
or numpy arrays (with broadcasting) where that makes sense.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatchError

# Below these thresholds the closed forms are replaced by their analytic
# limits; coincident training/query values make this a routine code path.
_SINGULAR_TOL = 1e-12


def _check_cutoff(cutoff) -> int:
    j = int(cutoff)
    if j < 1:
        raise ValueError(f"cutoff must be a positive integer, got {cutoff!r}")
    return j


def gaussian_parzen(x, y, sigma: float) -> float:
    """Isotropic Gaussian kernel (2*pi*sigma^2)^(-D/2) * exp(-|x-y|^2 / (2*sigma^2)).

    `x` and `y` are D-dimensional vectors with the same shape; `sigma` is
    the smoothing bandwidth (> 0). The result is strictly positive.
    """
    if sigma <= 0.0:
        raise ValueError("smoothing sigma must be positive")
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape:
        raise DimensionMismatchError(f"vector shapes differ: {xa.shape} vs {ya.shape}")
    dim = xa.size
    sq = float(np.sum((xa - ya) ** 2))
    return (2.0 * np.pi * sigma * sigma) ** (-dim / 2.0) * np.exp(-sq / (2.0 * sigma * sigma))


def dirichlet(x, y, cutoff):
    """Closed form of the symmetric cosine sum 1 + 2*sum_{j<=J} cos(j*pi*(x-y)).

    Evaluates sin((J+1/2)*pi*d) / sin(pi*d/2) with d = x - y, substituting
    the limit 2J+1 where the denominator vanishes (d an even integer).
    May be negative. Scalar or array inputs.
    """
    j = _check_cutoff(cutoff)
    delta = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
    half = np.sin(0.5 * np.pi * delta)
    singular = np.abs(half) < _SINGULAR_TOL
    num = np.sin((j + 0.5) * np.pi * delta)
    out = np.where(singular, float(2 * j + 1), num / np.where(singular, 1.0, half))
    if out.ndim == 0:
        return float(out)
    return out


def fejer(x, y, cutoff):
    """Non-negative averaged kernel with triangular coefficient weights.

    Evaluates (1 - cos((J+1)*pi*d)) / ((J+1) * (1 - cos(pi*d))) with
    d = x - y, computed in the cancellation-free equivalent form
    (sin((J+1)*pi*d/2) / sin(pi*d/2))^2 / (J+1), substituting the limit
    J+1 where the denominator vanishes (d = 0 or any even integer).
    Always >= 0; symmetric in x and y. Scalar or array inputs.
    """
    j = _check_cutoff(cutoff)
    delta = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
    half = np.sin(0.5 * np.pi * delta)
    singular = np.abs(half) < _SINGULAR_TOL
    ratio = np.sin((j + 1) * 0.5 * np.pi * delta) / np.where(singular, 1.0, half)
    out = np.where(singular, float(j + 1), ratio * ratio / (j + 1))
    if out.ndim == 0:
        return float(out)
    return out


class TrigBasisTable(NamedTuple):
    """cos(j*pi*x) and sin(j*pi*x) for j = 0..J; entry 0 is the constant term."""

    cos: np.ndarray
    sin: np.ndarray


def trig_table(points, cutoff: int):
    """Vectorized basis tables for a batch of evaluation points.

    Returns (cos_t, sin_t), each of shape (len(points), cutoff + 1), where
    cos_t[i, j] = cos(j*pi*points[i]). Only the j = 1 column calls the
    library trigonometric routines; higher orders come from the
    angle-addition recursion, so the cost per point is two transcendental
    calls plus O(J) multiplies.
    """
    pts = np.atleast_1d(np.asarray(points, dtype=float))
    n = pts.shape[0]
    cos_t = np.empty((n, cutoff + 1))
    sin_t = np.empty((n, cutoff + 1))
    cos_t[:, 0] = 1.0
    sin_t[:, 0] = 0.0
    if cutoff >= 1:
        c1 = np.cos(np.pi * pts)
        s1 = np.sin(np.pi * pts)
        cos_t[:, 1] = c1
        sin_t[:, 1] = s1
        for j in range(2, cutoff + 1):
            cos_t[:, j] = cos_t[:, j - 1] * c1 - sin_t[:, j - 1] * s1
            sin_t[:, j] = cos_t[:, j - 1] * s1 + sin_t[:, j - 1] * c1
    return cos_t, sin_t


def trig_basis(x: float, cutoff) -> TrigBasisTable:
    """Basis table for a single point, computed by the recursion."""
    j = _check_cutoff(cutoff)
    cos_t, sin_t = trig_table(float(x), j)
    return TrigBasisTable(cos=cos_t[0], sin=sin_t[0])
