"""Per-feature density estimation on [-1, 1] from trigonometric moments.

Two equivalent evaluation routes are kept deliberately separate: the
kernel-sum form (`density_canonical`, O(R) per query, used as a brute
force reference) and the precomputed-moment series (`density_noncanonical`,
O(J) per query). Cut-off selection offers a per-sample data-driven rule,
its median aggregation, and a closed-form rule based on class sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySampleError, EmptySelectionError
from .kernels import _check_cutoff, fejer, trig_table

# Strict-improvement threshold for the cut-off search; keeps the argmax
# deterministic when criterion values differ only by rounding noise.
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class FourierCoefficients:
    """Empirical trigonometric moments of a 1-D sample.

    cos_moments[j] is the sample mean of cos(j*pi*s) and sin_moments[j]
    the mean of sin(j*pi*s), for j = 0..J. cos_moments[0] is exactly 1 and
    sin_moments[0] exactly 0; every entry lies in [-1, 1].
    """

    cos_moments: np.ndarray
    sin_moments: np.ndarray
    count: int

    @property
    def cutoff(self) -> int:
        return self.cos_moments.shape[0] - 1


def _as_sample_array(samples) -> np.ndarray:
    arr = np.asarray(samples, dtype=float).ravel()
    if arr.size == 0:
        raise EmptySampleError("at least one sample is required")
    return arr


def fourier_coeffs(samples, cutoff) -> FourierCoefficients:
    """Trigonometric moments of `samples` up to order `cutoff`."""
    j = _check_cutoff(cutoff)
    arr = _as_sample_array(samples)
    angles = np.pi * np.outer(np.arange(j + 1), arr)
    return FourierCoefficients(
        cos_moments=np.cos(angles).mean(axis=1),
        sin_moments=np.sin(angles).mean(axis=1),
        count=arr.size,
    )


def density_canonical(x, samples, cutoff):
    """Kernel-sum density estimate: mean of fejer(x, s, J) over samples, halved.

    The 1/2 factor normalizes the estimate to unit mass on [-1, 1].
    O(R) per query point; `x` may be a scalar or an array.
    """
    j = _check_cutoff(cutoff)
    arr = _as_sample_array(samples)
    xa = np.asarray(x, dtype=float)
    vals = fejer(xa[..., None], arr, j)
    out = 0.5 * np.mean(vals, axis=-1)
    if out.ndim == 0:
        return float(out)
    return out


def density_noncanonical(x, coeffs: FourierCoefficients, cutoff=None):
    """Series-form density estimate from precomputed moments.

    Evaluates cos_moments[0]/2 plus the triangular-weighted sum of
    (J+1-j)/(J+1) * (cos_moments[j]*cos(j*pi*x) + sin_moments[j]*sin(j*pi*x))
    for j = 1..J, with the basis values from the trig recursion. Equal to
    `density_canonical` on the generating samples up to rounding.
    O(J) per query point; `x` may be a scalar or an array.
    """
    j = coeffs.cutoff
    if cutoff is not None and int(cutoff) != j:
        raise ValueError(f"coefficients carry cutoff {j}, got {cutoff}")
    xa = np.asarray(x, dtype=float)
    cos_t, sin_t = trig_table(xa.ravel(), j)
    tri = (j + 1 - np.arange(1, j + 1, dtype=float)) / (j + 1)
    vals = (
        0.5 * coeffs.cos_moments[0]
        + cos_t[:, 1:] @ (tri * coeffs.cos_moments[1:])
        + sin_t[:, 1:] @ (tri * coeffs.sin_moments[1:])
    )
    if xa.ndim == 0:
        return float(vals[0])
    return vals.reshape(xa.shape)


def hart_cutoff(samples, max_cutoff) -> int:
    """Data-driven truncation order for a 1-D sample.

    Scans J = 1..max_cutoff and returns the J maximizing the cumulative
    squared moment mass minus the 2J/(R+1) penalty, preferring smaller J
    unless a later value improves the criterion by more than rounding
    noise.
    """
    j_max = _check_cutoff(max_cutoff)
    coeffs = fourier_coeffs(samples, j_max)
    power = coeffs.cos_moments[1:] ** 2 + coeffs.sin_moments[1:] ** 2
    criterion = np.cumsum(power) - 2.0 * np.arange(1, j_max + 1) / (coeffs.count + 1)
    best = 1
    best_val = criterion[0]
    for j in range(2, j_max + 1):
        if criterion[j - 1] > best_val + _TIE_TOL:
            best = j
            best_val = criterion[j - 1]
    return best


def median_cutoff(values) -> int:
    """Lower median of a collection of per-pair cut-off optima."""
    vals = sorted(int(v) for v in values)
    if not vals:
        raise EmptySelectionError("no cut-off values to aggregate")
    return vals[(len(vals) - 1) // 2]


def fixed_cutoff(total: int, n_classes: int) -> int:
    """Closed-form cut-off: ceil(2 * max((R/C)^(1/3), 1)).

    `total` is the training-set size R and `n_classes` the class count C;
    e.g. 25 instances per class give 6.
    """
    if total < 1 or n_classes < 1:
        raise ValueError("total and n_classes must be positive")
    per_class = total / n_classes
    value = 2.0 * max(per_class ** (1.0 / 3.0), 1.0)
    # tiny slack so exact integers are not bumped up by representation error
    return max(1, math.ceil(value - 1e-9))


@dataclass(frozen=True)
class CutoffSelection:
    """Per-(class label, dimension) cut-off optima and their shared median."""

    per_pair: dict

    @property
    def median(self) -> int:
        return median_cutoff(self.per_pair.values())


def select_hart_cutoffs(dataset, max_cutoff) -> CutoffSelection:
    """Apply `hart_cutoff` to every (class, dimension) sample of a dataset.

    The pairs are independent, so callers may freely parallelize over
    them; this reference implementation loops.
    """
    per_pair = {}
    for label, group in zip(dataset.labels, dataset.groups):
        for d in range(dataset.dim):
            per_pair[(label, d)] = hart_cutoff(group[:, d], max_cutoff)
    return CutoffSelection(per_pair)
