"""Labeled feature vectors: CSV ingestion, unit-norm enforcement, and PCA.

The feature file format is plain UTF-8 text with LF line endings. Lines
starting with '#' are comments; every other non-blank line is
`<label>,<f_1>,...,<f_D>` where the label is any non-empty token without
commas and the values are decimal floats (scientific notation accepted).
The dimension D is inferred from the first data line.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    DimensionMismatchError,
    EmptyDatasetError,
    ParseError,
    ZeroVectorError,
)

_NORM_EPS = 1e-12


def l2_normalize(v) -> np.ndarray:
    """Scale a vector to unit L2 norm.

    Raises ZeroVectorError when the norm is below 1e-12 (a degenerate
    feature row), ValueError on non-finite entries.
    """
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty 1-D vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector contains non-finite entries")
    norm = float(np.linalg.norm(arr))
    if norm < _NORM_EPS:
        raise ZeroVectorError("cannot normalize a zero vector")
    return arr / norm


def _iter_lines(source):
    if hasattr(source, "read"):
        yield from source
        return
    with open(os.fspath(source), "r", encoding="utf-8") as fh:
        yield from fh


def read_feature_rows(source, normalize: bool = True):
    """Parse a feature file, keeping rows in file order.

    Returns (labels, matrix) where `labels` is a list of row labels and
    `matrix` is a float array of shape (N, D). With `normalize` set
    (default), every row is L2-normalized.
    """
    labels: list[str] = []
    rows: list[np.ndarray] = []
    dim = None
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split(",")
        label = parts[0]
        if not label:
            raise ParseError(f"line {lineno}: empty label")
        if len(parts) < 2:
            raise ParseError(f"line {lineno}: no feature values")
        try:
            values = np.array([float(tok) for tok in parts[1:]], dtype=float)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if not np.all(np.isfinite(values)):
            raise ParseError(f"line {lineno}: non-finite feature value")
        if dim is None:
            dim = values.size
        elif values.size != dim:
            raise ParseError(
                f"line {lineno}: expected {dim} values, got {values.size}"
            )
        if normalize:
            values = l2_normalize(values)
        labels.append(label)
        rows.append(values)
    if not rows:
        return [], np.empty((0, 0))
    return labels, np.vstack(rows)


@dataclass(frozen=True)
class Dataset:
    """Class-labeled feature vectors grouped per class.

    `labels` holds the unique class labels in sorted order; class index
    equals position. `groups[i]` is a read-only (R_i, D) array of the
    instances of class i. Immutable after construction, hence safe for
    concurrent reads.
    """

    labels: tuple
    groups: tuple

    def __post_init__(self):
        if not self.labels or len(self.labels) != len(self.groups):
            raise ValueError("labels and groups must be non-empty and aligned")
        if list(self.labels) != sorted(set(self.labels)):
            raise ValueError("labels must be unique and sorted")
        dim = None
        for label, group in zip(self.labels, self.groups):
            if group.ndim != 2 or group.shape[0] < 1:
                raise ValueError(f"class {label!r} needs at least one instance")
            if dim is None:
                dim = group.shape[1]
            elif group.shape[1] != dim:
                raise ValueError("all classes must share one feature dimension")
            group.setflags(write=False)

    @property
    def n_classes(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.groups[0].shape[1]

    @property
    def counts(self) -> tuple:
        return tuple(g.shape[0] for g in self.groups)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def stacked(self):
        """All instances as one (R, D) matrix plus per-row class indices."""
        matrix = np.vstack(self.groups)
        idx = np.repeat(np.arange(self.n_classes), self.counts)
        return matrix, idx

    @staticmethod
    def from_rows(labels, matrix) -> "Dataset":
        """Group row-ordered instances by label (labels sorted, rows kept in order)."""
        if len(labels) == 0:
            raise EmptyDatasetError("no instances")
        buckets: dict = {}
        for i, label in enumerate(labels):
            buckets.setdefault(label, []).append(i)
        order = sorted(buckets)
        arr = np.asarray(matrix, dtype=float)
        groups = tuple(arr[buckets[label]].copy() for label in order)
        return Dataset(labels=tuple(order), groups=groups)


def load_dataset(source, normalize: bool = True) -> Dataset:
    """Read a feature file into a Dataset; deterministic for identical bytes."""
    labels, matrix = read_feature_rows(source, normalize=normalize)
    if not labels:
        raise EmptyDatasetError("feature file contains no data rows")
    return Dataset.from_rows(labels, matrix)


@dataclass(frozen=True)
class PcaTransform:
    """Affine projection onto the leading principal directions.

    `mean` is the training sample mean (D,); `projection` has orthonormal
    rows (target_dim, D) ordered by decreasing explained variance, each
    row signed so that its largest-magnitude entry is non-negative.
    """

    mean: np.ndarray
    projection: np.ndarray

    def __post_init__(self):
        self.mean.setflags(write=False)
        self.projection.setflags(write=False)

    @property
    def input_dim(self) -> int:
        return self.mean.shape[0]

    @property
    def target_dim(self) -> int:
        return self.projection.shape[0]


def fit_pca(dataset: Dataset, target_dim: int) -> PcaTransform:
    """Fit the principal directions of the pooled instances.

    Rows of the projection are the top eigenvectors of the (R-1)-normalized
    sample covariance, obtained through an SVD of the centered data matrix.
    Requires 1 <= target_dim <= min(D, R).
    """
    matrix, _ = dataset.stacked()
    n, dim = matrix.shape
    if not 1 <= target_dim <= min(dim, n):
        raise DimensionError(
            f"target_dim must be in [1, {min(dim, n)}], got {target_dim}"
        )
    mean = matrix.mean(axis=0)
    centered = matrix - mean
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[:target_dim].copy()
    for row in components:
        if row[int(np.argmax(np.abs(row)))] < 0:
            row *= -1.0
    return PcaTransform(mean=mean, projection=components)


def apply_pca(transform: PcaTransform, v) -> np.ndarray:
    """Center, project, and re-normalize one vector.

    Re-normalization keeps the projected features inside [-1, 1], which the
    series-based density estimators require. Raises ZeroVectorError when
    the projection vanishes (e.g. v equals the training mean).
    """
    arr = np.asarray(v, dtype=float)
    if arr.shape != (transform.input_dim,):
        raise DimensionMismatchError(
            f"expected dimension {transform.input_dim}, got {arr.shape}"
        )
    return l2_normalize(transform.projection @ (arr - transform.mean))


def transform_dataset(transform: PcaTransform, dataset: Dataset) -> Dataset:
    """Apply the projection and re-normalization to every instance."""
    groups = []
    for group in dataset.groups:
        projected = (group - transform.mean) @ transform.projection.T
        norms = np.linalg.norm(projected, axis=1)
        if np.any(norms < _NORM_EPS):
            raise ZeroVectorError("an instance projects to the zero vector")
        groups.append(projected / norms[:, None])
    return Dataset(labels=dataset.labels, groups=tuple(groups))
