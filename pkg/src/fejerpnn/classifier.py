"""Classifier backed by per-class trigonometric moment tables.

Training is a single pass that turns every (class, dimension) sample into
triangular-weighted trigonometric moments; nothing iterative, no stored
instances. Prediction evaluates, per feature, a short series in the query
point and sums log densities per class, so its cost is O(C*D*J) and does
not grow with the training-set size. New instances (and, optionally, new
classes) can be folded in by a running-mean weight update.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import (
    DimensionMismatchError,
    EmptyDatasetError,
    FormatError,
    UnknownClassError,
)
from .kernels import _check_cutoff, trig_table
from .modelio import (
    LineReader,
    check_version,
    fmt_floats,
    parse_class_header,
    parse_floats,
    read_kv_line,
    read_lines,
    to_int,
    write_text,
)

# Density values are clamped here before the logarithm; the averaged
# kernel can vanish exactly at isolated points.
DENSITY_FLOOR = 1e-15


@dataclass(frozen=True)
class Prediction:
    """Predicted label plus the per-class log objective values.

    `label` is the argmax of `log_scores`, ties going to the smallest
    class index.
    """

    label: str
    log_scores: np.ndarray


def _triangular(cutoff: int) -> np.ndarray:
    return (cutoff + 1 - np.arange(cutoff + 1, dtype=float)) / (cutoff + 1)


def _trig_moments(points: np.ndarray, cutoff: int):
    """Column means of cos(j*pi*x) and sin(j*pi*x), j = 0..cutoff.

    `points` is (R, D); returns two (cutoff+1, D) arrays. Higher orders
    use the same angle-addition recursion as `kernels.trig_table`, so a
    single new point processed there reproduces these values bit for bit.
    """
    n, dim = points.shape
    cos_m = np.empty((cutoff + 1, dim))
    sin_m = np.empty((cutoff + 1, dim))
    cos_m[0] = 1.0
    sin_m[0] = 0.0
    c1 = np.cos(np.pi * points)
    s1 = np.sin(np.pi * points)
    ccur, scur = c1, s1
    cos_m[1] = ccur.mean(axis=0)
    sin_m[1] = scur.mean(axis=0)
    for j in range(2, cutoff + 1):
        ccur, scur = ccur * c1 - scur * s1, ccur * s1 + scur * c1
        cos_m[j] = ccur.mean(axis=0)
        sin_m[j] = scur.mean(axis=0)
    return cos_m, sin_m


class FejerPnn:
    """Trained series-weight classifier.

    Weight layout: `w_cos` is (C, D, J+1) with `w_cos[:, :, 0] == 1`, and
    `w_sin` is (C, D, J) for orders 1..J. A trained model is safe for
    concurrent prediction; `update` needs exclusive access.
    """

    def __init__(self, labels, counts, w_cos, w_sin):
        self._labels = list(labels)
        self._counts = np.asarray(counts, dtype=np.int64).copy()
        self._w_cos = np.ascontiguousarray(w_cos, dtype=float)
        self._w_sin = np.ascontiguousarray(w_sin, dtype=float)
        c = len(self._labels)
        if self._counts.shape != (c,) or np.any(self._counts < 1):
            raise ValueError("need one positive instance count per class")
        if self._w_cos.ndim != 3 or self._w_sin.ndim != 3:
            raise ValueError("weight tables must be 3-D")
        if self._w_cos.shape[0] != c or self._w_sin.shape[0] != c:
            raise ValueError("weight tables must have one block per class")
        if self._w_sin.shape != (c, self._w_cos.shape[1], self._w_cos.shape[2] - 1):
            raise ValueError("cosine and sine tables disagree in shape")
        self._index = {label: i for i, label in enumerate(self._labels)}
        if len(self._index) != c:
            raise ValueError("class labels must be unique")

    @property
    def labels(self) -> tuple:
        return tuple(self._labels)

    @property
    def counts(self) -> np.ndarray:
        return self._counts.copy()

    @property
    def cutoff(self) -> int:
        return self._w_cos.shape[2] - 1

    @property
    def dim(self) -> int:
        return self._w_cos.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self._labels)

    def weights(self, label: str):
        """(w_cos, w_sin) views for one class; read-only copies."""
        i = self._class_index(label)
        return self._w_cos[i].copy(), self._w_sin[i].copy()

    def _class_index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownClassError(f"unknown class label {label!r}") from None

    @classmethod
    def train(cls, dataset, cutoff, dc_inverse_count: bool = False) -> "FejerPnn":
        """Build the weight tables in one pass over the dataset.

        `dc_inverse_count` switches the constant (order-0) weight to the
        alternative 1/R(c) convention for side-by-side comparisons; the
        default keeps it at 1, which is the convention the incremental
        `update` preserves.
        """
        if dataset is None or dataset.n_classes == 0:
            raise EmptyDatasetError("cannot train on an empty dataset")
        j = _check_cutoff(cutoff)
        n_classes, dim = dataset.n_classes, dataset.dim
        tri = _triangular(j)
        w_cos = np.empty((n_classes, dim, j + 1))
        w_sin = np.empty((n_classes, dim, j))
        for ci, group in enumerate(dataset.groups):
            cos_m, sin_m = _trig_moments(group, j)
            w_cos[ci] = cos_m.T * tri
            w_sin[ci] = sin_m[1:].T * tri[1:]
            w_cos[ci, :, 0] = (1.0 / group.shape[0]) if dc_inverse_count else 1.0
        return cls(dataset.labels, dataset.counts, w_cos, w_sin)

    def predict(self, x) -> Prediction:
        """Score every class in the log domain and return the argmax.

        score(c) = log R(c) + sum_d log(max(floor, series_c,d(x_d))), with
        one basis recursion per dimension shared across classes.
        """
        arr = np.ascontiguousarray(x, dtype=float)
        if arr.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected a vector of dimension {self.dim}, got shape {arr.shape}"
            )
        scores = _backend.fejer_log_scores(
            self._w_cos,
            self._w_sin,
            np.log(self._counts.astype(float)),
            arr,
            DENSITY_FLOOR,
        )
        return Prediction(label=self._labels[int(np.argmax(scores))], log_scores=scores)

    def update(self, x, label: str, create_missing: bool = False) -> "FejerPnn":
        """Fold one new instance into the weights of `label` in O(D*J).

        Equivalent to retraining on the enlarged class up to rounding.
        Unknown labels are rejected unless `create_missing` is set, in
        which case a fresh class starts from zero tables. Requires
        exclusive access (single writer, no concurrent readers).
        """
        arr = np.asarray(x, dtype=float)
        if arr.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected a vector of dimension {self.dim}, got shape {arr.shape}"
            )
        if label not in self._index:
            if not create_missing:
                raise UnknownClassError(f"unknown class label {label!r}")
            self._append_empty_class(label)
        ci = self._index[label]
        j = self.cutoff
        r = float(self._counts[ci])
        keep = r / (r + 1.0)
        blend = 1.0 / (r + 1.0)
        cos_t, sin_t = trig_table(arr, j)
        tri = _triangular(j)
        self._w_cos[ci] = keep * self._w_cos[ci] + (tri * cos_t) * blend
        self._w_sin[ci] = keep * self._w_sin[ci] + (tri[1:] * sin_t[:, 1:]) * blend
        # the constant term is a fixed point of the blend; pin it exactly
        self._w_cos[ci, :, 0] = 1.0
        self._counts[ci] += 1
        return self

    def _append_empty_class(self, label: str) -> None:
        c, d, order = self._w_cos.shape
        self._labels.append(label)
        self._index[label] = c
        self._counts = np.append(self._counts, np.int64(0))
        self._w_cos = np.concatenate([self._w_cos, np.zeros((1, d, order))], axis=0)
        self._w_sin = np.concatenate([self._w_sin, np.zeros((1, d, order - 1))], axis=0)

    # -- serialization ----------------------------------------------------

    def save(self, path) -> None:
        """Write the exact weights; the file round-trips bit for bit."""
        j = self.cutoff
        lines = ["FPNN v1", f"classes {self.n_classes} dim {self.dim} cutoff {j}"]
        for ci, label in enumerate(self._labels):
            lines.append(f"class {label} count {int(self._counts[ci])}")
            for d in range(self.dim):
                row = np.concatenate([self._w_cos[ci, d], self._w_sin[ci, d]])
                lines.append(fmt_floats(row))
        write_text(path, lines)

    @classmethod
    def load(cls, path) -> "FejerPnn":
        reader = LineReader(read_lines(path))
        check_version(reader.next("header"), "FPNN")
        meta = read_kv_line(reader.next("metadata"), ("classes", "dim", "cutoff"))
        n_classes = to_int(meta["classes"], "class count")
        dim = to_int(meta["dim"], "dimension")
        j = to_int(meta["cutoff"], "cutoff")
        if n_classes < 1 or dim < 1 or j < 1:
            raise FormatError("model metadata out of range")
        labels, counts = [], []
        w_cos = np.empty((n_classes, dim, j + 1))
        w_sin = np.empty((n_classes, dim, j))
        for ci in range(n_classes):
            label, count = parse_class_header(reader.next("class header"))
            labels.append(label)
            counts.append(count)
            for d in range(dim):
                row = parse_floats(reader.next("weight row"), expect=2 * j + 1)
                w_cos[ci, d] = row[: j + 1]
                w_sin[ci, d] = row[j + 1 :]
        try:
            return cls(labels, counts, w_cos, w_sin)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
