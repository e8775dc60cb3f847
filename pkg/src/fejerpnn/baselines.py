"""Comparison classifiers: Gaussian-kernel PNN, its centroid-reduced
variant, k-nearest-neighbor, and nearest centroid.

All models are immutable after training and safe for concurrent
prediction. Scores returned in `Prediction.log_scores` are log
posteriors (up to shared constants) for the kernel models, and
monotone surrogate scores (votes, negative distances) for the
instance-based ones, arranged so the label is always the argmax.
"""

from __future__ import annotations

import numpy as np

from . import _backend
from .classifier import Prediction
from .errors import (
    DimensionMismatchError,
    EmptyDatasetError,
    EmptyInputError,
    FormatError,
)
from .modelio import (
    LineReader,
    check_version,
    fmt_floats,
    parse_class_header,
    parse_floats,
    read_kv_line,
    read_lines,
    to_float,
    to_int,
    write_text,
)
from .rngutil import stream_seed


def _l1_to(points: np.ndarray, center: np.ndarray) -> np.ndarray:
    return np.abs(points - center).sum(axis=1)


def kmedians(points, n_clusters, seed, max_iters: int = 100, return_trace: bool = False):
    """Coordinate-wise k-medians clustering with L1 assignment.

    Seeding picks one random point (from the seeded generator) and then
    greedily adds the point farthest in L1 from the chosen set. Iteration
    alternates L1 nearest-centroid assignment with coordinate-wise median
    updates until assignments stop changing or `max_iters` is reached;
    empty clusters are re-seeded to the point farthest from its current
    centroid. Deterministic given `seed`.

    Returns the (k, D) centroid array, or (centroids, trace) when
    `return_trace` is set, where `trace` is the per-iteration L1 objective
    (non-increasing).
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise EmptyInputError("clustering needs a non-empty (n, D) point set")
    if n_clusters < 1:
        raise ValueError("number of clusters must be positive")
    n = pts.shape[0]
    if n_clusters >= n:
        cents = pts.copy()
        return (cents, []) if return_trace else cents

    rng = np.random.default_rng(seed)
    k = int(n_clusters)
    cents = np.empty((k, pts.shape[1]))
    cents[0] = pts[int(rng.integers(n))]
    min_d = _l1_to(pts, cents[0])
    for j in range(1, k):
        nxt = int(np.argmax(min_d))
        cents[j] = pts[nxt]
        np.minimum(min_d, _l1_to(pts, cents[j]), out=min_d)

    assign = None
    trace: list[float] = []
    for _ in range(max_iters):
        dists = np.stack([_l1_to(pts, cents[j]) for j in range(k)], axis=1)
        new_assign = np.argmin(dists, axis=1)
        for j in range(k):
            if not np.any(new_assign == j):
                current = dists[np.arange(n), new_assign]
                far = int(np.argmax(current))
                cents[j] = pts[far]
                new_assign[far] = j
                dists[:, j] = _l1_to(pts, cents[j])
        if assign is not None and np.array_equal(assign, new_assign):
            break
        assign = new_assign
        for j in range(k):
            cents[j] = np.median(pts[assign == j], axis=0)
        if return_trace:
            member_costs = np.stack([_l1_to(pts, cents[j]) for j in range(k)], axis=1)
            trace.append(float(member_costs[np.arange(n), assign].sum()))
    return (cents, trace) if return_trace else cents


class _StackedModel:
    """Shared plumbing for models that score per-class vector blocks."""

    def __init__(self, labels, groups):
        self._labels = tuple(labels)
        counts = [g.shape[0] for g in groups]
        self._train = np.ascontiguousarray(np.vstack(groups), dtype=float)
        self._starts = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self._train.setflags(write=False)

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def n_classes(self) -> int:
        return len(self._labels)

    @property
    def dim(self) -> int:
        return self._train.shape[1]

    def group(self, index: int) -> np.ndarray:
        return self._train[self._starts[index] : self._starts[index + 1]]

    def _check_query(self, x) -> np.ndarray:
        arr = np.ascontiguousarray(x, dtype=float)
        if arr.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected a vector of dimension {self.dim}, got shape {arr.shape}"
            )
        return arr


class GaussianPnn(_StackedModel):
    """Memory-based kernel classifier: one stored instance per pattern unit.

    score(c) = log[(R_c/R) * (1/R_c) * sum_r K(x, x_r(c))] with the
    isotropic Gaussian kernel, evaluated via a max-shifted log-sum-exp so
    that high-dimensional kernels do not underflow.
    """

    def __init__(self, labels, groups, sigma):
        if sigma <= 0:
            raise ValueError("smoothing sigma must be positive")
        super().__init__(labels, groups)
        self.sigma = float(sigma)

    @classmethod
    def train(cls, dataset, sigma) -> "GaussianPnn":
        if dataset is None or dataset.n_classes == 0:
            raise EmptyDatasetError("cannot train on an empty dataset")
        return cls(dataset.labels, dataset.groups, sigma)

    def instances(self, label: str) -> np.ndarray:
        return self.group(self._labels.index(label)).copy()

    @property
    def total(self) -> int:
        return int(self._starts[-1])

    def _log_constant(self) -> float:
        return -np.log(self.total) - 0.5 * self.dim * np.log(
            2.0 * np.pi * self.sigma * self.sigma
        )

    def predict(self, x) -> Prediction:
        arr = self._check_query(x)
        lse = _backend.gaussian_log_scores(
            self._train, self._starts, arr, -0.5 / (self.sigma * self.sigma)
        )
        scores = lse + self._log_constant()
        return Prediction(label=self._labels[int(np.argmax(scores))], log_scores=scores)

    def save(self, path) -> None:
        lines = [
            "GPNN v1",
            f"classes {self.n_classes} dim {self.dim} sigma {self.sigma!r}",
        ]
        for ci, label in enumerate(self._labels):
            block = self.group(ci)
            lines.append(f"class {label} count {block.shape[0]}")
            lines.extend(fmt_floats(row) for row in block)
        write_text(path, lines)

    @classmethod
    def load(cls, path) -> "GaussianPnn":
        reader = LineReader(read_lines(path))
        check_version(reader.next("header"), "GPNN")
        meta = read_kv_line(reader.next("metadata"), ("classes", "dim", "sigma"))
        n_classes = to_int(meta["classes"], "class count")
        dim = to_int(meta["dim"], "dimension")
        labels, groups = _read_blocks(reader, n_classes, dim)
        try:
            return cls(labels, groups, to_float(meta["sigma"], "sigma"))
        except ValueError as exc:
            raise FormatError(str(exc)) from None


class ReducedPnn:
    """Gaussian-kernel classifier over per-class k-medians centroids.

    Densities average the kernel over each class's centroids; priors stay
    proportional to the original instance counts. With enough centroids
    per class the decision coincides with the full `GaussianPnn`.
    """

    def __init__(self, labels, centroid_groups, counts, sigma):
        if sigma <= 0:
            raise ValueError("smoothing sigma must be positive")
        self._labels = tuple(labels)
        self._counts = np.asarray(counts, dtype=np.int64).copy()
        self._cents = np.ascontiguousarray(np.vstack(centroid_groups), dtype=float)
        sizes = [g.shape[0] for g in centroid_groups]
        self._starts = np.concatenate(([0], np.cumsum(sizes))).astype(np.int64)
        self._cents.setflags(write=False)
        self.sigma = float(sigma)

    @classmethod
    def train(cls, dataset, n_centroids, sigma, seed) -> "ReducedPnn":
        if dataset is None or dataset.n_classes == 0:
            raise EmptyDatasetError("cannot train on an empty dataset")
        if n_centroids < 1:
            raise ValueError("number of centroids must be positive")
        groups = []
        for ci, group in enumerate(dataset.groups):
            # one deterministic clustering stream per class
            class_seed = stream_seed(seed, ci)
            groups.append(kmedians(group, min(n_centroids, group.shape[0]), class_seed))
        return cls(dataset.labels, groups, dataset.counts, sigma)

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def n_classes(self) -> int:
        return len(self._labels)

    @property
    def dim(self) -> int:
        return self._cents.shape[1]

    def centroids(self, label: str) -> np.ndarray:
        i = self._labels.index(label)
        return self._cents[self._starts[i] : self._starts[i + 1]].copy()

    def predict(self, x) -> Prediction:
        arr = np.ascontiguousarray(x, dtype=float)
        if arr.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected a vector of dimension {self.dim}, got shape {arr.shape}"
            )
        lse = _backend.gaussian_log_scores(
            self._cents, self._starts, arr, -0.5 / (self.sigma * self.sigma)
        )
        sizes = np.diff(self._starts).astype(float)
        total = float(self._counts.sum())
        scores = (
            lse
            - np.log(sizes)
            + np.log(self._counts.astype(float))
            - np.log(total)
            - 0.5 * self.dim * np.log(2.0 * np.pi * self.sigma * self.sigma)
        )
        return Prediction(label=self._labels[int(np.argmax(scores))], log_scores=scores)

    def save(self, path) -> None:
        lines = [
            "RPNN v1",
            f"classes {self.n_classes} dim {self.dim} sigma {self.sigma!r}",
        ]
        for ci, label in enumerate(self._labels):
            block = self._cents[self._starts[ci] : self._starts[ci + 1]]
            lines.append(
                f"class {label} count {int(self._counts[ci])} centroids {block.shape[0]}"
            )
            lines.extend(fmt_floats(row) for row in block)
        write_text(path, lines)

    @classmethod
    def load(cls, path) -> "ReducedPnn":
        reader = LineReader(read_lines(path))
        check_version(reader.next("header"), "RPNN")
        meta = read_kv_line(reader.next("metadata"), ("classes", "dim", "sigma"))
        n_classes = to_int(meta["classes"], "class count")
        dim = to_int(meta["dim"], "dimension")
        labels, counts, groups = [], [], []
        for _ in range(n_classes):
            header = reader.next("class header")
            body, _, cent_txt = header.rpartition(" centroids ")
            if not body:
                raise FormatError(f"malformed class header: {header!r}")
            label, count = parse_class_header(body)
            labels.append(label)
            counts.append(count)
            k = to_int(cent_txt, "centroid count")
            block = np.vstack(
                [parse_floats(reader.next("centroid row"), expect=dim) for _ in range(k)]
            )
            groups.append(block)
        try:
            return cls(labels, groups, counts, to_float(meta["sigma"], "sigma"))
        except ValueError as exc:
            raise FormatError(str(exc)) from None


class KnnClassifier(_StackedModel):
    """Majority vote among the k nearest stored instances (Euclidean).

    Vote ties go to the class with the smaller summed neighbor distance,
    then to the smaller class index; both rules are encoded in the
    returned scores so the label is their plain argmax.
    """

    def __init__(self, labels, groups, k):
        super().__init__(labels, groups)
        k = int(k)
        if not 1 <= k <= self._train.shape[0]:
            raise ValueError(f"k must be in [1, {self._train.shape[0]}], got {k}")
        self.k = k
        self._class_of = np.repeat(
            np.arange(self.n_classes), np.diff(self._starts)
        ).astype(np.int64)

    @classmethod
    def train(cls, dataset, k) -> "KnnClassifier":
        if dataset is None or dataset.n_classes == 0:
            raise EmptyDatasetError("cannot train on an empty dataset")
        return cls(dataset.labels, dataset.groups, k)

    def predict(self, x) -> Prediction:
        arr = self._check_query(x)
        d2 = _backend.sq_dists(self._train, arr)
        # stable neighbor order: distance, then storage index
        order = np.lexsort((np.arange(d2.shape[0]), d2))[: self.k]
        votes = np.zeros(self.n_classes)
        sums = np.zeros(self.n_classes)
        dist = np.sqrt(d2[order])
        for rank, idx in enumerate(order):
            votes[self._class_of[idx]] += 1.0
            sums[self._class_of[idx]] += dist[rank]
        # fractional part < 1 breaks vote ties by smaller summed distance
        scores = votes - sums / (1.0 + sums.sum())
        return Prediction(label=self._labels[int(np.argmax(scores))], log_scores=scores)

    def save(self, path) -> None:
        lines = ["KNN v1", f"classes {self.n_classes} dim {self.dim} k {self.k}"]
        for ci, label in enumerate(self._labels):
            block = self.group(ci)
            lines.append(f"class {label} count {block.shape[0]}")
            lines.extend(fmt_floats(row) for row in block)
        write_text(path, lines)

    @classmethod
    def load(cls, path) -> "KnnClassifier":
        reader = LineReader(read_lines(path))
        check_version(reader.next("header"), "KNN")
        meta = read_kv_line(reader.next("metadata"), ("classes", "dim", "k"))
        n_classes = to_int(meta["classes"], "class count")
        dim = to_int(meta["dim"], "dimension")
        labels, groups = _read_blocks(reader, n_classes, dim)
        try:
            return cls(labels, groups, to_int(meta["k"], "neighborhood size"))
        except ValueError as exc:
            raise FormatError(str(exc)) from None


class NearestCentroid:
    """One arithmetic-mean centroid per class; smallest Euclidean distance wins."""

    def __init__(self, labels, centroids, counts):
        self._labels = tuple(labels)
        self._cents = np.ascontiguousarray(centroids, dtype=float)
        self._counts = np.asarray(counts, dtype=np.int64).copy()
        self._cents.setflags(write=False)

    @classmethod
    def train(cls, dataset) -> "NearestCentroid":
        if dataset is None or dataset.n_classes == 0:
            raise EmptyDatasetError("cannot train on an empty dataset")
        cents = np.vstack([g.mean(axis=0) for g in dataset.groups])
        return cls(dataset.labels, cents, dataset.counts)

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def dim(self) -> int:
        return self._cents.shape[1]

    def centroid(self, label: str) -> np.ndarray:
        return self._cents[self._labels.index(label)].copy()

    def predict(self, x) -> Prediction:
        arr = np.ascontiguousarray(x, dtype=float)
        if arr.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected a vector of dimension {self.dim}, got shape {arr.shape}"
            )
        scores = -np.sqrt(_backend.sq_dists(self._cents, arr))
        return Prediction(label=self._labels[int(np.argmax(scores))], log_scores=scores)

    def save(self, path) -> None:
        lines = ["NCM v1", f"classes {len(self._labels)} dim {self.dim}"]
        for ci, label in enumerate(self._labels):
            lines.append(f"class {label} count {int(self._counts[ci])}")
            lines.append(fmt_floats(self._cents[ci]))
        write_text(path, lines)

    @classmethod
    def load(cls, path) -> "NearestCentroid":
        reader = LineReader(read_lines(path))
        check_version(reader.next("header"), "NCM")
        meta = read_kv_line(reader.next("metadata"), ("classes", "dim"))
        n_classes = to_int(meta["classes"], "class count")
        dim = to_int(meta["dim"], "dimension")
        labels, counts, rows = [], [], []
        for _ in range(n_classes):
            label, count = parse_class_header(reader.next("class header"))
            labels.append(label)
            counts.append(count)
            rows.append(parse_floats(reader.next("centroid row"), expect=dim))
        return cls(labels, np.vstack(rows), counts)


def _read_blocks(reader: LineReader, n_classes: int, dim: int):
    labels, groups = [], []
    for _ in range(n_classes):
        label, count = parse_class_header(reader.next("class header"))
        labels.append(label)
        block = np.vstack(
            [parse_floats(reader.next("instance row"), expect=dim) for _ in range(count)]
        )
        groups.append(block)
    return labels, groups
