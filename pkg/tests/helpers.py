"""Shared test utilities: synthetic datasets and feature-file writers."""

import numpy as np

from fejerpnn import Dataset


def write_feature_csv(path, labels, matrix, header_comment=None):
    """Write rows `<label>,<f_1>,...` with LF endings."""
    lines = []
    if header_comment:
        lines.append(f"# {header_comment}")
    for label, row in zip(labels, matrix):
        lines.append(label + "," + ",".join(repr(float(v)) for v in row))
    path = str(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
    return path


def unit_blob_dataset(rng, n_classes=3, per_class=10, dim=4, spread=0.05):
    """Well-separated unit-norm clusters, one random direction per class."""
    groups = []
    for _ in range(n_classes):
        center = rng.standard_normal(dim)
        center /= np.linalg.norm(center)
        pts = center + spread * rng.standard_normal((per_class, dim))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        groups.append(pts)
    labels = tuple(f"class{i:02d}" for i in range(n_classes))
    return Dataset(labels=labels, groups=tuple(groups))


def uniform_dataset(rng, n_classes, dim, per_class):
    """Classes of uniform [-1, 1] vectors (no separability guarantees)."""
    if np.isscalar(per_class):
        per_class = [per_class] * n_classes
    groups = tuple(rng.uniform(-1.0, 1.0, (n, dim)) for n in per_class)
    labels = tuple(f"c{i}" for i in range(n_classes))
    return Dataset(labels=labels, groups=groups)


def dataset_rows(dataset):
    """Flatten a dataset to (queries, truth-labels) in class order."""
    queries, truth = [], []
    for label, group in zip(dataset.labels, dataset.groups):
        for row in group:
            queries.append(row)
            truth.append(label)
    return queries, truth
