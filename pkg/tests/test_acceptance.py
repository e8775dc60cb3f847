"""Acceptance suite: numbered end-to-end checks at fixed tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to get one PASS/FAIL
line per criterion. Every expected value is computed by an independent
route (explicit trigonometric sums, brute-force kernel sums, quadrature)
inside this module, never by the code path under test.
"""

import functools
import math
import time

import numpy as np
import pytest

import fejerpnn as fp
from fejerpnn import (
    DENSITY_FLOOR,
    Dataset,
    FejerPnn,
    GaussianPnn,
    density_canonical,
    density_noncanonical,
    dirichlet,
    fejer,
    fixed_cutoff,
    fourier_coeffs,
)
from fejerpnn.cli import main as cli_main

from helpers import write_feature_csv


def criterion(number, title):
    """Print one PASS/FAIL line per acceptance criterion."""

    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\ncriterion {number:2d} FAIL  {title}", flush=True)
                raise
            print(f"\ncriterion {number:2d} PASS  {title}", flush=True)

        return wrapper

    return decorate


def cosine_sum(delta, cutoff):
    j = np.arange(1, cutoff + 1)
    return 1.0 + 2.0 * np.cos(np.pi * np.outer(np.atleast_1d(delta), j)).sum(axis=1)


def bruteforce_scores(dataset, cutoff, query):
    scores = []
    for group in dataset.groups:
        s = math.log(group.shape[0])
        for d in range(dataset.dim):
            dens = density_canonical(float(query[d]), group[:, d], cutoff)
            s += math.log(max(dens, DENSITY_FLOOR))
        scores.append(s)
    return np.array(scores)


def uniform_problem(rng, n_classes, dim, max_count):
    counts = [int(rng.integers(3, max_count + 1)) for _ in range(n_classes)]
    groups = tuple(rng.uniform(-1, 1, (n, dim)) for n in counts)
    return Dataset(labels=tuple(f"c{i}" for i in range(n_classes)), groups=groups)


# raised-cosine family on [-1, 1]: bump at `center`, clipped and renormalized
def bump_unnorm(x, center):
    return np.where(
        np.abs(x - center) <= 1.0, 0.5 * (1.0 + np.cos(np.pi * (x - center))), 0.0
    )


def bump_mass(center):
    lo, hi = max(-1.0, center - 1.0), min(1.0, center + 1.0)

    def antideriv(u):
        return u / 2.0 + math.sin(math.pi * u) / (2.0 * math.pi)

    return antideriv(hi - center) - antideriv(lo - center)


def bump_sample(rng, center, mass, n):
    """Rejection sampling against a uniform proposal on [-1, 1]."""
    out = np.empty(n)
    have = 0
    peak = 1.0 / mass
    while have < n:
        cand = rng.uniform(-1.0, 1.0, 2 * (n - have) + 16)
        height = rng.uniform(0.0, peak, cand.size)
        kept = cand[height <= bump_unnorm(cand, center) / mass]
        take = min(kept.size, n - have)
        out[have : have + take] = kept[:take]
        have += take
    return out


def mean_latency_ms(model, queries):
    for q in queries:
        model.predict(q)  # warm-up pass
    start = time.perf_counter()
    for q in queries:
        model.predict(q)
    return 1000.0 * (time.perf_counter() - start) / len(queries)


@criterion(1, "closed-form kernel equals the symmetric cosine sum")
def test_criterion_01_dirichlet_identity():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    xs = rng.uniform(-1, 1, 10_000)
    ys = rng.uniform(-1, 1, 10_000)
    cutoffs = rng.integers(1, 17, 10_000)
    worst = 0.0
    for cutoff in range(1, 17):
        mask = cutoffs == cutoff
        got = dirichlet(xs[mask], ys[mask], cutoff)
        expected = cosine_sum(xs[mask] - ys[mask], cutoff)
        worst = max(worst, float(np.max(np.abs(got - expected))))
    elapsed = time.perf_counter() - start
    assert worst < 1e-9, f"max deviation {worst}"
    assert elapsed < 1.0, f"took {elapsed:.2f}s"


@criterion(2, "averaged kernel is non-negative and averages the partial sums")
def test_criterion_02_fejer_properties():
    start = time.perf_counter()
    deltas = np.linspace(-2.0, 2.0, 40_001)  # step 1e-4
    for cutoff in range(1, 33):
        assert fejer(deltas, 0.0, cutoff).min() >= -1e-12
    rng = np.random.default_rng(202)
    worst = 0.0
    for _ in range(2000):
        x, y = rng.uniform(-1, 1, 2)
        cutoff = int(rng.integers(1, 33))
        partial = np.ones(1)  # order-0 sum
        acc = partial.copy()
        for order in range(1, cutoff + 1):
            acc += cosine_sum(x - y, order)
        expected = float(acc[0]) / (cutoff + 1)
        worst = max(worst, abs(fejer(x, y, cutoff) - expected))
    elapsed = time.perf_counter() - start
    assert worst < 1e-9, f"max deviation {worst}"
    assert elapsed < 10.0, f"took {elapsed:.2f}s"


@criterion(3, "series evaluation equals the brute-force route, scores and labels")
def test_criterion_03_canonical_noncanonical_equivalence():
    rng = np.random.default_rng(303)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        samples = rng.uniform(-1, 1, int(rng.integers(1, 51)))
        cutoff = int(rng.integers(1, 13))
        coeffs = fourier_coeffs(samples, cutoff)
        queries = rng.uniform(-1, 1, 100)
        direct = density_canonical(queries, samples, cutoff)
        series = density_noncanonical(queries, coeffs)
        worst = max(worst, float(np.max(np.abs(direct - series))))
    assert worst < 1e-9, f"max density deviation {worst}"

    for _ in range(50):
        n_classes = int(rng.integers(2, 6))
        dim = int(rng.integers(1, 9))
        cutoff = int(rng.integers(1, 13))
        ds = uniform_problem(rng, n_classes, dim, 50)
        model = FejerPnn.train(ds, cutoff)
        for _ in range(10):
            q = rng.uniform(-1, 1, dim)
            oracle = bruteforce_scores(ds, cutoff, q)
            assert model.predict(q).label == ds.labels[int(np.argmax(oracle))]
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"took {elapsed:.2f}s"


@criterion(4, "incremental weight updates reproduce batch training")
def test_criterion_04_incremental_equals_batch():
    rng = np.random.default_rng(404)
    start = time.perf_counter()
    for _ in range(100):
        n_classes = int(rng.integers(1, 5))
        dim = int(rng.integers(1, 7))
        cutoff = int(rng.integers(1, 11))
        counts = [int(rng.integers(2, 31)) for _ in range(n_classes)]
        groups = tuple(rng.uniform(-1, 1, (n, dim)) for n in counts)
        labels = tuple(f"c{i}" for i in range(n_classes))
        base = Dataset(labels=labels, groups=groups)
        model = FejerPnn.train(base, cutoff)
        extra = {label: [] for label in labels}
        for _ in range(10):
            label = labels[int(rng.integers(n_classes))]
            x = rng.uniform(-1, 1, dim)
            extra[label].append(x)
            model.update(x, label)
        merged = Dataset(
            labels=labels,
            groups=tuple(
                np.vstack([g] + extra[l]) if extra[l] else g.copy()
                for l, g in zip(labels, groups)
            ),
        )
        batch = FejerPnn.train(merged, cutoff)
        for label in labels:
            for got, want in zip(model.weights(label), batch.weights(label)):
                assert np.max(np.abs(got - want)) < 1e-12
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"took {elapsed:.2f}s"


@criterion(5, "per-feature density estimates integrate to one")
def test_criterion_05_normalization():
    rng = np.random.default_rng(505)
    start = time.perf_counter()
    xs = np.linspace(-1.0, 1.0, 10_000)
    for _ in range(50):
        samples = rng.uniform(-1, 1, int(rng.integers(1, 61)))
        cutoff = int(rng.integers(1, 17))
        coeffs = fourier_coeffs(samples, cutoff)
        mass = np.trapezoid(density_noncanonical(xs, coeffs), xs)
        assert abs(mass - 1.0) < 1e-3, f"mass {mass}"
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"took {elapsed:.2f}s"


@criterion(6, "two-class accuracy approaches the quadrature Bayes limit")
def test_criterion_06_bayes_convergence():
    rng = np.random.default_rng(606)
    start = time.perf_counter()
    centers = {"a": -0.3, "b": 0.3}
    masses = {k: bump_mass(v) for k, v in centers.items()}

    xs = np.linspace(-1.0, 1.0, 200_001)
    f_a = bump_unnorm(xs, centers["a"]) / masses["a"]
    f_b = bump_unnorm(xs, centers["b"]) / masses["b"]
    bayes_accuracy = 1.0 - 0.5 * np.trapezoid(np.minimum(f_a, f_b), xs)

    per_class = 2000
    cutoff = fixed_cutoff(2 * per_class, 2)
    groups = tuple(
        bump_sample(rng, centers[k], masses[k], per_class).reshape(-1, 1)
        for k in ("a", "b")
    )
    model = FejerPnn.train(Dataset(labels=("a", "b"), groups=groups), cutoff)

    n_test = 5000
    correct = 0
    for label in ("a", "b"):
        queries = bump_sample(rng, centers[label], masses[label], n_test)
        for q in queries:
            if model.predict(np.array([q])).label == label:
                correct += 1
    accuracy = correct / (2 * n_test)
    elapsed = time.perf_counter() - start
    assert abs(accuracy - bayes_accuracy) <= 0.02, (
        f"accuracy {accuracy:.4f} vs Bayes {bayes_accuracy:.4f}"
    )
    assert elapsed < 30.0, f"took {elapsed:.2f}s"


@criterion(7, "integrated squared error shrinks as the sample grows")
def test_criterion_07_mise_decay():
    rng = np.random.default_rng(707)
    start = time.perf_counter()
    xs = np.linspace(-1.0, 1.0, 2001)
    truth = 0.5 * (1.0 + np.cos(np.pi * xs))

    def ise(n):
        cutoff = math.ceil(n ** (1.0 / 3.0))
        samples = bump_sample(rng, 0.0, 1.0, n)  # center 0 has unit mass
        est = density_noncanonical(xs, fourier_coeffs(samples, cutoff))
        return float(np.trapezoid((est - truth) ** 2, xs))

    median_small = float(np.median([ise(100) for _ in range(20)]))
    median_large = float(np.median([ise(800) for _ in range(20)]))
    elapsed = time.perf_counter() - start
    assert median_large < median_small, (
        f"ISE medians: {median_small:.5f} (R=100) vs {median_large:.5f} (R=800)"
    )
    assert elapsed < 30.0, f"took {elapsed:.2f}s"


@criterion(8, "prediction latency is flat for the series model, linear for the kernel sum")
def test_criterion_08_runtime_scaling():
    rng = np.random.default_rng(808)
    start = time.perf_counter()
    n_classes, dim = 10, 256
    cutoff = fixed_cutoff(100, n_classes)  # rule evaluated at the small size

    def make_dataset(total):
        per = total // n_classes
        groups = []
        for _ in range(n_classes):
            center = rng.standard_normal(dim)
            center /= np.linalg.norm(center)
            pts = center + 0.05 * rng.standard_normal((per, dim))
            pts /= np.linalg.norm(pts, axis=1, keepdims=True)
            groups.append(pts)
        labels = tuple(f"c{i:02d}" for i in range(n_classes))
        return Dataset(labels=labels, groups=tuple(groups))

    queries = rng.standard_normal((200, dim))
    queries /= np.linalg.norm(queries, axis=1, keepdims=True)

    latency = {}
    for total in (100, 6400):
        ds = make_dataset(total)
        latency[total] = (
            mean_latency_ms(FejerPnn.train(ds, cutoff), queries),
            mean_latency_ms(GaussianPnn.train(ds, 0.5), queries),
        )
    series_ratio = latency[6400][0] / latency[100][0]
    kernel_ratio = latency[6400][1] / latency[100][1]
    elapsed = time.perf_counter() - start
    assert series_ratio <= 2.0, f"series-model latency ratio {series_ratio:.2f}"
    assert kernel_ratio >= 16.0, f"kernel-sum latency ratio {kernel_ratio:.2f}"
    assert elapsed < 120.0, f"took {elapsed:.2f}s"


@criterion(9, "model files store exactly C*D*(2J+1) weights and round-trip bytes")
def test_criterion_09_model_size_and_roundtrip(tmp_path):
    rng = np.random.default_rng(909)
    n_classes, dim, cutoff = 4, 6, 5
    ds = uniform_problem(rng, n_classes, dim, 12)
    model = FejerPnn.train(ds, cutoff)
    first = tmp_path / "model-a.fpnn"
    second = tmp_path / "model-b.fpnn"
    model.save(first)

    lines = first.read_text(encoding="utf-8").splitlines()
    weight_tokens = sum(
        len(line.split())
        for line in lines
        if not line.startswith(("FPNN", "classes ", "class "))
    )
    assert weight_tokens == n_classes * dim * (2 * cutoff + 1)

    reloaded = FejerPnn.load(first)
    reloaded.save(second)
    assert first.read_bytes() == second.read_bytes()
    for _ in range(100):
        q = rng.uniform(-1, 1, dim)
        assert model.predict(q).label == reloaded.predict(q).label


@criterion(10, "class-size rule gives cutoff 6 at 25 instances per class")
def test_criterion_10_fixed_cutoff_rule():
    assert fixed_cutoff(25, 1) == 6
    assert fixed_cutoff(2500, 100) == 6
    assert fixed_cutoff(250, 10) == 6


@criterion(11, "benchmark protocol emits the summary layout deterministically")
def test_criterion_11_benchmark_protocol(tmp_path):
    rng = np.random.default_rng(111)
    n_classes, per_class, dim = 3, 12, 6
    labels, rows = [], []
    for c in range(n_classes):
        center = rng.standard_normal(dim)
        center /= np.linalg.norm(center)
        for _ in range(per_class):
            v = center + 0.2 * rng.standard_normal(dim)
            labels.append(f"cls{c}")
            rows.append(v)
    csv_path = write_feature_csv(tmp_path / "features.csv", labels, rows)

    outputs = []
    for name in ("run-a.csv", "run-b.csv"):
        out = str(tmp_path / name)
        code = cli_main(
            ["bench", "--features", csv_path, "--ratio", "0.5", "--splits", "10",
             "--seed", "20260809", "--classifiers", "fejer,pnn,centroid",
             "--sigma-grid", "0.1", "--out", out]
        )
        assert code == 0
        outputs.append(open(out, encoding="utf-8").read().splitlines())

    for lines in outputs:
        assert lines[0].startswith("# seed=20260809 rng=")
        assert lines[1] == "classifier,split,recall,mean_predict_ms"
        split_rows = [l for l in lines[2:] if ",AGG," not in l]
        agg_rows = [l for l in lines[2:] if ",AGG," in l]
        assert len(split_rows) == 3 * 10
        assert len(agg_rows) == 3
        for row in agg_rows:
            cells = row.split(",")
            assert "±" in cells[2] and "±" in cells[3]

    # same seed: recall columns byte-identical between the two runs
    for la, lb in zip(outputs[0][2:], outputs[1][2:]):
        assert la.split(",")[:3] == lb.split(",")[:3]
