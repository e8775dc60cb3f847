"""Compare the compiled scoring core against the pure-NumPy fallback.

Times the two hot kernels (series-model scoring and Gaussian kernel-sum
scoring) through both implementations on identical inputs, checks that
they agree, and prints per-call latencies with the speedup.

Usage:
    python benchmarks/compare_backends.py [--queries N] [--dim D]
"""

import argparse
import time

import numpy as np

from fejerpnn import Dataset, FejerPnn, GaussianPnn, fixed_cutoff
from fejerpnn import _kernels_py

try:
    from fejerpnn import _ckernels
except ImportError:
    _ckernels = None


def make_dataset(rng, n_classes, per_class, dim):
    groups = []
    for _ in range(n_classes):
        center = rng.standard_normal(dim)
        center /= np.linalg.norm(center)
        pts = center + 0.05 * rng.standard_normal((per_class, dim))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        groups.append(pts)
    return Dataset(
        labels=tuple(f"c{i:03d}" for i in range(n_classes)), groups=tuple(groups)
    )


def time_calls(fn, queries, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for q in queries:
            fn(q)
        best = min(best, (time.perf_counter() - start) / len(queries))
    return 1e6 * best  # microseconds per call


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--queries", type=int, default=300)
    parser.add_argument("--dim", type=int, default=256)
    parser.add_argument("--classes", type=int, default=10)
    parser.add_argument("--per-class", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled extension is not built; run `pip install -e .` first")
        return

    rng = np.random.default_rng(args.seed)
    ds = make_dataset(rng, args.classes, args.per_class, args.dim)
    cutoff = fixed_cutoff(ds.total, ds.n_classes)
    fm = FejerPnn.train(ds, cutoff)
    gm = GaussianPnn.train(ds, 0.5)
    queries = rng.standard_normal((args.queries, args.dim))
    queries /= np.linalg.norm(queries, axis=1, keepdims=True)
    queries = np.ascontiguousarray(queries)

    log_counts = np.log(fm.counts.astype(float))
    floor = 1e-15
    inv = -0.5 / (0.5 * 0.5)

    cases = {
        "series scores": (
            lambda q: _ckernels.fejer_log_scores(fm._w_cos, fm._w_sin, log_counts, q, floor),
            lambda q: _kernels_py.fejer_log_scores(fm._w_cos, fm._w_sin, log_counts, q, floor),
        ),
        "kernel-sum scores": (
            lambda q: _ckernels.gaussian_log_scores(gm._train, gm._starts, q, inv),
            lambda q: _kernels_py.gaussian_log_scores(gm._train, gm._starts, q, inv),
        ),
    }

    print(
        f"C={args.classes} D={args.dim} R={ds.total} J={cutoff} "
        f"({args.queries} queries, best of 3)"
    )
    print(f"{'kernel':<20} {'compiled us':>12} {'python us':>12} {'speedup':>9}")
    for name, (compiled, fallback) in cases.items():
        sample = queries[0]
        if not np.allclose(compiled(sample), fallback(sample), rtol=1e-9, atol=1e-9):
            raise AssertionError(f"{name}: backends disagree")
        t_c = time_calls(compiled, queries)
        t_p = time_calls(fallback, queries)
        print(f"{name:<20} {t_c:>12.2f} {t_p:>12.2f} {t_p / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
