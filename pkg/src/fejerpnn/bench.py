"""Repeated stratified random-subsampling evaluation with per-sample timing.

The protocol: split every class independently at a fixed train ratio,
train each selected classifier on the train side, and measure mean recall
plus mean wall-clock prediction latency on the test side (one warm-up
pass first). Splits are repeated with independent derived random streams
and aggregated as mean and standard deviation. Any parameter grid with
more than one candidate must be resolved on a separate tuning dataset,
never on the evaluation data.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .baselines import GaussianPnn, KnnClassifier, NearestCentroid, ReducedPnn
from .classifier import FejerPnn
from .density import fixed_cutoff, select_hart_cutoffs
from .errors import (
    ClassTooSmallError,
    LengthMismatchError,
    MissingClassError,
    MissingTuningSetError,
)
from .features import Dataset
from .rngutil import RNG_NAME, stream_rng

CLASSIFIER_NAMES = ("fejer", "pnn", "reduced-pnn", "knn", "centroid")

#: sigma candidates: 0.001, then 0.005 to 1.0 in steps of 0.005
DEFAULT_SIGMA_GRID = (0.001,) + tuple(round(0.005 * k, 3) for k in range(1, 201))
DEFAULT_K_GRID = (1, 3, 5)
DEFAULT_CENTROID_GRID = (1, 3, 5, 10)


@dataclass(frozen=True)
class SplitConfig:
    """Train ratio, number of repeated splits, and the base seed."""

    ratio: float
    n_splits: int
    seed: int

    def __post_init__(self):
        if not 0.0 < self.ratio < 1.0:
            raise ValueError("ratio must lie strictly between 0 and 1")
        if self.n_splits < 1:
            raise ValueError("need at least one split")


@dataclass(frozen=True)
class ParamGrid:
    """Parameter candidates per classifier family.

    `cutoff` is the policy for the series classifier: "fixed" applies the
    closed-form class-size rule, "hart" the data-driven per-pair median,
    and an integer is used as-is.
    """

    sigmas: tuple = DEFAULT_SIGMA_GRID
    ks: tuple = DEFAULT_K_GRID
    centroid_counts: tuple = DEFAULT_CENTROID_GRID
    cutoff: object = "fixed"
    hart_max_cutoff: int = 16

    def __post_init__(self):
        if not self.sigmas or not self.ks or not self.centroid_counts:
            raise ValueError("parameter grids must be non-empty")
        if self.cutoff not in ("fixed", "hart") and not isinstance(self.cutoff, int):
            raise ValueError("cutoff policy must be 'fixed', 'hart', or an integer")


@dataclass(frozen=True)
class SplitResult:
    classifier: str
    split: int
    recall: float
    mean_predict_ms: float


@dataclass(frozen=True)
class Aggregate:
    recall_mean: float
    recall_std: float
    ms_mean: float
    ms_std: float


@dataclass(frozen=True)
class BenchResult:
    rows: tuple
    aggregates: dict
    chosen_params: dict
    seed: int
    ratio: float
    rng_name: str = RNG_NAME
    tuned_on_separate_data: bool = field(default=False)


def stratified_split(dataset: Dataset, ratio: float, rng: np.random.Generator):
    """Split every class independently at `ratio` (round half up, floor 1).

    Both sides keep at least one instance per class; instances are chosen
    uniformly without replacement from the given generator, so the split
    is deterministic for a fixed generator state.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError("ratio must lie strictly between 0 and 1")
    train_groups, test_groups = [], []
    for label, group in zip(dataset.labels, dataset.groups):
        n = group.shape[0]
        if n < 2:
            raise ClassTooSmallError(
                f"class {label!r} has {n} instance(s); need at least 2 to split"
            )
        n_train = int(math.floor(n * ratio + 0.5))
        n_train = min(max(n_train, 1), n - 1)
        perm = rng.permutation(n)
        train_idx = np.sort(perm[:n_train])
        test_idx = np.sort(perm[n_train:])
        train_groups.append(group[train_idx].copy())
        test_groups.append(group[test_idx].copy())
    return (
        Dataset(labels=dataset.labels, groups=tuple(train_groups)),
        Dataset(labels=dataset.labels, groups=tuple(test_groups)),
    )


def mean_recall(predicted, truth, labels) -> float:
    """Per-class accuracy averaged over classes.

    Every label in `labels` must occur in `truth`; unweighted averaging
    makes the metric insensitive to class imbalance.
    """
    if len(predicted) != len(truth):
        raise LengthMismatchError(
            f"{len(predicted)} predictions vs {len(truth)} ground-truth labels"
        )
    totals = {label: 0 for label in labels}
    correct = {label: 0 for label in labels}
    for pred, true in zip(predicted, truth):
        if true not in totals:
            raise MissingClassError(f"ground-truth label {true!r} is not a known class")
        totals[true] += 1
        if pred == true:
            correct[true] += 1
    recalls = []
    for label in labels:
        if totals[label] == 0:
            raise MissingClassError(f"class {label!r} absent from ground truth")
        recalls.append(correct[label] / totals[label])
    return float(np.mean(recalls))


def resolve_cutoff(policy, train_ds: Dataset, hart_max_cutoff: int) -> int:
    if policy == "fixed":
        return fixed_cutoff(train_ds.total, train_ds.n_classes)
    if policy == "hart":
        return select_hart_cutoffs(train_ds, hart_max_cutoff).median
    return int(policy)


def _param_combos(name: str, grid: ParamGrid):
    if name == "pnn":
        return [{"sigma": s} for s in grid.sigmas]
    if name == "reduced-pnn":
        return [
            {"sigma": s, "centroids": m}
            for s in grid.sigmas
            for m in grid.centroid_counts
        ]
    if name == "knn":
        return [{"k": k} for k in grid.ks]
    if name in ("fejer", "centroid"):
        return [{}]
    raise ValueError(f"unknown classifier {name!r}")


def _build(name: str, train_ds: Dataset, params: dict, grid: ParamGrid, seed: int):
    if name == "fejer":
        return FejerPnn.train(
            train_ds, resolve_cutoff(grid.cutoff, train_ds, grid.hart_max_cutoff)
        )
    if name == "pnn":
        return GaussianPnn.train(train_ds, params["sigma"])
    if name == "reduced-pnn":
        return ReducedPnn.train(train_ds, params["centroids"], params["sigma"], seed)
    if name == "knn":
        return KnnClassifier.train(train_ds, params["k"])
    if name == "centroid":
        return NearestCentroid.train(train_ds)
    raise ValueError(f"unknown classifier {name!r}")


def _test_rows(test_ds: Dataset):
    queries, truth = [], []
    for label, group in zip(test_ds.labels, test_ds.groups):
        for row in group:
            queries.append(row)
            truth.append(label)
    return queries, truth


def predict_timed(model, queries):
    """Labels plus mean per-query latency (ms); one warm-up pass first.

    Only the predict call itself sits between the clock reads; run on a
    single execution context so latencies stay meaningful.
    """
    for q in queries:
        model.predict(q)
    labels = []
    total = 0.0
    for q in queries:
        t0 = time.perf_counter()
        pred = model.predict(q)
        total += time.perf_counter() - t0
        labels.append(pred.label)
    return labels, 1000.0 * total / len(queries)


def _tune(name, combos, tuning_ds, cfg: SplitConfig, grid: ParamGrid) -> dict:
    """Pick the combo with the best mean recall over splits of the tuning set."""
    best_combo, best_recall = None, -1.0
    for combo in combos:
        recalls = []
        for i in range(cfg.n_splits):
            rng = stream_rng(cfg.seed, i)
            train_ds, test_ds = stratified_split(tuning_ds, cfg.ratio, rng)
            model_seed = int(rng.integers(1 << 63))
            model = _build(name, train_ds, combo, grid, model_seed)
            queries, truth = _test_rows(test_ds)
            preds = [model.predict(q).label for q in queries]
            recalls.append(mean_recall(preds, truth, tuning_ds.labels))
        score = float(np.mean(recalls))
        if score > best_recall:
            best_combo, best_recall = combo, score
    return best_combo


def run_benchmark(
    dataset: Dataset,
    cfg: SplitConfig,
    grid: ParamGrid | None = None,
    classifiers=CLASSIFIER_NAMES,
    tuning_ds: Dataset | None = None,
) -> BenchResult:
    """Evaluate the selected classifiers under the split protocol.

    Grid parameters with more than one candidate are resolved once on
    `tuning_ds` (same protocol, best mean recall) before any evaluation
    split runs; tuning on the evaluation data is refused. Recall values
    are deterministic given the seed; timings are not.
    """
    grid = grid or ParamGrid()
    names = list(classifiers)
    for name in names:
        if name not in CLASSIFIER_NAMES:
            raise ValueError(f"unknown classifier {name!r}")
    chosen = {}
    tuned = False
    for name in names:
        combos = _param_combos(name, grid)
        if len(combos) == 1:
            chosen[name] = combos[0]
        else:
            if tuning_ds is None:
                raise MissingTuningSetError(
                    f"classifier {name!r} has {len(combos)} parameter candidates; "
                    "provide a separate tuning dataset"
                )
            chosen[name] = _tune(name, combos, tuning_ds, cfg, grid)
            tuned = True

    rows = []
    for i in range(cfg.n_splits):
        rng = stream_rng(cfg.seed, i)
        train_ds, test_ds = stratified_split(dataset, cfg.ratio, rng)
        model_seed = int(rng.integers(1 << 63))
        queries, truth = _test_rows(test_ds)
        for name in names:
            model = _build(name, train_ds, chosen[name], grid, model_seed)
            preds, ms = predict_timed(model, queries)
            rows.append(
                SplitResult(
                    classifier=name,
                    split=i,
                    recall=mean_recall(preds, truth, dataset.labels),
                    mean_predict_ms=ms,
                )
            )

    aggregates = {}
    for name in names:
        recs = np.array([r.recall for r in rows if r.classifier == name])
        times = np.array([r.mean_predict_ms for r in rows if r.classifier == name])
        aggregates[name] = Aggregate(
            recall_mean=float(recs.mean()),
            recall_std=float(recs.std()),
            ms_mean=float(times.mean()),
            ms_std=float(times.std()),
        )
    return BenchResult(
        rows=tuple(rows),
        aggregates=aggregates,
        chosen_params=chosen,
        seed=cfg.seed,
        ratio=cfg.ratio,
        tuned_on_separate_data=tuned,
    )


def write_results_csv(result: BenchResult, path) -> None:
    """Per-split rows plus an aggregate block in `mean±std` form.

    Recall values use shortest round-trip formatting, so identical seeds
    reproduce the recall columns byte for byte.
    """
    lines = [
        f"# seed={result.seed} rng={result.rng_name} ratio={result.ratio!r}",
        "classifier,split,recall,mean_predict_ms",
    ]
    for row in result.rows:
        lines.append(
            f"{row.classifier},{row.split},{row.recall!r},{row.mean_predict_ms:.6f}"
        )
    for name, agg in result.aggregates.items():
        lines.append(
            f"{name},AGG,{agg.recall_mean!r}±{agg.recall_std!r},"
            f"{agg.ms_mean:.6f}±{agg.ms_std:.6f}"
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def format_table(result: BenchResult) -> str:
    """Human-readable summary: one row per classifier, mean±std columns."""
    header = f"{'classifier':<14} {'mean recall':>22} {'mean time (ms)':>22}"
    rule = "-" * len(header)
    out = [header, rule]
    for name, agg in result.aggregates.items():
        recall = f"{100 * agg.recall_mean:.2f}±{100 * agg.recall_std:.2f} %"
        ms = f"{agg.ms_mean:.3f}±{agg.ms_std:.3f}"
        out.append(f"{name:<14} {recall:>22} {ms:>22}")
    return "\n".join(out)
