"""Command-line interface: train, predict, update, bench, tune-cutoff, pca-fit."""

from __future__ import annotations

import argparse
import os
import sys

from .baselines import GaussianPnn, KnnClassifier, NearestCentroid, ReducedPnn
from .bench import (
    CLASSIFIER_NAMES,
    ParamGrid,
    SplitConfig,
    format_table,
    resolve_cutoff,
    run_benchmark,
    write_results_csv,
)
from .classifier import FejerPnn
from .density import fixed_cutoff, select_hart_cutoffs
from .errors import FejerPnnError, MissingTuningSetError
from .features import apply_pca, fit_pca, load_dataset, read_feature_rows, transform_dataset
from .modelio import load_model, load_pca, save_pca


def _cutoff_policy(text: str):
    if text in ("fixed", "hart"):
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"cutoff must be 'fixed', 'hart', or an integer, got {text!r}"
        ) from None
    if value < 1:
        raise argparse.ArgumentTypeError("explicit cutoff must be >= 1")
    return value


def _pca_dim(text: str):
    if text == "none":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--pca takes an integer or 'none', got {text!r}"
        ) from None
    if value < 1:
        raise argparse.ArgumentTypeError("--pca dimension must be >= 1")
    return value


def _float_list(text: str):
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad float list: {text!r}") from None


def _int_list(text: str):
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fejerpnn",
        description="Train, apply, and benchmark nonparametric classifiers "
        "on labeled feature CSV files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a classifier and save the model")
    p_train.add_argument("--features", required=True, help="training feature CSV")
    p_train.add_argument(
        "--classifier", choices=CLASSIFIER_NAMES, default="fejer"
    )
    p_train.add_argument(
        "--cutoff",
        type=_cutoff_policy,
        default="fixed",
        help="series cutoff policy: fixed | hart | <int> (default fixed)",
    )
    p_train.add_argument("--jmax", type=int, default=16, help="search bound for hart")
    p_train.add_argument("--sigma", type=float, default=0.1)
    p_train.add_argument("--k", type=int, default=1)
    p_train.add_argument("--centroids", type=int, default=1)
    p_train.add_argument("--pca", type=_pca_dim, default=None, metavar="INT|none")
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument(
        "--dc-inverse-count",
        action="store_true",
        help="scale the constant series weight by 1/R(c) instead of 1 "
        "(comparison mode; incremental updates assume the default)",
    )
    p_train.add_argument("--out", required=True, help="model output path")
    p_train.set_defaults(func=cmd_train)

    p_pred = sub.add_parser("predict", help="predict labels for a feature CSV")
    p_pred.add_argument("--model", required=True)
    p_pred.add_argument("--features", required=True)
    p_pred.add_argument("--out", required=True, help="output CSV path")
    p_pred.set_defaults(func=cmd_predict)

    p_upd = sub.add_parser(
        "update", help="fold new labeled instances into a series model"
    )
    p_upd.add_argument("--model", required=True)
    p_upd.add_argument("--features", required=True)
    p_upd.add_argument("--out", required=True, help="updated model path")
    p_upd.add_argument(
        "--allow-new-classes",
        action="store_true",
        help="create classes for unseen labels instead of failing",
    )
    p_upd.set_defaults(func=cmd_update)

    p_bench = sub.add_parser("bench", help="run the split benchmark protocol")
    p_bench.add_argument("--features", required=True)
    p_bench.add_argument("--tuning-features", default=None)
    p_bench.add_argument("--ratio", type=float, required=True)
    p_bench.add_argument("--splits", type=int, required=True)
    p_bench.add_argument("--seed", type=int, required=True)
    p_bench.add_argument(
        "--classifiers",
        required=True,
        help="comma-separated subset of: " + ",".join(CLASSIFIER_NAMES),
    )
    p_bench.add_argument("--out", required=True, help="results CSV path")
    p_bench.add_argument("--sigma-grid", type=_float_list, default=None)
    p_bench.add_argument("--k-grid", type=_int_list, default=None)
    p_bench.add_argument("--centroid-grid", type=_int_list, default=None)
    p_bench.add_argument("--cutoff", type=_cutoff_policy, default="fixed")
    p_bench.add_argument("--jmax", type=int, default=16)
    p_bench.set_defaults(func=cmd_bench)

    p_tune = sub.add_parser("tune-cutoff", help="print the series cutoff for a dataset")
    p_tune.add_argument("--features", required=True)
    p_tune.add_argument("--policy", choices=("fixed", "hart"), required=True)
    p_tune.add_argument("--jmax", type=int, default=16)
    p_tune.set_defaults(func=cmd_tune_cutoff)

    p_pca = sub.add_parser("pca-fit", help="fit a PCA transform and save it")
    p_pca.add_argument("--features", required=True)
    p_pca.add_argument("--dim", type=int, required=True)
    p_pca.add_argument("--out", required=True)
    p_pca.set_defaults(func=cmd_pca_fit)

    return parser


def _sidecar_path(model_path: str) -> str:
    return model_path + ".pca"


def cmd_train(args) -> int:
    dataset = load_dataset(args.features)
    if args.pca is not None:
        transform = fit_pca(dataset, args.pca)
        dataset = transform_dataset(transform, dataset)
        save_pca(transform, _sidecar_path(args.out))
        print(
            f"pca transform ({transform.target_dim} components) saved to "
            f"{_sidecar_path(args.out)}",
            file=sys.stderr,
        )
    name = args.classifier
    if name == "fejer":
        cutoff = resolve_cutoff(args.cutoff, dataset, args.jmax)
        model = FejerPnn.train(dataset, cutoff, dc_inverse_count=args.dc_inverse_count)
    elif name == "pnn":
        model = GaussianPnn.train(dataset, args.sigma)
    elif name == "reduced-pnn":
        model = ReducedPnn.train(dataset, args.centroids, args.sigma, args.seed)
    elif name == "knn":
        model = KnnClassifier.train(dataset, args.k)
    else:
        model = NearestCentroid.train(dataset)
    model.save(args.out)
    print(f"trained {name} on {dataset.total} instances, saved to {args.out}")
    return 0


def cmd_predict(args) -> int:
    model = load_model(args.model)
    labels, matrix = read_feature_rows(args.features, normalize=True)
    sidecar = _sidecar_path(args.model)
    if os.path.exists(sidecar):
        transform = load_pca(sidecar)
        matrix = [apply_pca(transform, row) for row in matrix]
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for i, (label, row) in enumerate(zip(labels, matrix)):
            pred = model.predict(row)
            fh.write(f"{i},{label},{pred.label}\n")
    print(f"wrote {len(labels)} predictions to {args.out}")
    return 0


def cmd_update(args) -> int:
    model = load_model(args.model)
    if not isinstance(model, FejerPnn):
        print("error: only series (fejer) models support incremental updates",
              file=sys.stderr)
        return 1
    labels, matrix = read_feature_rows(args.features, normalize=True)
    sidecar = _sidecar_path(args.model)
    if os.path.exists(sidecar):
        transform = load_pca(sidecar)
        matrix = [apply_pca(transform, row) for row in matrix]
        save_pca(transform, _sidecar_path(args.out))
    for label, row in zip(labels, matrix):
        model.update(row, label, create_missing=args.allow_new_classes)
    model.save(args.out)
    print(f"updated model with {len(labels)} instances, saved to {args.out}")
    return 0


def cmd_bench(args) -> int:
    names = tuple(tok for tok in args.classifiers.split(",") if tok)
    bad = [n for n in names if n not in CLASSIFIER_NAMES]
    if bad or not names:
        print(
            f"usage error: --classifiers takes a comma-separated subset of "
            f"{','.join(CLASSIFIER_NAMES)}, got {args.classifiers!r}",
            file=sys.stderr,
        )
        return 2
    dataset = load_dataset(args.features)
    tuning = load_dataset(args.tuning_features) if args.tuning_features else None
    defaults = ParamGrid()
    grid = ParamGrid(
        sigmas=args.sigma_grid or defaults.sigmas,
        ks=args.k_grid or defaults.ks,
        centroid_counts=args.centroid_grid or defaults.centroid_counts,
        cutoff=args.cutoff,
        hart_max_cutoff=args.jmax,
    )
    cfg = SplitConfig(ratio=args.ratio, n_splits=args.splits, seed=args.seed)
    result = run_benchmark(dataset, cfg, grid, names, tuning)
    write_results_csv(result, args.out)
    print(format_table(result))
    print(f"per-split results written to {args.out}")
    return 0


def cmd_tune_cutoff(args) -> int:
    dataset = load_dataset(args.features)
    if args.policy == "fixed":
        print(fixed_cutoff(dataset.total, dataset.n_classes))
    else:
        print(select_hart_cutoffs(dataset, args.jmax).median)
    return 0


def cmd_pca_fit(args) -> int:
    dataset = load_dataset(args.features)
    transform = fit_pca(dataset, args.dim)
    save_pca(transform, args.out)
    print(f"pca transform ({transform.target_dim} components) saved to {args.out}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MissingTuningSetError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (FejerPnnError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())
