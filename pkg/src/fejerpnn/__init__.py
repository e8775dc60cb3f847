"""Nonparametric classification on bounded feature vectors.

The package centers on a probabilistic classifier whose per-class,
per-dimension densities are truncated trigonometric series with
triangular (non-negative kernel) weights: training is a single pass over
the data, prediction cost is independent of the training-set size, and
instances can be folded in incrementally. Classical comparison methods
(Gaussian-kernel PNN, its centroid-reduced variant, k-NN, nearest
centroid) and a repeated-split benchmark harness round out the toolkit.

The hot scoring kernels run on a compiled extension when it is built,
with a pure-NumPy fallback; see `fejerpnn.BACKEND`.
"""

from ._backend import BACKEND
from .baselines import GaussianPnn, KnnClassifier, NearestCentroid, ReducedPnn, kmedians
from .bench import (
    CLASSIFIER_NAMES,
    Aggregate,
    BenchResult,
    ParamGrid,
    SplitConfig,
    SplitResult,
    format_table,
    mean_recall,
    run_benchmark,
    stratified_split,
    write_results_csv,
)
from .classifier import DENSITY_FLOOR, FejerPnn, Prediction
from .density import (
    CutoffSelection,
    FourierCoefficients,
    density_canonical,
    density_noncanonical,
    fixed_cutoff,
    fourier_coeffs,
    hart_cutoff,
    median_cutoff,
    select_hart_cutoffs,
)
from .features import (
    Dataset,
    PcaTransform,
    apply_pca,
    fit_pca,
    l2_normalize,
    load_dataset,
    read_feature_rows,
    transform_dataset,
)
from .kernels import TrigBasisTable, dirichlet, fejer, gaussian_parzen, trig_basis
from .modelio import load_model, load_pca, save_pca

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CLASSIFIER_NAMES",
    "DENSITY_FLOOR",
    "Aggregate",
    "BenchResult",
    "CutoffSelection",
    "Dataset",
    "FejerPnn",
    "FourierCoefficients",
    "GaussianPnn",
    "KnnClassifier",
    "NearestCentroid",
    "ParamGrid",
    "PcaTransform",
    "Prediction",
    "ReducedPnn",
    "SplitConfig",
    "SplitResult",
    "TrigBasisTable",
    "apply_pca",
    "density_canonical",
    "density_noncanonical",
    "dirichlet",
    "fejer",
    "fit_pca",
    "fixed_cutoff",
    "format_table",
    "fourier_coeffs",
    "gaussian_parzen",
    "hart_cutoff",
    "kmedians",
    "l2_normalize",
    "load_dataset",
    "load_model",
    "load_pca",
    "mean_recall",
    "median_cutoff",
    "read_feature_rows",
    "run_benchmark",
    "save_pca",
    "select_hart_cutoffs",
    "stratified_split",
    "transform_dataset",
    "trig_basis",
    "write_results_csv",
]
