"""Pure-NumPy implementations of the hot scoring kernels.

Drop-in fallback for the compiled extension in `_ckernels`: same
signatures and the same arithmetic up to floating-point reduction order.
"""

import numpy as np

from .kernels import trig_table


def fejer_log_scores(w_cos, w_sin, log_counts, x, floor):
    # w_cos: (C, D, J+1), column 0 holding the constant term; w_sin: (C, D, J).
    # One basis recursion per dimension, shared across classes.
    cos_t, sin_t = trig_table(x, w_cos.shape[2] - 1)
    cos_t[:, 0] = 0.5  # folds the halved constant term into the dot product
    dens = np.einsum("cdj,dj->cd", w_cos, cos_t)
    dens += np.einsum("cdj,dj->cd", w_sin, sin_t[:, 1:])
    return log_counts + np.log(np.maximum(dens, floor)).sum(axis=1)


def gaussian_log_scores(train, starts, x, neg_inv_two_sigma_sq):
    # Per-class log-sum-exp of the scaled negative squared distances; the
    # max shift keeps large-D kernels from underflowing to zero.
    z = ((train - x) ** 2).sum(axis=1) * neg_inv_two_sigma_sq
    n_classes = starts.shape[0] - 1
    out = np.empty(n_classes)
    for c in range(n_classes):
        seg = z[starts[c] : starts[c + 1]]
        m = seg.max()
        out[c] = m + np.log(np.exp(seg - m).sum())
    return out


def sq_dists(train, x):
    return ((train - x) ** 2).sum(axis=1)
