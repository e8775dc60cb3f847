"""Selects the compiled kernel core, falling back to the pure-NumPy one.

The environment variable FEJERPNN_BACKEND forces a choice: "compiled"
fails loudly when the extension is missing, "python" skips it, and
"auto" (the default) prefers the extension when it imports.
"""

import os

from . import _kernels_py

_requested = os.environ.get("FEJERPNN_BACKEND", "auto").strip().lower() or "auto"

if _requested in ("auto", "compiled"):
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "FEJERPNN_BACKEND=compiled, but the fejerpnn._ckernels "
                "extension is not built"
            ) from None
        _impl = _kernels_py
        BACKEND = "python"
elif _requested == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    raise ValueError(f"unknown FEJERPNN_BACKEND value: {_requested!r}")

fejer_log_scores = _impl.fejer_log_scores
gaussian_log_scores = _impl.gaussian_log_scores
sq_dists = _impl.sq_dists
