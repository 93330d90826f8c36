"""Hot loops behind the word algorithms.

Two interchangeable backends implement the same functions: numba-compiled
loops (``_numba``) and a numpy/Python reference (``_numpy``).  The numba
backend is used when numba imports, unless the environment variable
``STURMLAB_KERNELS=numpy`` is set before this module is first imported.

Functions
---------
z_function(codes) -> int64[n]
    ``z[k]`` = longest common prefix of ``codes`` and ``codes[k:]``.
window_extrema(indicator, max_len) -> (lo, hi, arg_lo, arg_hi)
    Min/max window sums of a 0/1 array for every window length.
decode(codes, x, kind, final) -> (letters, starts, consumed, error)
    Inverse of L_x (kind 0) or R_x (kind 1); ``error`` is -1 on success.
search_forest(z, horizon, class_lengths, first_unknown, roots, budget, record)
    Depth-first enumeration of prefix factorizations, one subtree per root.
"""

import os

from . import _numpy

BACKEND = "numpy"
if os.environ.get("STURMLAB_KERNELS", "numba").lower() != "numpy":
    try:
        from . import _numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _numba = None
    else:
        BACKEND = "numba"

_impl = _numba if BACKEND == "numba" else _numpy

z_function = _impl.z_function
window_extrema = _impl.window_extrema
decode = _impl.decode
search_forest = _impl.search_forest


def backends():
    """Map backend name to module, for benchmarks and cross-checks."""
    found = {"numpy": _numpy}
    try:
        from . import _numba as compiled
    except ImportError:  # pragma: no cover
        return found
    found["numba"] = compiled
    return found
