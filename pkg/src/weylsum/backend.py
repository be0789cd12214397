"""Kernel backend selection.

The hot inner loops (sieves, root scans, CRT combination) exist twice:
numba-compiled in `_kernels_numba` and pure numpy/Python in
`_kernels_numpy`.  Set WEYLSUM_BACKEND=numpy to force the fallback, or
WEYLSUM_BACKEND=numba to require the compiled path (ImportError if numba
is missing).  Default: numba when importable, else numpy.

`benchmarks/bench_backends.py` times the two side by side.
"""

import os

_requested = os.environ.get("WEYLSUM_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(
        f"WEYLSUM_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    from . import _kernels_numpy as kernels
elif _requested == "numba":
    from . import _kernels_numba as kernels
else:
    try:
        from . import _kernels_numba as kernels
    except ImportError:
        from . import _kernels_numpy as kernels

USING_NUMBA = kernels.BACKEND_NAME == "numba"
