"""Kernel backend selection.

``KNEADKIT_BACKEND=numpy`` forces the vectorised numpy kernels; the default
is the numba-compiled kernels when numba imports cleanly.
"""
import os

_requested = os.environ.get("KNEADKIT_BACKEND", "numba").strip().lower()

if _requested == "numba":
    try:
        from . import _kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:  # numba missing or broken
        from . import _kernels_numpy as _impl

        BACKEND = "numpy"
elif _requested == "numpy":
    from . import _kernels_numpy as _impl

    BACKEND = "numpy"
else:
    raise ImportError(f"unknown KNEADKIT_BACKEND {_requested!r} (expected numba or numpy)")

shift_witness = _impl.shift_witness
dominance_witness = _impl.dominance_witness
charpoly_mod = _impl.charpoly_mod
aberth = _impl.aberth
cw_radius = _impl.cw_radius
