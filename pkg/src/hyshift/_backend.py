"""Kernel backend selection.

HYSHIFT_BACKEND=numpy forces the pure-numpy kernels; HYSHIFT_BACKEND=numba
forces the jitted ones (raising if numba is unavailable).  Unset, numba is
used when importable.  HYSHIFT_THREADS caps numba's thread count.
"""
from __future__ import annotations

import os

_env = os.environ.get("HYSHIFT_BACKEND", "").strip().lower()

if _env == "numpy":
    HAS_NUMBA = False
else:
    try:
        import numba  # noqa: F401

        HAS_NUMBA = True
    except ImportError:
        if _env == "numba":
            raise
        HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"

if HAS_NUMBA:
    _threads = os.environ.get("HYSHIFT_THREADS", "").strip()
    if _threads:
        try:
            n = max(1, int(_threads))
        except ValueError:
            n = 0
        if n:
            import numba

            numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
