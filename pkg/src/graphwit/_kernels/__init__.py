"""Kernel selection: compiled Cython extension when available, NumPy otherwise.

Set GRAPHWIT_NO_EXT=1 to force the pure-Python path (used by the benchmark).
"""

import os

if os.environ.get("GRAPHWIT_NO_EXT") == "1":
    from .fallback import HAVE_EXT, pivot_update, pt_sweep_min, wht_inplace
else:
    try:
        from ._fast import pivot_update, pt_sweep_min, wht_inplace

        HAVE_EXT = True
    except ImportError:
        from .fallback import HAVE_EXT, pivot_update, pt_sweep_min, wht_inplace

__all__ = ["HAVE_EXT", "wht_inplace", "pt_sweep_min", "pivot_update"]
