"""Backend selection for the hot kernels.

The compiled extension is used when it was built and importable; setting
``MHESSIAN_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
import os

from mhessian import _pykernels

if os.environ.get("MHESSIAN_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from mhessian import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND
poly_mul = _impl.poly_mul
rank_profile_mod_p = _impl.rank_profile_mod_p
det_mod_p = _impl.det_mod_p
det_bareiss_int = _impl.det_bareiss_int
det_integer = _impl.det_integer
modular_primes = _pykernels.modular_primes

__all__ = [
    "BACKEND",
    "poly_mul",
    "rank_profile_mod_p",
    "det_mod_p",
    "det_bareiss_int",
    "det_integer",
    "modular_primes",
]
