"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled module is used when it was built and ``NODALSYM_PURE`` is not
set in the environment.  ``BACKEND`` names the active implementation.
"""
import os

from . import _pykernels as python

compiled = None
if not os.environ.get("NODALSYM_PURE"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

poly_mul = _impl.poly_mul
int_rank = _impl.int_rank
int_det = _impl.int_det

__all__ = ["BACKEND", "compiled", "python", "poly_mul", "int_rank", "int_det"]
