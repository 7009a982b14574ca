"""Select the compiled elimination kernel when available.

The compiled path works in int64 and raises OverflowError on overflow, in
which case we retry with the bigint reference implementation.
"""
from . import _kernel_py

try:  # pragma: no cover - depends on build
    from . import _kernel as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def rref_int(rows, ncols):
    if _compiled is not None:
        try:
            return _compiled.rref_int(rows, ncols)
        except OverflowError:
            pass
    return _kernel_py.rref_int(rows, ncols)
