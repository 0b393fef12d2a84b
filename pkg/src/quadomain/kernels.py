"""Backend selection for the hot kernels.

The compiled extension ``quadomain._kernels`` is used when it imports;
otherwise, or when the environment variable ``QUADOMAIN_PURE_PYTHON`` is
set to a non-empty value other than ``0``, the pure-Python twin in
``quadomain._kernels_py`` is used.  Both expose the same functions.
"""
import os

from . import _kernels_py

_force_py = os.environ.get("QUADOMAIN_PURE_PYTHON", "") not in ("", "0")

try:
    if _force_py:
        raise ImportError("pure-python backend forced")
    from . import _kernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

first_crossing = _impl.first_crossing
rc = _impl.rc
rf = _impl.rf
rj = _impl.rj
rd = _impl.rd

BACKENDS = {"python": _kernels_py}
if BACKEND == "cython":
    BACKENDS["cython"] = _impl
else:
    try:
        from . import _kernels as _compiled
        BACKENDS["cython"] = _compiled
    except ImportError:
        pass
