"""Hot scans behind the recognition and gem checks.

The compiled extension is used when it was built; otherwise the pure-Python
module is used. Set ``ARBOREAL_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("ARBOREAL_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

u2_violation = _impl.u2_violation
u3_violation = _impl.u3_violation
find_gem = _impl.find_gem
find_w5 = _impl.find_w5

__all__ = ["BACKEND", "u2_violation", "u3_violation", "find_gem", "find_w5"]
