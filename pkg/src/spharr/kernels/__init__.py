"""Kernel backend selection.

The compiled extension (spharr.kernels._speed) is preferred when it imported
cleanly; the pure-Python module is the fallback.  Both implement the same
functions with identical arithmetic, so results do not depend on the choice.
Set SPHARR_PURE_KERNELS=1 to force the fallback (used by the benchmark and
the cross-backend tests).
"""

import os

from . import pure

if os.environ.get("SPHARR_PURE_KERNELS", "0") not in ("", "0"):
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _speed as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "pure"

build_sphere_tables = _impl.build_sphere_tables
region_sign_vectors = _impl.region_sign_vectors

__all__ = ["BACKEND", "build_sphere_tables", "region_sign_vectors", "pure"]
