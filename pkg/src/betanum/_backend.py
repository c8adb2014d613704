"""Select the compiled kernels when available, else the pure-Python ones.

Set ``BETANUM_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels

if os.environ.get("BETANUM_PURE", "") not in ("", "0"):
    _impl = _pykernels
    NAME = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        NAME = "cython"
    except ImportError:
        _impl = _pykernels
        NAME = "python"

normalize = _impl.normalize
window_extrema = _impl.window_extrema
lplus_scan = _impl.lplus_scan
