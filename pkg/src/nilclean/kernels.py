"""Kernel backend selection.

The compiled extension (`nilclean._speedups`) is preferred when built;
otherwise the numpy fallback (`nilclean._kernels_py`) is used. Set
NILCLEAN_BACKEND=python to force the fallback, NILCLEAN_BACKEND=c to
require the extension.
"""

import os

from . import _kernels_py

_FORCED = os.environ.get("NILCLEAN_BACKEND", "").strip().lower()

if _FORCED in ("python", "py"):
    _impl = _kernels_py
elif _FORCED == "c":
    from . import _speedups as _impl
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "c"

axiom_scan = _impl.axiom_scan
nil_indices = _impl.nil_indices
units_mask = _impl.units_mask
center_mask = _impl.center_mask
jacobson_mask = _impl.jacobson_mask


def available_backends():
    """Names of the importable backends ('python' is always present)."""
    names = ["python"]
    try:
        from . import _speedups  # noqa: F401
        names.append("c")
    except ImportError:
        pass
    return names


def get_backend(name: str):
    """Return the kernel module for an explicit backend name."""
    if name == "python":
        return _kernels_py
    if name == "c":
        from . import _speedups
        return _speedups
    raise ValueError(f"unknown backend {name!r}")
