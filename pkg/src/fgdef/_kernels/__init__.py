"""Kernel backend selection: compiled extension if available, else pure Python.

Set FGDEF_PURE=1 in the environment to force the pure-Python kernel.
"""

import os

from . import _pykernel

if os.environ.get("FGDEF_PURE"):
    impl = _pykernel
else:
    try:
        from . import _ckernel as impl  # type: ignore[no-redef]
    except ImportError:
        impl = _pykernel

BACKEND: str = impl.BACKEND

piece_len = impl.piece_len
has_piece = impl.has_piece
sphere_scan = impl.sphere_scan
sphere_words = impl.sphere_words


def available_backends():
    """The importable kernel modules, for benchmarks and cross-checks."""
    backends = [_pykernel]
    try:
        from . import _ckernel
        backends.append(_ckernel)
    except ImportError:
        pass
    return backends
