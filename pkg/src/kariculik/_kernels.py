"""Kernel selection: use the compiled extension when importable, else the
pure-Python fallback.  Set KARICULIK_PURE=1 to force the fallback."""

import os

if os.environ.get("KARICULIK_PURE"):
    from . import _gridpy as _impl
else:
    try:
        from . import _gridcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _gridpy as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION

mismatch_scan = _impl.mismatch_scan
count_squares = _impl.count_squares
valid_squares = _impl.valid_squares
valid_rows = _impl.valid_rows
cyclic_rows = _impl.cyclic_rows
find_matches = _impl.find_matches
