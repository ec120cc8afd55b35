"""Kernel backend selection.

The compiled Cython kernel is preferred when present; the pure-Python
(numpy) fallback is arithmetically identical, just slower.  Override with
SUPERSMOOTH_KERNEL=compiled|python (default: auto).
"""

from __future__ import annotations

import os

from . import py_fallback
from .shared import free_columns, modp_matmul, nullspace_residues

__all__ = [
    "BACKEND",
    "ref_forward",
    "available_backends",
    "get_backend",
    "free_columns",
    "modp_matmul",
    "nullspace_residues",
]

try:
    from . import _modp as _compiled
except ImportError:
    _compiled = None


def available_backends() -> dict[str, object]:
    out = {"python": py_fallback}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def get_backend(name: str):
    """Fetch a specific backend module (for the benchmark and parity tests)."""
    backends = available_backends()
    if name not in backends:
        raise KeyError(f"kernel backend {name!r} not available")
    return backends[name]


_requested = os.environ.get("SUPERSMOOTH_KERNEL", "auto").strip().lower()
if _requested in ("", "auto"):
    _active = _compiled if _compiled is not None else py_fallback
elif _requested in ("compiled", "c", "cython"):
    if _compiled is None:
        raise ImportError("SUPERSMOOTH_KERNEL=compiled, but the extension is not built")
    _active = _compiled
elif _requested in ("python", "py", "fallback"):
    _active = py_fallback
else:
    raise ImportError(f"unknown SUPERSMOOTH_KERNEL value {_requested!r}")

ref_forward = _active.ref_forward
BACKEND = "compiled" if _active is _compiled else "python"
