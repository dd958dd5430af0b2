"""
Backend selection for the quadrature hot loops.

The compiled Cython kernels are preferred when the extension built; the
NumPy implementation is the always-available fallback. Both backends expose
``pump_tables`` and ``assemble`` with identical semantics, so any engine
result can be reproduced on either one.
"""

from __future__ import annotations

from . import _kernels_np

try:
    from . import _kernels_cy
except ImportError:  # extension not built
    _kernels_cy = None

_BACKENDS = {"numpy": _kernels_np}
if _kernels_cy is not None:
    _BACKENDS["compiled"] = _kernels_cy

DEFAULT_BACKEND = "compiled" if _kernels_cy is not None else "numpy"


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_kernels(name: str | None = None):
    """Return the kernel module for `name` (default: best available)."""
    if name is None or name == "auto":
        name = DEFAULT_BACKEND
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
        ) from None
