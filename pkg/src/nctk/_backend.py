"""Backend selection for the polish kernel.

The smoothed phases of the solver are SVD-bound and always run through
numpy.  The polish loop exists twice: a batched numpy implementation and a
compiled single-row kernel.  NCTK_BACKEND forces the choice ("python" or
"ext"); by default the compiled kernel is used when importable.
"""
from __future__ import annotations

import os

import numpy as np

from . import _ascent_py

try:
    from . import _ascent as _ascent_ext
except ImportError:
    _ascent_ext = None

__all__ = ["available_backends", "get_backend", "polish_dispatch"]


def _polish_python(c_stack, delta, x, v, alpha, n_iters, power_iters, grow, shrink):
    return _ascent_py.polish_chunk(c_stack, delta, x, v, alpha, n_iters, power_iters, grow, shrink)


def _polish_ext(c_stack, delta, x, v, alpha, n_iters, power_iters, grow, shrink):
    c_stack = np.ascontiguousarray(c_stack)
    x = x.copy()
    v = v.copy()
    alpha = alpha.copy()
    accepts = 0
    iters = 0
    for row in range(x.shape[0]):
        xr = np.ascontiguousarray(x[row])
        vr = np.ascontiguousarray(v[row])
        a_out, acc, it = _ascent_ext.polish_one(
            c_stack, delta, xr, vr, float(alpha[row]), n_iters, power_iters, grow, shrink)
        x[row] = xr
        v[row] = vr
        alpha[row] = a_out
        accepts += acc
        iters = max(iters, it)
    return x, v, alpha, accepts, iters


def available_backends() -> dict:
    out = {"python": _polish_python}
    if _ascent_ext is not None:
        out["ext"] = _polish_ext
    return out


def get_backend(name: str | None = None) -> tuple[str, callable]:
    """Resolve a backend name to its polish function."""
    backends = available_backends()
    if name is None:
        name = os.environ.get("NCTK_BACKEND") or None
    if name is None:
        name = "ext" if "ext" in backends else "python"
    if name not in backends:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(backends)}")
    return name, backends[name]


def polish_dispatch(backend_name, c_stack, delta, x, v, alpha, n_iters, power_iters, grow, shrink):
    _, fn = get_backend(backend_name)
    return fn(c_stack, delta, x, v, alpha, n_iters, power_iters, grow, shrink)
