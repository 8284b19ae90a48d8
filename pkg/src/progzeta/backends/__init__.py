"""Numeric kernel backends.

Two interchangeable implementations of the hot summation kernels exist:

* ``numba`` -- JIT-compiled scalar loops (default when numba imports);
* ``numpy`` -- pure-numpy vectorized fallback.

Set ``PROGZETA_BACKEND=numpy`` (or ``numba``) to pin one; otherwise numba is
used when available. Both expose the same functions:

``pow_inv(x, sigma, t)``
    (re, im) of x**(-sigma-it) with an extended-precision phase.
``weighted_prefix_sums(b, m, sigma, t, n0, ends)``
    compensated partial sums of the weighted progression series, snapshotted
    at each outer index in ``ends``.
``weighted_chunk_sums(b, m, sigma, t, n0, n1, chunk)``
    independent per-chunk sums over fixed-size chunks of outer indices.

Summation semantics are identical (outer index major, inner offset minor);
the numpy fallback groups terms into blocks internally, which perturbs the
result only at the compensated-summation noise level.
"""

from __future__ import annotations

import os
import warnings
from types import ModuleType

__all__ = ["get_backend", "active_backend_name", "available_backends", "ENV_VAR"]

ENV_VAR = "PROGZETA_BACKEND"

_cache: dict[str, ModuleType] = {}


def _load(name: str) -> ModuleType:
    if name in _cache:
        return _cache[name]
    if name == "numpy":
        from . import _numpy as mod
    elif name == "numba":
        from . import _numba as mod
    else:
        raise ValueError(f"unknown backend {name!r} (choose 'numba' or 'numpy')")
    _cache[name] = mod
    return mod


def available_backends() -> list[str]:
    names = []
    try:
        import numba  # noqa: F401

        names.append("numba")
    except ImportError:
        pass
    names.append("numpy")
    return names


def active_backend_name() -> str:
    env = os.environ.get(ENV_VAR, "").strip().lower()
    if env in ("numba", "numpy"):
        return env
    if env:
        raise ValueError(f"{ENV_VAR} must be 'numba' or 'numpy', got {env!r}")
    try:
        import numba  # noqa: F401

        return "numba"
    except ImportError:
        warnings.warn("numba is not importable; falling back to the numpy backend")
        return "numpy"


def get_backend(name: str | None = None) -> ModuleType:
    """The kernel module for ``name``, or for the active default."""
    return _load(name if name is not None else active_backend_name())
