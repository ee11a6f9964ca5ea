"""Kernel backend selection: compiled extension when available, numpy otherwise.

The compiled backend is preferred when the extension built; the
SURFLINK_BACKEND environment variable ("python" or "compiled") or an
explicit QuadratureConfig.backend override the default.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels_cy
    HAVE_COMPILED = True
except ImportError:
    _kernels_cy = None
    HAVE_COMPILED = False

_BACKENDS = {"python": _kernels_py.panel}
if HAVE_COMPILED:
    _BACKENDS["compiled"] = _kernels_cy.panel


def default_backend() -> str:
    env = os.environ.get("SURFLINK_BACKEND")
    if env:
        if env not in _BACKENDS:
            raise ValueError(
                f"SURFLINK_BACKEND={env!r} not available; "
                f"choose from {sorted(_BACKENDS)}"
            )
        return env
    return "compiled" if HAVE_COMPILED else "python"


def available_backends() -> tuple:
    return tuple(sorted(_BACKENDS))


def get_panel_fn(backend: str | None = None):
    """Resolve a backend name (or None = default) to its panel function."""
    name = backend or default_backend()
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"backend {name!r} not available; choose from {sorted(_BACKENDS)}"
        ) from None
