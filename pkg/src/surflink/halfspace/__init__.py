"""Dipole-over-lossy-half-space field solver.

Hot quadrature kernels run on a compiled (Cython) backend when the
extension is available, with an equivalent pure-numpy fallback; see
:mod:`surflink.halfspace.backend`.
"""

from .backend import HAVE_COMPILED, available_backends, default_backend
from .solver import (
    DipoleSource,
    FieldMap,
    FieldSample,
    HalfSpaceProblem,
    QuadratureConfig,
    SommerfeldConvergenceError,
    field_at,
    field_map,
    free_space_ez,
    identity_potential_integral,
    reflection_coefficient_tm,
)

__all__ = [
    "HAVE_COMPILED",
    "available_backends",
    "default_backend",
    "DipoleSource",
    "FieldMap",
    "FieldSample",
    "HalfSpaceProblem",
    "QuadratureConfig",
    "SommerfeldConvergenceError",
    "field_at",
    "field_map",
    "free_space_ez",
    "identity_potential_integral",
    "reflection_coefficient_tm",
]
