"""Pure-Python (numpy) quadrature kernels for the half-space solver.

Evaluates one Gauss-Legendre panel of a spectral integrand.  The compiled
twin in ``_kernels_cy`` implements the same contract; both are selected at
import time by :mod:`surflink.halfspace.backend`.

Kinds:
    0: (k/u_s)       * exp(-u_s*d1)                * J0(k*rho)
    1: (k^3/u_s)     * exp(-u_s*d1)                * J0(k*rho)
    2: (k^3/u_s) * R * exp(-u_s*d1)                * J0(k*rho)
    3: (k^3/u_s) * T * exp(-u_s*d1 - u_o*d2)       * J0(k*rho)

with u_i = sqrt(k^2 - eps_i*k0^2) on the principal branch,
R = (eps_o*u_s - eps_s*u_o)/(eps_o*u_s + eps_s*u_o) and
T = 2*eps_s*u_s/(eps_o*u_s + eps_s*u_o).
"""

from __future__ import annotations

import numpy as np
from scipy.special import j0

KIND_IDENTITY_POTENTIAL = 0
KIND_IDENTITY_EZ = 1
KIND_REFLECTED = 2
KIND_TRANSMITTED = 3


def panel(kind: int, a: float, b: float, rho: float, d1: float, d2: float,
          eps_s: complex, eps_o: complex, k0sq: float,
          nodes: np.ndarray, weights: np.ndarray) -> complex:
    """Gauss-Legendre estimate of one spectral panel over [a, b]."""
    half = 0.5 * (b - a)
    k = 0.5 * (a + b) + half * nodes
    ksq = k * k
    u_s = np.sqrt(ksq - eps_s * k0sq)
    if kind == KIND_IDENTITY_POTENTIAL:
        f = (k / u_s) * np.exp(-u_s * d1)
    elif kind == KIND_IDENTITY_EZ:
        f = (k * ksq / u_s) * np.exp(-u_s * d1)
    elif kind == KIND_REFLECTED:
        u_o = np.sqrt(ksq - eps_o * k0sq)
        refl = (eps_o * u_s - eps_s * u_o) / (eps_o * u_s + eps_s * u_o)
        f = (k * ksq / u_s) * refl * np.exp(-u_s * d1)
    elif kind == KIND_TRANSMITTED:
        u_o = np.sqrt(ksq - eps_o * k0sq)
        trans = 2.0 * eps_s * u_s / (eps_o * u_s + eps_s * u_o)
        f = (k * ksq / u_s) * trans * np.exp(-u_s * d1 - u_o * d2)
    else:
        raise ValueError(f"unknown kernel kind {kind}")
    return complex(half * np.sum(weights * f * j0(k * rho)))
