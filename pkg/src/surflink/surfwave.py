"""Closed-form surface-wave parameters at a lossy interface.

The two launch-budget numbers for a wave bound to a lossy/air interface are
the 1/e penetration depth into the lossy side,

    L_z = lambda0 / (4*pi*sqrt(eps'')),

and the 1/e propagation distance along the interface,

    L_r = lambda0 * eps'' / pi.

Both take the loss magnitude eps'' as an explicit argument; this module
never derives it silently from a conductivity.  The interface-pole
wavenumber k_rho = k0*sqrt(eps/(eps+1)) is provided as an independent
consistency check on L_r (they agree to O((eps'/eps'')^2) for
conduction-dominated media).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "SurfaceWaveParams",
    "ZenneckPole",
    "penetration_depth",
    "propagation_length",
    "surface_wave_params",
    "zenneck_wavenumber",
    "depth_at_level",
]


@dataclass(frozen=True)
class SurfaceWaveParams:
    """Closed-form surface-wave parameters for one (lambda0, eps'') pair."""

    L_z: float      # penetration depth into the lossy medium [m]
    L_r: float      # propagation distance along the interface [m]
    lambda0: float  # free-space wavelength [m]
    eps_im: float   # loss magnitude eps'' used


@dataclass(frozen=True)
class ZenneckPole:
    """Interface-pole wavenumber and derived decay lengths."""

    k_rho: complex        # radial wavenumber of the bound mode [1/m]
    L_r_pole: float       # 1/|Im k_rho|: decay length along the interface [m]
    kz_lossy: complex     # vertical wavenumber in the lossy medium [1/m]
    decay_depth: float    # 1/|Im kz_lossy|: field decay depth into the lossy side [m]


def penetration_depth(lambda0: float, eps_im: float) -> float:
    """1/e depth of the surface wave into the lossy medium [m]."""
    if not (lambda0 > 0.0):
        raise ValueError(f"lambda0 must be positive, got {lambda0}")
    if not (eps_im > 0.0):
        raise ValueError(f"eps_im must be positive, got {eps_im}")
    return lambda0 / (4.0 * math.pi * math.sqrt(eps_im))


def propagation_length(lambda0: float, eps_im: float) -> float:
    """1/e decay length of the surface wave along the interface [m]."""
    if not (lambda0 > 0.0):
        raise ValueError(f"lambda0 must be positive, got {lambda0}")
    if not (eps_im > 0.0):
        raise ValueError(f"eps_im must be positive, got {eps_im}")
    return lambda0 * eps_im / math.pi


def surface_wave_params(lambda0: float, eps_im: float) -> SurfaceWaveParams:
    """Bundle both closed-form parameters for one configuration."""
    return SurfaceWaveParams(
        L_z=penetration_depth(lambda0, eps_im),
        L_r=propagation_length(lambda0, eps_im),
        lambda0=lambda0,
        eps_im=eps_im,
    )


def zenneck_wavenumber(eps: complex, k0: float) -> ZenneckPole:
    """Bound-mode pole k_rho = k0*sqrt(eps/(eps+1)) of a lossy half-space.

    ``eps`` is the complex relative permittivity of the lossy side under the
    exp(+j*omega*t) convention (Im(eps) <= 0).  The branch is fixed so that
    Im(k_rho) <= 0, i.e. exp(-j*k_rho*rho) decays along propagation.  Also
    returns the vertical wavenumber in the lossy medium and the two derived
    1/e decay lengths.
    """
    if not (k0 > 0.0):
        raise ValueError(f"k0 must be positive, got {k0}")
    eps = complex(eps)
    if eps == -1.0:
        raise ValueError("eps = -1 is a singular interface configuration")
    if eps.imag > 0.0:
        raise ValueError(
            "Im(eps) must be <= 0 under the exp(+j*omega*t) convention"
        )

    k_rho = k0 * cmath.sqrt(eps / (eps + 1.0))
    if k_rho.imag > 0.0:
        k_rho = -k_rho

    # Vertical wavenumber on the lossy side; branch with decay away from
    # the interface (Im <= 0 for exp(-j*kz*|z|)).
    kz = cmath.sqrt(eps * k0 * k0 - k_rho * k_rho)
    if kz.imag > 0.0:
        kz = -kz

    L_r_pole = 1.0 / abs(k_rho.imag) if k_rho.imag != 0.0 else math.inf
    decay_depth = 1.0 / abs(kz.imag) if kz.imag != 0.0 else math.inf
    return ZenneckPole(k_rho=k_rho, L_r_pole=L_r_pole, kz_lossy=kz,
                       decay_depth=decay_depth)


_LN10_OVER_20 = math.log(10.0) / 20.0


def depth_at_level(level_db: float, L_z: float) -> float:
    """Depth [m] at which the field amplitude falls to ``level_db``.

    ``level_db`` is a non-positive amplitude level (20*log10 convention)
    relative to the interface; with exponential decay exp(-z/L_z) the depth
    is -level_db * ln(10)/20 * L_z.
    """
    if level_db > 0.0:
        raise ValueError(f"level_db must be <= 0, got {level_db}")
    if not (L_z > 0.0):
        raise ValueError(f"L_z must be positive, got {L_z}")
    return -level_db * _LN10_OVER_20 * L_z
