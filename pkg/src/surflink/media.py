"""Media descriptions, complex permittivity, and conductor skin depth.

All quantities are SI.  The global time convention is exp(+j*omega*t):
lossy media therefore carry a *negative* imaginary part in their complex
relative permittivity, while the loss magnitude eps'' = sigma/(omega*eps0)
is exposed as a separate non-negative scalar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "MU_0",
    "EPS_0",
    "C_0",
    "LosslessMediumError",
    "PhysicalConstants",
    "Medium",
    "RfContext",
    "AIR",
    "SEAWATER",
    "complex_permittivity",
    "loss_factor",
    "skin_depth",
    "eq1_constant",
    "salinity_to_conductivity",
]

# CODATA 2018
MU_0 = 1.25663706212e-6   # vacuum permeability [H/m]
EPS_0 = 8.8541878128e-12  # vacuum permittivity [F/m]
C_0 = 299792458.0         # speed of light [m/s]


class LosslessMediumError(ValueError):
    """Raised where a lossless medium has no finite skin depth."""


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of the vacuum constants used throughout the package."""

    mu0: float = MU_0
    eps0: float = EPS_0
    c: float = C_0


@dataclass(frozen=True)
class Medium:
    """Homogeneous, non-magnetic material.

    eps_r : real relative permittivity (>= 1 for physical media)
    sigma : conductivity [S/m] (>= 0)
    name  : descriptive label
    """

    eps_r: float
    sigma: float = 0.0
    name: str = ""

    def __post_init__(self):
        if self.eps_r < 1.0:
            raise ValueError(f"eps_r must be >= 1, got {self.eps_r}")
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")


#: Default upper half-space.
AIR = Medium(eps_r=1.0, sigma=0.0, name="air")

#: Default lower half-space.  The conductivity is chosen so that the
#: frequency-independent skin-depth constant delta*sqrt(f) evaluates to
#: 270 Hz^(1/2) m; override wherever a different water is needed.
SEAWATER = Medium(eps_r=81.0, sigma=3.475, name="seawater")


@dataclass(frozen=True)
class RfContext:
    """Operating frequency plus derived free-space quantities."""

    freq: float  # [Hz]

    def __post_init__(self):
        if not (self.freq > 0.0):
            raise ValueError(f"frequency must be positive, got {self.freq}")

    @property
    def omega(self) -> float:
        """Angular frequency [rad/s]."""
        return 2.0 * math.pi * self.freq

    @property
    def lambda0(self) -> float:
        """Free-space wavelength [m]."""
        return C_0 / self.freq

    @property
    def k0(self) -> float:
        """Free-space wavenumber [1/m]."""
        return 2.0 * math.pi / self.lambda0


def loss_factor(medium: Medium, ctx: RfContext) -> float:
    """Conduction loss magnitude eps'' = sigma/(omega*eps0), >= 0."""
    if not (ctx.freq > 0.0):
        raise ValueError("frequency must be positive")
    return medium.sigma / (ctx.omega * EPS_0)


def complex_permittivity(medium: Medium, ctx: RfContext) -> complex:
    """Complex relative permittivity eps = eps' - j*eps''.

    Under the exp(+j*omega*t) convention the conduction loss enters with a
    negative imaginary part.  Use :func:`loss_factor` for the positive
    magnitude eps''.
    """
    return complex(medium.eps_r, -loss_factor(medium, ctx))


def skin_depth(sigma: float, freq: float) -> float:
    """Plane-wave skin depth delta = 1/sqrt(pi*mu0*sigma*f) [m].

    Raises LosslessMediumError for sigma = 0 (infinite skin depth): callers
    must treat lossless media explicitly.
    """
    if not (freq > 0.0):
        raise ValueError(f"frequency must be positive, got {freq}")
    if sigma == 0.0:
        raise LosslessMediumError("lossless medium: skin depth is infinite")
    if sigma < 0.0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    return 1.0 / math.sqrt(math.pi * MU_0 * sigma * freq)


def eq1_constant(sigma: float) -> float:
    """Frequency-independent skin-depth constant delta*sqrt(f).

    Equals 1/sqrt(pi*mu0*sigma) [Hz^(1/2) m]; about 270 for seawater.
    """
    if sigma == 0.0:
        raise LosslessMediumError("lossless medium: skin depth is infinite")
    if sigma < 0.0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    return 1.0 / math.sqrt(math.pi * MU_0 * sigma)


# Linear salinity->conductivity map anchored so 3.5 % reproduces the
# default seawater conductivity (and with it the 270 Hz^(1/2) m constant).
# A rough approximation: real seawater conductivity also depends on
# temperature, which is out of scope here.
_SIGMA_PER_PERCENT = 3.475 / 3.5


def salinity_to_conductivity(salinity_percent: float) -> float:
    """Approximate seawater conductivity [S/m] from salinity in percent.

    Valid for 0..4 %; linear, anchored at 3.5 % -> 3.475 S/m.
    """
    if not (0.0 <= salinity_percent <= 4.0):
        raise ValueError(
            f"salinity must be within 0..4 percent, got {salinity_percent}"
        )
    return salinity_percent * _SIGMA_PER_PERCENT
