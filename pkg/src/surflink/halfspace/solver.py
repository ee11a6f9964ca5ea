"""Vertical electric dipole near a planar air/lossy-water interface.

The vertical field Ez derives from a z-directed Hertz potential.  With the
source in medium "s" (relative permittivity eps_s) and the interface at
z = 0, the spectral solution under exp(+j*omega*t) is

    Ez_same_side  = C * [ K(k_s; rho, z - z_s)
                          + Int_0^inf (k^3/u_s) R exp(-u_s*(|z|+|z_s|)) J0(k*rho) dk ]
    Ez_other_side = C * Int_0^inf (k^3/u_s) T exp(-u_s*|z_s| - u_o*|z|) J0(k*rho) dk

where C = moment/(4*pi*j*omega*eps0*eps_s), u_i = sqrt(k^2 - eps_i*k0^2)
with Re(u_i) >= 0, K is the closed-form spherical-wave kernel of a dipole
in a homogeneous medium, and

    R = (eps_o*u_s - eps_s*u_o) / (eps_o*u_s + eps_s*u_o)
    T = 2*eps_s*u_s / (eps_o*u_s + eps_s*u_o).

R is the transverse-magnetic interface coefficient seen from the source
side; it tends to +1 below the cutoff of a perfectly conducting lower
medium and to 0 when both media coincide.

Quadrature contract: the integration path stays on the real axis, split at
Re(k_upper) and Re(k_lower).  The head is integrated with adaptive
Gauss-Legendre panels (graded toward the branch-point breakpoints) to the
configured relative tolerance; the oscillatory tail is integrated between
consecutive zeros of J0 and accelerated by iterated weighted averaging of
the partial sums.  Exactly lossless media are given an infinitesimal loss
(relative 1e-10) so the branch points sit just off the path; affected
samples carry a "loss-perturbed" flag.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.special import jn_zeros

from ..media import EPS_0, Medium, RfContext, complex_permittivity
from . import _kernels_py
from .backend import get_panel_fn

__all__ = [
    "SommerfeldConvergenceError",
    "QuadratureConfig",
    "DipoleSource",
    "HalfSpaceProblem",
    "FieldSample",
    "FieldMap",
    "reflection_coefficient_tm",
    "field_at",
    "field_map",
    "free_space_ez",
    "identity_potential_integral",
]

KIND_IDENTITY_POTENTIAL = _kernels_py.KIND_IDENTITY_POTENTIAL
KIND_IDENTITY_EZ = _kernels_py.KIND_IDENTITY_EZ
KIND_REFLECTED = _kernels_py.KIND_REFLECTED
KIND_TRANSMITTED = _kernels_py.KIND_TRANSMITTED

#: Relative imaginary part injected into exactly lossless permittivities so
#: the branch points move off the integration path.
_LOSS_EPS = 1e-10

#: Hard cap on adaptive head refinement steps.
_MAX_HEAD_SPLITS = 4000

#: Maximum e-folds of exponential decay allowed across one tail panel.
_PANEL_EFOLDS = 10.0


class SommerfeldConvergenceError(RuntimeError):
    """Spectral integral failed to converge.

    For tail failures ``partial_sums`` carries the last two partial sums.
    """

    def __init__(self, message: str, partial_sums: tuple = ()):
        super().__init__(message)
        self.partial_sums = partial_sums


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and panel order for the spectral quadrature."""

    rel_tol: float = 1e-8
    max_tail_intervals: int = 60
    segment_points: int = 15
    backend: str | None = None  # None = auto (compiled when available)

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1e-2):
            raise ValueError(f"rel_tol must be in (0, 1e-2), got {self.rel_tol}")
        if self.max_tail_intervals < 8:
            raise ValueError("max_tail_intervals must be >= 8")
        if self.segment_points < 4:
            raise ValueError("segment_points must be >= 4")


@dataclass(frozen=True)
class DipoleSource:
    """Vertical electric dipole: signed depth (negative = in the water)."""

    depth: float
    moment: float = 1.0  # current-length product [A*m]

    def __post_init__(self):
        if not (self.moment > 0.0):
            raise ValueError(f"moment must be positive, got {self.moment}")


@dataclass(frozen=True)
class HalfSpaceProblem:
    """Two half-spaces (upper above z = 0), frequency, and dipole source."""

    upper: Medium
    lower: Medium
    ctx: RfContext
    source: DipoleSource

    def __post_init__(self):
        if self.lower.sigma <= 0.0 and self.lower != self.upper:
            raise ValueError(
                "lower medium must be lossy (sigma > 0) unless both media "
                "are identical (homogeneous test limit)"
            )


@dataclass(frozen=True)
class FieldSample:
    """Complex vertical electric field at one (range, depth) point."""

    range: float
    depth: float
    ez: complex
    magnitude_db: float | None = None  # set when a reference is stated
    flags: tuple = ()


@dataclass(frozen=True)
class FieldMap:
    """dB field magnitudes over a (range, depth) grid, max-normalized.

    ``magnitude_db[i, j]`` corresponds to ``ranges[i]``/``depths[j]`` and is
    NaN for failed or underflowed points; the maximum finite entry is 0 dB.
    """

    ranges: tuple
    depths: tuple
    ez: np.ndarray
    magnitude_db: np.ndarray
    ref_amplitude: float
    flags: tuple = ()


@lru_cache(maxsize=16)
def _gauss_rule(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return np.ascontiguousarray(nodes), np.ascontiguousarray(weights)


@lru_cache(maxsize=8)
def _j0_zeros(n: int) -> np.ndarray:
    return jn_zeros(0, n)


def _regularize(eps: complex) -> tuple:
    """Give exactly lossless permittivities a tiny negative imaginary part."""
    if eps.imag == 0.0:
        return complex(eps.real, -abs(eps.real) * _LOSS_EPS), True
    return eps, False


def _vertical_wavenumber(eps: complex, k0: float) -> complex:
    """k = k0*sqrt(eps) on the decaying branch (Im <= 0)."""
    k = k0 * cmath.sqrt(eps)
    if k.imag > 0.0:
        k = -k
    return k


def free_space_ez(k: complex, rho: float, zeta: float) -> complex:
    """Closed-form Ez kernel of a vertical dipole in a homogeneous medium.

    Multiply by moment/(4*pi*j*omega*eps0*eps_r) for the physical field.
    """
    dist = math.hypot(rho, zeta)
    if dist == 0.0:
        raise ValueError("field point coincides with the source")
    jkr = 1j * k * dist
    phase = cmath.exp(-jkr)
    return phase * (
        (k * k * rho * rho - 1.0 - jkr) / dist**3
        + zeta * zeta * (3.0 + 3.0 * jkr) / dist**5
    )


def reflection_coefficient_tm(k_rho: float, problem: HalfSpaceProblem) -> complex:
    """TM interface coefficient seen from the source's half-space.

    R = (eps_o*u_s - eps_s*u_o)/(eps_o*u_s + eps_s*u_o) with
    u_i = sqrt(k_rho^2 - eps_i*k0^2), Re(u_i) >= 0.  A branch-point grazing
    (u_i = 0 at machine precision) is evaluated with an infinitesimal loss
    perturbation.
    """
    if not (k_rho >= 0.0) or isinstance(k_rho, complex):
        raise ValueError(f"k_rho must be real and >= 0, got {k_rho!r}")
    eps_up = complex_permittivity(problem.upper, problem.ctx)
    eps_lo = complex_permittivity(problem.lower, problem.ctx)
    if problem.source.depth < 0.0:
        eps_s, eps_o = eps_lo, eps_up
    else:
        eps_s, eps_o = eps_up, eps_lo
    k0sq = problem.ctx.k0 ** 2

    def coefficient(es: complex, eo: complex) -> complex:
        u_s = cmath.sqrt(k_rho * k_rho - es * k0sq)
        u_o = cmath.sqrt(k_rho * k_rho - eo * k0sq)
        if u_s == 0.0 or u_o == 0.0:
            raise ZeroDivisionError
        return (eo * u_s - es * u_o) / (eo * u_s + es * u_o)

    try:
        return coefficient(eps_s, eps_o)
    except ZeroDivisionError:
        return coefficient(_regularize(eps_s)[0], _regularize(eps_o)[0])


# ---------------------------------------------------------------------------
# Spectral quadrature machinery
# ---------------------------------------------------------------------------

def _graded_points(a: float, b: float) -> list:
    """Panel boundaries on [a, b], geometrically graded toward both ends."""
    span = b - a
    fractions = set()
    f = 1e-8
    while f < 0.45:
        fractions.add(f)
        fractions.add(1.0 - f)
        f *= 4.0
    fractions.update((0.0, 0.5, 1.0))
    return [a + span * f for f in sorted(fractions)]


def _integrate_head(panel_fn, kind, args, breaks, cfg) -> complex:
    """Adaptive Gauss-Legendre quadrature over the head breakpoints."""
    nodes_hi, w_hi = _gauss_rule(cfg.segment_points)
    nodes_lo, w_lo = _gauss_rule(max(4, cfg.segment_points // 2))
    span = breaks[-1] - breaks[0]

    def evaluate(a: float, b: float):
        est = panel_fn(kind, a, b, *args, nodes_hi, w_hi)
        low = panel_fn(kind, a, b, *args, nodes_lo, w_lo)
        return est, abs(est - low)

    heap = []
    counter = 0
    total = 0.0 + 0.0j
    err_sum = 0.0
    for lo_b, hi_b in zip(breaks[:-1], breaks[1:]):
        pts = _graded_points(lo_b, hi_b)
        for a, b in zip(pts[:-1], pts[1:]):
            est, err = evaluate(a, b)
            total += est
            err_sum += err
            counter += 1
            heapq.heappush(heap, (-err, counter, a, b, est))

    stuck_err = 0.0
    splits = 0
    while heap and splits < _MAX_HEAD_SPLITS:
        scale = max(abs(total), 1e-300)
        if err_sum + stuck_err <= cfg.rel_tol * scale:
            break
        neg_err, _, a, b, est = heapq.heappop(heap)
        err = -neg_err
        if (b - a) < 1e-14 * span:
            # Cannot refine further at double precision.
            err_sum -= err
            stuck_err += err
            continue
        mid = 0.5 * (a + b)
        est_l, err_l = evaluate(a, mid)
        est_r, err_r = evaluate(mid, b)
        total += est_l + est_r - est
        err_sum += err_l + err_r - err
        counter += 2
        heapq.heappush(heap, (-err_l, counter - 1, a, mid, est_l))
        heapq.heappush(heap, (-err_r, counter, mid, b, est_r))
        splits += 1

    scale = max(abs(total), 1e-300)
    if err_sum + stuck_err > 1e3 * cfg.rel_tol * scale:
        raise SommerfeldConvergenceError(
            f"head quadrature stalled: error estimate {err_sum + stuck_err:.3e} "
            f"for integral magnitude {abs(total):.3e}"
        )
    return total


def _tail_panel(panel_fn, kind, args, a, b, decay, nodes, weights) -> complex:
    """One tail interval, split so no sub-panel spans too many e-folds."""
    n_sub = 1
    if decay > 0.0:
        n_sub = max(1, math.ceil((b - a) * decay / _PANEL_EFOLDS))
    edges = np.linspace(a, b, n_sub + 1)
    return sum(
        panel_fn(kind, lo, hi, *args, nodes, weights)
        for lo, hi in zip(edges[:-1], edges[1:])
    )


#: Number of exact J0 zeros cached; higher zeros use the asymptotic form.
_N_EXACT_ZEROS = 64


def _j0_zero_scaled(m: int, rho: float) -> float:
    """m-th positive zero of J0(k*rho) as a function of k (m >= 1)."""
    if m <= _N_EXACT_ZEROS:
        return float(_j0_zeros(_N_EXACT_ZEROS)[m - 1]) / rho
    return (m - 0.25) * math.pi / rho


def _first_zero_index_above(value: float, rho: float) -> int:
    """Index of the first J0(k*rho) zero at or above ``value``."""
    m = max(1, math.ceil(value * rho / math.pi + 0.25))
    while m > 1 and _j0_zero_scaled(m - 1, rho) >= value:
        m -= 1
    while _j0_zero_scaled(m, rho) < value:
        m += 1
    return m


def _integrate_tail(panel_fn, kind, args, start_index, rho, decay, cfg,
                    head_mag: float) -> complex:
    """Oscillatory tail with iterated weighted-average acceleration.

    Integrates between consecutive zeros of J0(k*rho) starting at zero
    number ``start_index`` and accelerates the alternating partial sums by
    iterated averaging.
    """
    nodes, weights = _gauss_rule(cfg.segment_points)
    max_n = cfg.max_tail_intervals

    breaks = [_j0_zero_scaled(start_index + i, rho) for i in range(max_n + 1)]
    partial = 0.0 + 0.0j
    partials = []
    column = []  # diagonal of the iterated-average table
    best_prev = None
    for i in range(max_n):
        partial += _tail_panel(panel_fn, kind, args, breaks[i], breaks[i + 1],
                               decay, nodes, weights)
        partials.append(partial)
        new_column = [partial]
        for k in range(len(column)):
            new_column.append(0.5 * (column[k] + new_column[k]))
        column = new_column
        best = column[-1]
        if best_prev is not None and i >= 2:
            scale = max(abs(best) + head_mag, 1e-300)
            if abs(best - best_prev) <= cfg.rel_tol * scale:
                return best
        best_prev = best

    raise SommerfeldConvergenceError(
        f"tail did not converge within {max_n} intervals",
        partial_sums=tuple(partials[-2:]),
    )


def _integrate_onaxis_tail(panel_fn, kind, args, start, decay, cfg,
                           head_mag: float) -> complex:
    """Non-oscillatory on-axis tail: march panels until increments vanish."""
    if decay <= 0.0:
        raise SommerfeldConvergenceError(
            "on-axis tail with no exponential decay cannot converge"
        )
    nodes, weights = _gauss_rule(cfg.segment_points)
    total = 0.0 + 0.0j
    a = start
    width = _PANEL_EFOLDS / decay
    inc = 0.0 + 0.0j
    for _ in range(cfg.max_tail_intervals):
        inc = panel_fn(kind, a, a + width, *args, nodes, weights)
        total += inc
        a += width
        if abs(inc) <= cfg.rel_tol * max(abs(total) + head_mag, 1e-300):
            return total
    raise SommerfeldConvergenceError(
        "on-axis tail did not converge",
        partial_sums=(total - inc, total),
    )


def _integrate_spectral(panel_fn, kind, rho, d1, d2, eps_s, eps_o, k0,
                        cfg) -> complex:
    """Head + tail evaluation of one spectral integral.

    The adaptive head runs from 0 past both branch points Re(k_i) up to the
    first J0(k*rho) zero beyond twice the larger one, so the oscillatory
    tail starts on smooth ground; path breakpoints sit at each Re(k_i).
    """
    k0sq = k0 * k0
    args = (rho, d1, d2, eps_s, eps_o, k0sq)

    re_ks = abs((k0 * cmath.sqrt(eps_s)).real)
    re_ko = abs((k0 * cmath.sqrt(eps_o)).real)
    breaks = sorted({0.0, re_ks, re_ko})
    deduped = [breaks[0]]
    for p in breaks[1:]:
        if p > deduped[-1] * (1.0 + 1e-12) + 1e-300:
            deduped.append(p)
    k_max = deduped[-1] if len(deduped) > 1 else max(k0, 1.0)

    decay = d1 + (d2 if kind == KIND_TRANSMITTED else 0.0)
    if rho > 0.0:
        start_index = _first_zero_index_above(2.0 * k_max, rho)
        tail_start = _j0_zero_scaled(start_index, rho)
    else:
        start_index = None
        tail_start = 2.0 * k_max
    deduped.append(tail_start)

    head = _integrate_head(panel_fn, kind, args, deduped, cfg)
    if start_index is None:
        tail = _integrate_onaxis_tail(panel_fn, kind, args, tail_start,
                                      decay, cfg, abs(head))
    else:
        tail = _integrate_tail(panel_fn, kind, args, start_index, rho,
                               decay, cfg, abs(head))
    return head + tail


def identity_potential_integral(eps: complex, k0: float, rho: float,
                                dist: float,
                                cfg: QuadratureConfig | None = None) -> complex:
    """Numerical spectral form of the spherical wave exp(-j*k*r)/r.

    Runs the full head+tail machinery on the coefficient-free kernel
    (k/u)*exp(-u*dist)*J0(k*rho); the closed form it must reproduce is
    exp(-j*k*sqrt(rho^2 + dist^2))/sqrt(rho^2 + dist^2).  Used as the
    self-check of the quadrature engine.
    """
    cfg = cfg or QuadratureConfig()
    if dist < 0.0:
        raise ValueError("dist must be >= 0")
    eps_reg, _ = _regularize(complex(eps))
    panel_fn = get_panel_fn(cfg.backend)
    return _integrate_spectral(panel_fn, KIND_IDENTITY_POTENTIAL, rho, dist,
                               0.0, eps_reg, eps_reg, k0, cfg)


# ---------------------------------------------------------------------------
# Field evaluation
# ---------------------------------------------------------------------------

def _problem_permittivities(problem: HalfSpaceProblem):
    eps_up = complex_permittivity(problem.upper, problem.ctx)
    eps_lo = complex_permittivity(problem.lower, problem.ctx)
    eps_up_reg, f_up = _regularize(eps_up)
    eps_lo_reg, f_lo = _regularize(eps_lo)
    flags = ("loss-perturbed",) if (f_up or f_lo) else ()
    return eps_up, eps_lo, eps_up_reg, eps_lo_reg, flags


def field_at(problem: HalfSpaceProblem, range_: float, depth: float,
             cfg: QuadratureConfig | None = None) -> FieldSample:
    """Complex vertical E-field at horizontal range and signed depth.

    Depth is negative below the interface; the source point itself is
    excluded.  Raises SommerfeldConvergenceError when the quadrature fails.
    """
    cfg = cfg or QuadratureConfig()
    if range_ < 0.0:
        raise ValueError(f"range must be >= 0, got {range_}")
    z_src = problem.source.depth
    if range_ == 0.0 and depth == z_src:
        raise ValueError("observation point coincides with the source")

    eps_up, eps_lo, eps_up_reg, eps_lo_reg, flags = _problem_permittivities(problem)
    src_upper = z_src >= 0.0
    obs_upper = depth >= 0.0
    if src_upper:
        eps_s_raw, eps_s, eps_o = eps_up, eps_up_reg, eps_lo_reg
    else:
        eps_s_raw, eps_s, eps_o = eps_lo, eps_lo_reg, eps_up_reg

    ctx = problem.ctx
    k0 = ctx.k0
    prefactor = problem.source.moment / (
        4j * math.pi * ctx.omega * EPS_0 * eps_s_raw
    )
    panel_fn = get_panel_fn(cfg.backend)

    if src_upper == obs_upper:
        d_pair = abs(depth) + abs(z_src)
        integral = _integrate_spectral(panel_fn, KIND_REFLECTED, range_,
                                       d_pair, 0.0, eps_s, eps_o, k0, cfg)
        k_s = _vertical_wavenumber(eps_s_raw, k0)
        direct = free_space_ez(k_s, range_, depth - z_src)
        ez = prefactor * (direct + integral)
    else:
        integral = _integrate_spectral(panel_fn, KIND_TRANSMITTED, range_,
                                       abs(z_src), abs(depth), eps_s, eps_o,
                                       k0, cfg)
        ez = prefactor * integral

    return FieldSample(range=range_, depth=depth, ez=complex(ez), flags=flags)


def _validate_grid(values: Sequence[float], name: str) -> tuple:
    vals = tuple(float(v) for v in values)
    if not vals:
        raise ValueError(f"{name} grid must be non-empty")
    if any(b <= a for a, b in zip(vals[:-1], vals[1:])):
        raise ValueError(f"{name} grid must be strictly increasing")
    return vals


def field_map(problem: HalfSpaceProblem, ranges: Sequence[float],
              depths: Sequence[float],
              cfg: QuadratureConfig | None = None) -> FieldMap:
    """Max-normalized dB magnitude grid of Ez over ranges x depths.

    Failed points (quadrature non-convergence, the source point itself, or
    amplitude underflow to zero) become NaN entries; the map only fails as
    a whole when every point failed.  Evaluation order is row-major over
    ranges then depths, so results are bit-deterministic.
    """
    cfg = cfg or QuadratureConfig()
    ranges = _validate_grid(ranges, "range")
    depths = _validate_grid(depths, "depth")

    ez = np.full((len(ranges), len(depths)), np.nan + 0j, dtype=complex)
    flags: set = set()
    for i, rho in enumerate(ranges):
        for j, z in enumerate(depths):
            try:
                sample = field_at(problem, rho, z, cfg)
            except (SommerfeldConvergenceError, ValueError):
                continue
            ez[i, j] = sample.ez
            flags.update(sample.flags)

    amplitude = np.abs(ez)
    amplitude[amplitude == 0.0] = np.nan
    if not np.any(np.isfinite(amplitude)):
        raise ValueError("all field-map points failed")
    ref = float(np.nanmax(amplitude))
    with np.errstate(invalid="ignore"):
        magnitude_db = 20.0 * np.log10(amplitude / ref)
    return FieldMap(ranges=ranges, depths=depths, ez=ez,
                    magnitude_db=magnitude_db, ref_amplitude=ref,
                    flags=tuple(sorted(flags)))
