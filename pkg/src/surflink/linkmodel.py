"""Two-path link gain, link-probability grids, trial simulation, fitting.

The received margin combines two competing propagation paths between two
submerged terminals:

* a surface path that couples up through the interface, decays
  exponentially with both terminal depths (length scale L_z) and with
  range (length scale L_r), and spreads cylindrically (1/sqrt(r));
* a bulk path straight through the water, attenuated by the skin effect
  (length scale delta) and spreading spherically (1/R).

The two amplitudes are combined by taking the larger one (relative phase
between the paths is treated as unknown), a detection margin against a
threshold is formed in dB, and link closure is modeled as a Gaussian
fade in dB around that margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import minimize
from scipy.special import ndtr

__all__ = [
    "UnidentifiableDataError",
    "LinkModelParams",
    "LinkScenario",
    "TrialRecord",
    "ProbabilityGrid",
    "TrialSimulation",
    "FitResult",
    "FREE_PARAMETER_NAMES",
    "two_path_gain",
    "link_probability",
    "probability_grid",
    "simulate_trials",
    "fit_parameters",
]

_DB_PER_NEPER = 20.0 / math.log(10.0)

# Smallest/largest doubles inside the open interval (0, 1).
_P_FLOOR = 5e-324
_P_CEIL = math.nextafter(1.0, 0.0)


class UnidentifiableDataError(ValueError):
    """Trial data cannot constrain the requested free parameters."""


@dataclass(frozen=True)
class LinkModelParams:
    """Effective propagation and detection parameters of the link model.

    Lengths are 1/e *amplitude* decay scales.  coupling_db lumps TX power,
    antenna coupling and RX sensitivity into one offset at the reference
    distance r0; threshold_db is the detection level on the same scale;
    sigma_fade_db is the Gaussian fading spread in dB.

    The default coupling/threshold pair is calibrated so that with the
    default lengths the p = 0.5 contour at 0.5 m terminal depth falls a few
    meters out, while at 3 m depth the link dies within 1 m.
    """

    L_z: float = 0.0851
    L_r: float = 9.0
    delta: float = 0.0382
    coupling_db: float = 0.0
    threshold_db: float = -110.0
    sigma_fade_db: float = 6.0
    r0: float = 1.0

    def __post_init__(self):
        for name in ("L_z", "L_r", "delta", "r0", "sigma_fade_db"):
            if not (getattr(self, name) > 0.0):
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class LinkScenario:
    """Two submerged terminals: depths below the surface and horizontal range."""

    tx_depth: float
    rx_depth: float
    range: float

    def __post_init__(self):
        for name in ("tx_depth", "rx_depth", "range"):
            if not (getattr(self, name) > 0.0):
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass(frozen=True)
class TrialRecord:
    """Push-to-talk trial outcome at one depth/range combination."""

    depth: float
    range: float
    attempts: int
    successes: int

    def __post_init__(self):
        if self.attempts < 1:
            raise ValueError(f"attempts must be >= 1, got {self.attempts}")
        if not (0 <= self.successes <= self.attempts):
            raise ValueError(
                f"successes must be within 0..attempts, got {self.successes}"
            )

    @property
    def p_hat(self) -> float:
        return self.successes / self.attempts


@dataclass(frozen=True)
class ProbabilityGrid:
    """Link probability over (depth, range) with both divers at equal depth."""

    depths: tuple
    ranges: tuple
    p: np.ndarray  # shape (len(depths), len(ranges)), values in [0, 1]


@dataclass(frozen=True)
class TrialSimulation:
    """Outcome of a simulated PTT trial run."""

    successes: int
    attempts: int

    @property
    def p_hat(self) -> float:
        return self.successes / self.attempts


def _surface_gain_db(depth_sum: float, r: float, p: LinkModelParams) -> float:
    """Surface-path level in dB, evaluated in the log domain throughout."""
    return (
        p.coupling_db
        - _DB_PER_NEPER * (depth_sum / p.L_z + r / p.L_r)
        - 10.0 * math.log10(r / p.r0)
    )


def _bulk_gain_db(line_dist: float, p: LinkModelParams) -> float:
    """Bulk-path level in dB, evaluated in the log domain throughout."""
    return (
        p.coupling_db
        - _DB_PER_NEPER * (line_dist / p.delta)
        - 20.0 * math.log10(line_dist / p.r0)
    )


def two_path_gain(s: LinkScenario, p: LinkModelParams) -> float:
    """dB level of the stronger of the surface and bulk paths.

    Equivalent to coupling_db + 20*log10(max(A_surf, A_bulk)) with

        A_surf = exp(-(d_tx + d_rx)/L_z - r/L_r) / sqrt(r/r0)
        A_bulk = exp(-R/delta) / (R/r0),  R = sqrt(r^2 + (d_tx - d_rx)^2)

    but computed in the log domain so the result stays finite for
    arbitrarily deep or distant terminals.
    """
    line_dist = math.hypot(s.range, s.tx_depth - s.rx_depth)
    return max(
        _surface_gain_db(s.tx_depth + s.rx_depth, s.range, p),
        _bulk_gain_db(line_dist, p),
    )


def link_probability(gain_db: float, p: LinkModelParams) -> float:
    """Probability that the faded margin clears the detection threshold.

    Phi((gain_db - threshold_db) / sigma_fade_db) with Phi the standard
    normal CDF, clamped to the open interval (0, 1) at double precision.
    """
    z = (gain_db - p.threshold_db) / p.sigma_fade_db
    return min(max(float(ndtr(z)), _P_FLOOR), _P_CEIL)


def _gain_db_grid(depths: np.ndarray, ranges: np.ndarray,
                  p: LinkModelParams) -> np.ndarray:
    """Vectorized two-path gain for equal-depth terminals (depth x range)."""
    d = depths[:, None]
    r = ranges[None, :]
    surf = (
        p.coupling_db
        - _DB_PER_NEPER * (2.0 * d / p.L_z + r / p.L_r)
        - 10.0 * np.log10(r / p.r0)
    )
    bulk = (
        p.coupling_db
        - _DB_PER_NEPER * (r / p.delta)
        - 20.0 * np.log10(r / p.r0)
    )
    return np.maximum(surf, np.broadcast_to(bulk, surf.shape))


def _probability_from_gain(gain_db: np.ndarray, p: LinkModelParams) -> np.ndarray:
    z = (gain_db - p.threshold_db) / p.sigma_fade_db
    return np.clip(ndtr(z), _P_FLOOR, _P_CEIL)


def _validate_axis(values: Sequence[float], name: str) -> np.ndarray:
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise ValueError(f"{name} grid must be non-empty")
    if np.any(arr <= 0.0):
        raise ValueError(f"{name} grid values must be positive")
    if arr.size > 1 and np.any(np.diff(arr) <= 0.0):
        raise ValueError(f"{name} grid must be strictly increasing")
    return arr


def probability_grid(depths: Sequence[float], ranges: Sequence[float],
                     p: LinkModelParams) -> ProbabilityGrid:
    """Link probability with both divers at each depth, over all ranges."""
    d = _validate_axis(depths, "depth")
    r = _validate_axis(ranges, "range")
    prob = _probability_from_gain(_gain_db_grid(d, r, p), p)
    return ProbabilityGrid(depths=tuple(d), ranges=tuple(r), p=prob)


def simulate_trials(prob: float, attempts: int, seed: int) -> TrialSimulation:
    """Bernoulli trial simulation with a pinned deterministic generator.

    The generator is numpy's PCG64 seeded with ``seed``; a draw succeeds
    when uniform([0,1)) < prob.  Identical (prob, attempts, seed) triples
    are bit-reproducible across runs and platforms.
    """
    if not (0.0 <= prob <= 1.0):
        raise ValueError(f"prob must be within [0, 1], got {prob}")
    if attempts < 1:
        raise ValueError(f"attempts must be >= 1, got {attempts}")
    rng = np.random.Generator(np.random.PCG64(seed))
    successes = int(np.count_nonzero(rng.random(attempts) < prob))
    return TrialSimulation(successes=successes, attempts=attempts)


FREE_PARAMETER_NAMES = ("L_r", "L_z", "coupling_db", "sigma_fade_db")

#: Parameters that live on a positive (length-like or spread-like) scale
#: and get log-spaced grid-search points.
_LOG_SCALE = {"L_r", "L_z", "sigma_fade_db"}

_GRID_POINTS = 25
_REFINE_MAXITER = 500
_REFINE_FTOL = 1e-10


@dataclass(frozen=True)
class FitResult:
    """Fitted parameters plus the achieved least-squares objective."""

    params: LinkModelParams
    objective: float
    free: tuple


def _objective_fn(records: Sequence[TrialRecord], base: LinkModelParams,
                  free: Sequence[str]):
    depth = np.array([t.depth for t in records])
    rng = np.array([t.range for t in records])
    p_hat = np.array([t.p_hat for t in records])
    line = rng  # equal diver depths per record

    def objective(x: np.ndarray) -> float:
        p = replace(base, **dict(zip(free, x)))
        surf = (
            p.coupling_db
            - _DB_PER_NEPER * (2.0 * depth / p.L_z + rng / p.L_r)
            - 10.0 * np.log10(rng / p.r0)
        )
        bulk = (
            p.coupling_db
            - _DB_PER_NEPER * (line / p.delta)
            - 20.0 * np.log10(line / p.r0)
        )
        prob = _probability_from_gain(np.maximum(surf, bulk), p)
        resid = prob - p_hat
        return float(resid @ resid)

    return objective


def _grid_axis(name: str, lo: float, hi: float) -> np.ndarray:
    if name in _LOG_SCALE:
        return np.geomspace(lo, hi, _GRID_POINTS)
    return np.linspace(lo, hi, _GRID_POINTS)


def fit_parameters(records: Sequence[TrialRecord],
                   fixed: LinkModelParams,
                   free: Sequence[str],
                   bounds: Mapping[str, tuple]) -> FitResult:
    """Least-squares fit of selected link parameters to trial records.

    Minimizes sum((model probability - successes/attempts)^2) over the
    ``free`` parameters, each constrained to its ``bounds`` interval.  The
    search is a deterministic coarse grid (25 points per free dimension,
    log-spaced for positive-scale parameters) followed by Nelder-Mead
    refinement (at most 500 iterations, function tolerance 1e-10).  Grid
    ties go to the lexicographically smallest parameter vector in the
    declared order of ``free``.
    """
    records = list(records)
    if not records:
        raise ValueError("no trial records to fit")
    free = tuple(free)
    if not free:
        raise ValueError("at least one free parameter is required")
    for name in free:
        if name not in FREE_PARAMETER_NAMES:
            raise ValueError(f"unknown free parameter {name!r}; "
                             f"choose from {FREE_PARAMETER_NAMES}")
        if name not in bounds:
            raise ValueError(f"missing bounds for free parameter {name!r}")
    if len(records) < len(free):
        raise ValueError(
            f"{len(free)} free parameters need at least {len(free)} records, "
            f"got {len(records)}"
        )

    p_hats = {t.p_hat for t in records}
    if len(free) > 1 and (p_hats == {0.0} or p_hats == {1.0}):
        raise UnidentifiableDataError(
            "all trials fully succeeded or fully failed: the data cannot "
            "constrain more than one free parameter"
        )

    lo = np.empty(len(free))
    hi = np.empty(len(free))
    for i, name in enumerate(free):
        b_lo, b_hi = bounds[name]
        if not (math.isfinite(b_lo) and math.isfinite(b_hi) and b_lo < b_hi):
            raise ValueError(f"bounds for {name!r} must be finite with lo < hi")
        if name in _LOG_SCALE and not (b_lo > 0.0):
            raise ValueError(f"bounds for {name!r} must be positive")
        lo[i], hi[i] = b_lo, b_hi

    objective = _objective_fn(records, fixed, free)

    axes = [_grid_axis(name, lo[i], hi[i]) for i, name in enumerate(free)]
    best_x = None
    best_obj = math.inf
    # C-order iteration = lexicographic order of the parameter tuples, so a
    # strict comparison keeps the lexicographically smallest tie.
    for point in np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(free)):
        val = objective(point)
        if val < best_obj:
            best_obj = val
            best_x = point

    result = minimize(
        objective,
        best_x,
        method="Nelder-Mead",
        bounds=list(zip(lo, hi)),
        options={"maxiter": _REFINE_MAXITER, "fatol": _REFINE_FTOL,
                 "xatol": 1e-9, "disp": False},
    )
    if result.fun < best_obj or (
        result.fun == best_obj and tuple(result.x) < tuple(best_x)
    ):
        best_x, best_obj = result.x, float(result.fun)

    fitted = replace(fixed, **dict(zip(free, (float(v) for v in best_x))))
    return FitResult(params=fitted, objective=best_obj, free=free)
