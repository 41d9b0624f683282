"""Water-filling capacity optimization over a pole-refined frequency grid.

The capacity problem separates per frequency; the optimal transmit-current
spectral density is 1/(mu*beta) - 1/alpha wherever positive, with the
Lagrange multiplier mu set by the power budget.  Poles of the channel are
local minima of alpha/beta, so the optimal allocation avoids resonances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelModel, eval_reactances, poles_in_interval
from .linkmodel import Band, ReceiverParams, alpha, beta, ratio_alpha_beta

__all__ = [
    "FrequencyGrid",
    "WaterfillSolution",
    "SweepResult",
    "build_grid",
    "solve_for_mu",
    "solve_for_power",
    "sweep",
]


@dataclass(frozen=True)
class FrequencyGrid:
    """Trapezoidal quadrature nodes over a band, refined around channel poles."""

    band: Band
    nodes: np.ndarray  # rad/s, strictly increasing
    weights: np.ndarray  # rad/s, positive, summing to the band span
    pole_nodes: np.ndarray  # indices of nodes sitting exactly on poles


@dataclass(frozen=True)
class WaterfillSolution:
    """Optimal allocation for one value of the Lagrange multiplier."""

    mu: float
    support_mask: np.ndarray  # True where transmit power is nonzero
    s_it: np.ndarray  # A^2/Hz per grid node
    capacity: float  # bits/s
    power: float  # W
    grid: FrequencyGrid


@dataclass(frozen=True)
class SweepResult:
    """Capacity-vs-power cross-plot plus the full-support termination point."""

    points: list[WaterfillSolution]
    termination: WaterfillSolution


def _trapezoid_weights(nodes: np.ndarray) -> np.ndarray:
    w = np.empty_like(nodes)
    w[1:-1] = (nodes[2:] - nodes[:-2]) / 2
    w[0] = (nodes[1] - nodes[0]) / 2
    w[-1] = (nodes[-1] - nodes[-2]) / 2
    return w


def build_grid(
    band: Band,
    model: ChannelModel,
    base_points: int = 512,
    refine_levels: int = 6,
) -> FrequencyGrid:
    """Uniform base grid with nested halving refinement around in-band poles.

    Each refinement level halves the spacing inside a window of +-10 spacings
    of the previous level around every pole; every in-band pole is a node.
    """
    if base_points < 16:
        raise ValueError("base_points must be at least 16")
    if refine_levels < 0:
        raise ValueError("refine_levels must be nonnegative")
    lo, hi = band.lo, band.hi
    h = (hi - lo) / (base_points - 1)
    pieces = [np.linspace(lo, hi, base_points)]
    poles = poles_in_interval(model, lo, hi)
    for p in poles:
        window = 10 * h
        spacing = h
        for _ in range(refine_levels):
            spacing /= 2
            extra = p + spacing * np.arange(-round(window / spacing), round(window / spacing) + 1)
            pieces.append(extra[(extra >= lo) & (extra <= hi)])
            window /= 2
    nodes = np.unique(np.concatenate(pieces))
    # drop near-duplicates that would produce tiny weights, then snap the
    # nearest surviving node onto each pole exactly
    keep = np.ones(len(nodes), dtype=bool)
    tol = h * 1e-9
    keep[1:] = np.diff(nodes) > tol
    nodes = nodes[keep]
    pole_idx = []
    for p in poles:
        i = int(np.argmin(np.abs(nodes - p)))
        nodes[i] = p
        pole_idx.append(i)
    weights = _trapezoid_weights(nodes)
    return FrequencyGrid(band, nodes, weights, np.array(sorted(pole_idx), dtype=int))


@dataclass(frozen=True)
class _Profile:
    """Per-node alpha, beta, and their ratio, precomputed once per grid."""

    a: np.ndarray
    b: np.ndarray
    r: np.ndarray
    valid: np.ndarray  # False where the mutual reactance vanishes (no channel)


def _profile(model: ChannelModel, rx: ReceiverParams, grid: FrequencyGrid) -> _Profile:
    s = eval_reactances(model, grid.nodes)
    a = alpha(s, rx, None)
    b = beta(s, rx, None)
    r = ratio_alpha_beta(s, rx, None)
    valid = np.asarray(s.num_rt) != 0
    return _Profile(a, b, r, valid)


def _solve(profile: _Profile, grid: FrequencyGrid, mu: float) -> WaterfillSolution:
    support = profile.valid & (profile.r > mu)
    s_it = np.zeros_like(grid.nodes)
    s_it[support] = 1 / (mu * profile.b[support]) - 1 / profile.a[support]
    w = grid.weights[support] / (2 * math.pi)
    capacity = float(np.sum(w * np.log2(profile.r[support] / mu)))
    power = float(np.sum(w * (1 / mu - 1 / profile.r[support])))
    return WaterfillSolution(mu, support, s_it, capacity, power, grid)


def solve_for_mu(
    model: ChannelModel, rx: ReceiverParams, grid: FrequencyGrid, mu: float
) -> WaterfillSolution:
    """Water-filling allocation for a given Lagrange multiplier mu > 0."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    return _solve(_profile(model, rx, grid), grid, mu)


def solve_for_power(
    model: ChannelModel,
    rx: ReceiverParams,
    grid: FrequencyGrid,
    p_t: float,
    tol: float = 1e-6,
) -> WaterfillSolution:
    """Invert the power budget to mu by bisection; power(mu) is decreasing."""
    if p_t <= 0:
        raise ValueError("p_t must be positive")
    prof = _profile(model, rx, grid)
    if not np.any(prof.valid):
        raise ValueError("channel has no coupling anywhere in the band")
    mu_hi = float(np.max(prof.r[prof.valid]))  # empty support, zero power
    mu_lo = mu_hi
    for _ in range(200):
        if _solve(prof, grid, mu_lo).power >= p_t:
            break
        mu_lo /= 2
    else:
        raise RuntimeError("failed to bracket the power budget")
    sol = None
    for _ in range(200):
        mu = math.sqrt(mu_lo * mu_hi)
        sol = _solve(prof, grid, mu)
        if abs(sol.power - p_t) <= tol * p_t:
            return sol
        if sol.power > p_t:
            mu_lo = mu
        else:
            mu_hi = mu
    return sol


def sweep(
    model: ChannelModel,
    rx: ReceiverParams,
    grid: FrequencyGrid,
    mu_list,
) -> SweepResult:
    """One solution per mu (descending), plus the full-support endpoint.

    The termination point is the largest multiplier that powers the whole
    band: the minimum of alpha/beta over the grid, backed off by a relative
    epsilon so the strict support inequality includes the minimizing node.
    """
    mu_list = list(mu_list)
    if any(m <= 0 for m in mu_list):
        raise ValueError("multipliers must be positive")
    if any(b >= a for a, b in zip(mu_list, mu_list[1:])):
        raise ValueError("mu_list must be sorted descending")
    prof = _profile(model, rx, grid)
    points = [_solve(prof, grid, mu) for mu in mu_list]
    mu_full = float(np.min(prof.r[prof.valid])) * (1 - 1e-12)
    return SweepResult(points, _solve(prof, grid, mu_full))
