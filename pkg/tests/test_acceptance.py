"""End-to-end acceptance criteria, one test per criterion.

Each test prints a single summary line (visible with `pytest -s` or in the
captured output) in addition to its assertions.
"""

import math

import numpy as np
import pytest

from rclink import (
    Band,
    ReceiverParams,
    build_grid,
    capacity_lower_bound,
    capacity_upper_bound,
    eval_reactances,
    poles_in_interval,
    ratio_alpha_beta,
    solve_for_mu,
    solve_for_power,
    sweep,
)
from rclink.timedomain import (
    lc_transfer_closed,
    lc_transfer_from_impulse,
    open_line_closed_vi,
    open_line_series_vi,
    shorted_line_closed_v,
    shorted_line_series_v,
)
from rclink import TLineOpenEnds, TLineShortedTapped

from conftest import LC_MODEL, POWER_W, TLINE_MODEL, make_receiver
from oracles import riemann_capacity_power

TABLE1 = [
    (5e4, 0.426, 0.500, 17.6),
    (5e5, 3.58, 3.67, 21.0),
    (5e6, 9.69, 9.70, 24.3),
]
BASE_POINTS = 512
REFINE = 6


@pytest.fixture(scope="module")
def lc_grid(lc_band):
    return build_grid(lc_band, LC_MODEL, BASE_POINTS, REFINE)


@pytest.fixture(scope="module")
def tline_grid(tline_band):
    return build_grid(tline_band, TLINE_MODEL, BASE_POINTS, REFINE)


def test_criterion_01_table1_upper_bounds(lc_band):
    rows = []
    for rl, _, _, expected in TABLE1:
        se = capacity_upper_bound(make_receiver(rl), lc_band, POWER_W) / lc_band.bandwidth
        assert se == pytest.approx(expected, abs=0.05)
        rows.append(f"{se:.3f}")
    print(f"PASS criterion 1: upper bounds {rows} within +-0.05 of published")


def test_criterion_02_table1_lower_bounds(lc_band, lc_grid):
    rows = []
    for rl, expected, _, _ in TABLE1:
        lb = capacity_lower_bound(LC_MODEL, make_receiver(rl), lc_band, POWER_W, lc_grid)
        se = lb / lc_band.bandwidth
        assert se == pytest.approx(expected, rel=0.02)
        rows.append(f"{se:.4f}")
    print(f"PASS criterion 2: lower bounds {rows} within 2% of published")


def test_criterion_03_table1_spectral_efficiencies(lc_band, lc_grid):
    rows = []
    for rl, _, expected, _ in TABLE1:
        sol = solve_for_power(LC_MODEL, make_receiver(rl), lc_grid, POWER_W)
        se = sol.capacity / lc_band.bandwidth
        assert se == pytest.approx(expected, rel=0.03)
        rows.append(f"{se:.4f}")
    print(f"PASS criterion 3: water-filling SEs {rows} within 3% of published")


def test_criterion_04_sandwich(lc_band, lc_grid, tline_band, tline_grid):
    cases = []
    for model, band, grid in (
        (LC_MODEL, lc_band, lc_grid),
        (TLINE_MODEL, tline_band, tline_grid),
    ):
        for rl in (5e4, 5e5, 5e6):
            for scale in (0.2, 1.0, 5.0, 25.0):
                cases.append((model, band, grid, make_receiver(rl), scale * POWER_W))
    assert len(cases) >= 20
    for model, band, grid, rx, p_t in cases:
        cap = solve_for_power(model, rx, grid, p_t).capacity
        lower = capacity_lower_bound(model, rx, band, p_t, grid)
        upper = capacity_upper_bound(rx, band, p_t)
        assert lower < cap < upper  # strict: T = 300 K > 0
    print(f"PASS criterion 4: lower < C < upper at {len(cases)} operating points")


def test_criterion_05_pole_avoidance(lc_band, lc_grid, tline_band, tline_grid):
    rx = make_receiver(5e4)
    sol = solve_for_power(LC_MODEL, rx, lc_grid, POWER_W)
    pole = lc_grid.pole_nodes[0]
    assert sol.s_it[pole] == 0.0
    # contiguous unpowered neighborhood around the resonance node
    off = np.flatnonzero(~sol.support_mask)
    assert pole in off
    left = pole
    while left - 1 in off:
        left -= 1
    right = pole
    while right + 1 in off:
        right += 1
    assert right - left >= 10
    for model, band, grid in (
        (LC_MODEL, lc_band, lc_grid),
        (TLINE_MODEL, tline_band, tline_grid),
    ):
        delta = (band.hi - band.lo) / (BASE_POINTS - 1)
        for p in grid.nodes[grid.pole_nodes]:
            at_pole = ratio_alpha_beta(model, rx, p)
            for side in (p - delta, p + delta):
                if band.lo <= side <= band.hi:
                    assert at_pole < ratio_alpha_beta(model, rx, side)
    print(f"PASS criterion 5: zero power on [{left}, {right}] around resonance; "
          "every in-band pole is a ratio local minimum")


def test_criterion_06_monotonicity_and_concavity(lc_grid):
    rx = make_receiver(5e5)
    r = ratio_alpha_beta(LC_MODEL, rx, lc_grid.nodes)
    mus = np.geomspace(float(r.max()) * 0.999, float(r.min()) * 1.001, 50)
    sols = [solve_for_mu(LC_MODEL, rx, lc_grid, float(m)) for m in mus]
    powers = np.array([s.power for s in sols])
    caps = np.array([s.capacity for s in sols])
    assert np.all(np.diff(powers) >= 0)  # power nonincreasing in mu
    assert np.all(np.diff(caps) >= 0)  # capacity nonincreasing in mu
    keep = np.concatenate([[True], np.diff(powers) > 0])
    p, c = powers[keep], caps[keep]
    slopes = np.diff(c) / np.diff(p)
    assert np.all(np.diff(c) >= 0)
    assert np.all(slopes[1:] <= slopes[:-1] * (1 + 1e-6))
    print("PASS criterion 6: 50-point sweep monotone; capacity-power curve concave")


def test_criterion_07_quadrature_oracle(lc_band, lc_grid, tline_band, tline_grid):
    solutions = []
    for model, band, grid in (
        (LC_MODEL, lc_band, lc_grid),
        (TLINE_MODEL, tline_band, tline_grid),
    ):
        for rl in (5e4, 5e5, 5e6):
            rx = make_receiver(rl)
            for scale in (1.0, 10.0):
                sol = solve_for_power(model, rx, grid, scale * POWER_W)
                solutions.append((model, band, grid, rx, sol))
    worst = 0.0
    for model, band, grid, rx, sol in solutions:
        cap, power = riemann_capacity_power(model, rx, band, sol.mu, 4 * len(grid.nodes))
        worst = max(worst, abs(cap - sol.capacity) / sol.capacity,
                    abs(power - sol.power) / sol.power)
    assert worst <= 1e-3
    print(f"PASS criterion 7: Riemann recomputation of {len(solutions)} solutions, "
          f"max rel err {worst:.2e}")


def test_criterion_08_physics_oracles():
    rng = np.random.default_rng(0)
    open_line = TLineOpenEnds(50.0, 3.0e8, 75.0)
    c0_over_l = open_line.wave_speed / open_line.length
    worst_open = 0.0
    for _ in range(20):
        omega = complex(rng.uniform(0, 20) * c0_over_l, -0.5 * c0_over_l)
        x = rng.uniform(0, open_line.length)
        v_s, i_s = open_line_series_vi(open_line, omega, x, 64)
        v_c, i_c = open_line_closed_vi(open_line, omega, x)
        worst_open = max(worst_open, abs(v_s - v_c) / abs(v_c),
                         abs(i_s - i_c) / max(abs(i_c), 1e-12))
    assert worst_open <= 1e-6

    worst_short = 0.0
    for _ in range(10):
        omega = complex(rng.uniform(0.3, 15) * c0_over_l, -1e-3 * c0_over_l)
        x = rng.uniform(0.1, 0.9) * TLINE_MODEL.length
        v_s = shorted_line_series_v(TLINE_MODEL, omega, x, 40000)
        v_c = shorted_line_closed_v(TLINE_MODEL, omega, x)
        worst_short = max(worst_short, abs(v_s - v_c) / abs(v_c))
    assert worst_short <= 1e-4

    w0 = LC_MODEL.resonance
    worst_lc = 0.0
    for omega in (w0 * complex(1, -0.01), complex(0, -w0)):
        approx = lc_transfer_from_impulse(LC_MODEL, omega, 25 / abs(omega.imag), 0.01 / w0)
        exact = lc_transfer_closed(LC_MODEL, omega)
        worst_lc = max(worst_lc, abs(approx - exact) / abs(exact))
    assert worst_lc <= 1e-3
    print(f"PASS criterion 8: series/closed-form agreement (open {worst_open:.1e}, "
          f"shorted {worst_short:.1e}, LC {worst_lc:.1e})")


def test_criterion_09_structural_zeros():
    omegas = np.array([1.3e7, 8.9e8, 2.1e10])
    for boundary in (0.0, 75.0):
        for xt, xr in ((boundary, 31.0), (31.0, boundary)):
            model = TLineShortedTapped(50.0, 3.0e8, 75.0, xt, xr)
            assert np.all(eval_reactances(model, omegas).num_rt == 0.0)
    omega = complex(5.5 * 3.0e8 / 75.0, -0.2 * 3.0e8 / 75.0)
    for x in (0.0, TLINE_MODEL.length):
        assert abs(shorted_line_closed_v(TLINE_MODEL, omega, x)) <= 1e-12
    print("PASS criterion 9: boundary taps give exactly zero coupling; V(0)=V(L)=0")


def test_criterion_10_capacity_grows_with_load(lc_band, lc_grid):
    caps = [
        solve_for_power(LC_MODEL, make_receiver(rl), lc_grid, POWER_W).capacity
        for rl in (5e4, 5e5, 5e6, 5e7)
    ]
    assert all(a < b for a, b in zip(caps, caps[1:]))
    print(f"PASS criterion 10: C strictly increasing in load resistance "
          f"({['%.3g' % c for c in caps]})")


def test_criterion_11_grid_convergence(lc_band):
    worst = 0.0
    for rl, _, _, _ in TABLE1:
        rx = make_receiver(rl)
        ses = [
            solve_for_power(LC_MODEL, rx, build_grid(lc_band, LC_MODEL, bp, REFINE), POWER_W).capacity
            for bp in (BASE_POINTS, 2 * BASE_POINTS)
        ]
        worst = max(worst, abs(ses[1] - ses[0]) / ses[0])
    assert worst < 1e-3
    print(f"PASS criterion 11: doubling base points shifts SEs by at most {worst:.2e}")
