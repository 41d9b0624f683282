"""Command-line front end emitting CSV/JSON artifacts for the link analyses.

Subcommands: transfer, ratio, waterfill, sweep, table1, verify.  Numeric CSV
fields are written with 17 significant digits so the files double as
regression fixtures; output files are written atomically (temp + rename).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import timedomain
from .channels import (
    LcParallel,
    TLineOpenEnds,
    TLineShortedTapped,
    eval_reactances,
)
from .config import ConfigError, RunConfig, default_config, load_config
from .linkmodel import (
    ReceiverParams,
    capacity_lower_bound,
    capacity_upper_bound,
    ratio_alpha_beta,
    transfer_magnitude,
)
from .waterfill import build_grid, solve_for_power, sweep

__all__ = ["main"]

_FMT = "%.17g"


def _with_rl(rx: ReceiverParams, rl: float) -> ReceiverParams:
    return ReceiverParams(rl, rx.amp_gain, rx.amp_noise_density, rx.temperature, rx.boltzmann)


def _atomic_write(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".rclink-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_csv(path: str, header: list[str], columns: list[np.ndarray]):
    for name, col in zip(header, columns):
        vals = np.asarray(col, dtype=float)
        if not np.all(np.isfinite(vals)):
            raise RuntimeError(f"refusing to write non-finite values in column {name}")
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(_FMT % v for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def _per_rl_path(out: str, rl: float) -> str:
    stem, ext = os.path.splitext(out)
    return f"{stem}_rl{rl:g}{ext or '.csv'}"


def cmd_transfer(config: RunConfig, out_path: str) -> list[str]:
    """Transfer-magnitude curve per load resistance; one CSV each."""
    if not config.load_resistances:
        raise ConfigError("analysis.load_resistances_ohm must be nonempty")
    grid = build_grid(config.band, config.channel, config.base_points, config.refine_levels)
    written = []
    for rl in config.load_resistances:
        rx = _with_rl(config.receiver, rl)
        tf = transfer_magnitude(config.channel, rx, grid.nodes)
        path = _per_rl_path(out_path, rl)
        _write_csv(path, ["omega_rad_s", "freq_ghz", "transfer_ohm"],
                   [grid.nodes, grid.nodes / (2 * math.pi * 1e9), tf])
        written.append(path)
    return written


def cmd_ratio(config: RunConfig, out_path: str) -> list[str]:
    """alpha/beta curve per load resistance; one CSV each."""
    if not config.load_resistances:
        raise ConfigError("analysis.load_resistances_ohm must be nonempty")
    grid = build_grid(config.band, config.channel, config.base_points, config.refine_levels)
    written = []
    for rl in config.load_resistances:
        rx = _with_rl(config.receiver, rl)
        ratio = ratio_alpha_beta(config.channel, rx, grid.nodes)
        path = _per_rl_path(out_path, rl)
        _write_csv(path, ["omega_rad_s", "ratio"], [grid.nodes, ratio])
        written.append(path)
    return written


def cmd_waterfill(config: RunConfig, out_path: str) -> tuple[str, str]:
    """Optimal transmit spectral density at the configured power budget."""
    grid = build_grid(config.band, config.channel, config.base_points, config.refine_levels)
    sol = solve_for_power(config.channel, config.receiver, grid,
                          config.power_w, config.tolerance)
    _write_csv(out_path, ["omega_rad_s", "s_it_A2_per_Hz", "in_support"],
               [grid.nodes, sol.s_it, sol.support_mask.astype(float)])
    summary = {
        "mu": sol.mu,
        "power_W": sol.power,
        "capacity_bps": sol.capacity,
        "spectral_efficiency": sol.capacity / config.band.bandwidth,
    }
    json_path = os.path.splitext(out_path)[0] + "_summary.json"
    _atomic_write(json_path, json.dumps(summary, indent=2) + "\n")
    return out_path, json_path


def cmd_sweep(config: RunConfig, out_path: str) -> str:
    """Capacity-vs-power cross-plot, terminated at the full-support point."""
    grid = build_grid(config.band, config.channel, config.base_points, config.refine_levels)
    if config.mu_list:
        mu_list = list(config.mu_list)
    else:
        # default: 50 logarithmic multipliers spanning empty to full support
        from .waterfill import _profile  # noqa: PLC2701 - internal reuse

        prof = _profile(config.channel, config.receiver, grid)
        mu_hi = float(np.max(prof.r[prof.valid])) * (1 - 1e-9)
        mu_lo = float(np.min(prof.r[prof.valid]))
        mu_list = list(np.geomspace(mu_hi, mu_lo, 50))
    result = sweep(config.channel, config.receiver, grid, mu_list)
    mu_full = result.termination.mu
    rows = [p for p in result.points if p.mu > mu_full]
    rows.append(result.termination)
    b = config.band.bandwidth
    _write_csv(out_path,
               ["mu", "power_W", "capacity_bps", "spectral_eff", "full_support"],
               [np.array([p.mu for p in rows]),
                np.array([p.power for p in rows]),
                np.array([p.capacity for p in rows]),
                np.array([p.capacity / b for p in rows]),
                np.array([float(np.all(p.support_mask)) for p in rows])])
    return out_path


def cmd_table1(out_path: str, base_points: int = 512, refine_levels: int = 6) -> str:
    """Spectral efficiency and bounds for the reference LC configuration."""
    config = default_config()
    grid_model = config.channel
    band = config.band
    p_t = config.power_w
    b = band.bandwidth
    rls, lowers, ses, uppers = [], [], [], []
    for rl in config.load_resistances:
        rx = _with_rl(config.receiver, rl)
        grid = build_grid(band, grid_model, base_points, refine_levels)
        lower = capacity_lower_bound(grid_model, rx, band, p_t, grid) / b
        upper = capacity_upper_bound(rx, band, p_t) / b
        se = solve_for_power(grid_model, rx, grid, p_t).capacity / b
        rls.append(rl)
        lowers.append(lower)
        ses.append(se)
        uppers.append(upper)
    _write_csv(out_path,
               ["load_resistance_ohm", "lower_bound_bs_hz", "spectral_efficiency_bs_hz",
                "upper_bound_bs_hz"],
               [np.array(rls), np.array(lowers), np.array(ses), np.array(uppers)])
    return out_path


def _verify_checks(config: RunConfig):
    """Closed-form vs bounce-series oracle checks; yields (name, ok, detail)."""
    rng = np.random.default_rng(0)

    open_line = TLineOpenEnds(50.0, 3.0e8, 75.0)
    c0, length = open_line.wave_speed, open_line.length
    s = complex(0.0, -0.5 * c0 / length)
    worst = 0.0
    for _ in range(20):
        w = complex(rng.uniform(0, 20) * c0 / length, s.imag)
        x = rng.uniform(0, length)
        v_s, i_s = timedomain.open_line_series_vi(open_line, w, x, 64)
        v_c, i_c = timedomain.open_line_closed_vi(open_line, w, x)
        worst = max(worst, abs(v_s - v_c) / abs(v_c), abs(i_s - i_c) / max(abs(i_c), 1e-30))
    yield "open-line series vs closed form", worst <= 1e-6, f"max rel err {worst:.2e}"

    tapped = TLineShortedTapped(50.0, 3.0e8, 75.0, 75.0 / 7, 8 * 75.0 / 13)
    s2 = complex(0.0, -1e-3 * c0 / length)
    worst = 0.0
    for _ in range(20):
        w = complex(rng.uniform(0.3, 20) * c0 / length, s2.imag)
        x = rng.uniform(0.05 * length, 0.95 * length)
        v_s = timedomain.shorted_line_series_v(tapped, w, x, 40000)
        v_c = timedomain.shorted_line_closed_v(tapped, w, x)
        worst = max(worst, abs(v_s - v_c) / abs(v_c))
    yield "shorted-line series vs closed form", worst <= 1e-4, f"max rel err {worst:.2e}"

    worst = 0.0
    for x in (0.0, length):
        v_c = timedomain.shorted_line_closed_v(tapped, complex(7.0 * c0 / length, -0.3), x)
        worst = max(worst, abs(v_c))
    yield "shorted-line endpoint voltage null", worst <= 1e-10, f"max |V| {worst:.2e}"

    lc = LcParallel(4.7e-9, 6.0e-13)
    w0 = lc.resonance
    worst = 0.0
    for w in (w0 * complex(1, -0.01), complex(0, -w0)):
        approx = timedomain.lc_transfer_from_impulse(
            lc, w, horizon=25 / abs(w.imag), dt=0.01 / w0)
        exact = timedomain.lc_transfer_closed(lc, w)
        worst = max(worst, abs(approx - exact) / abs(exact))
    yield "LC impulse-integral vs closed form", worst <= 1e-3, f"max rel err {worst:.2e}"

    # series evaluated near the real axis against the rational reactance form
    worst = 0.0
    for _ in range(10):
        w_re = rng.uniform(0.3, 20) * c0 / length
        sample = eval_reactances(tapped, w_re)
        z_rt = sample.num_rt / sample.denom
        v_c = timedomain.shorted_line_closed_v(tapped, complex(w_re, -1e-9 * c0 / length),
                                               tapped.x_receive)
        worst = max(worst, abs(v_c / 1j - z_rt) / max(abs(z_rt), 1e-12))
    yield "mutual reactance vs Helmholtz solution", worst <= 1e-4, f"max rel err {worst:.2e}"


def cmd_verify(config: RunConfig) -> int:
    """Run the physics oracle suite; nonzero exit on any failure."""
    status = 0
    for name, ok, detail in _verify_checks(config):
        print(f"{'PASS' if ok else 'FAIL'}: {name} ({detail})")
        if not ok:
            status = 1
    return status


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rclink",
        description="Capacity analysis of links through lossless two-port networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_out=True):
        p.add_argument("--config", help="JSON config path (defaults to built-in LC setup)")
        if needs_out:
            p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--grid-points", type=int, help="override grid base points")
        p.add_argument("--refine", type=int, help="override pole refinement levels")

    p = sub.add_parser("transfer", help="transfer magnitude vs frequency per load resistance")
    common(p)
    p.add_argument("--rl", help="comma-separated load resistances (ohm) override")

    p = sub.add_parser("ratio", help="alpha/beta ratio vs frequency per load resistance")
    common(p)
    p.add_argument("--rl", help="comma-separated load resistances (ohm) override")

    p = sub.add_parser("waterfill", help="optimal transmit spectral density at a power budget")
    common(p)
    p.add_argument("--power", type=float, help="transmit power budget (W) override")

    p = sub.add_parser("sweep", help="capacity vs power cross-plot over a multiplier range")
    common(p)
    p.add_argument("--mu", help="comma-separated descending Lagrange multipliers")

    p = sub.add_parser("table1", help="reference LC spectral efficiencies and bounds")
    common(p)

    p = sub.add_parser("verify", help="run the physics oracle checks")
    common(p, needs_out=False)
    return parser


def _apply_overrides(config: RunConfig, args) -> RunConfig:
    from dataclasses import replace

    if getattr(args, "grid_points", None):
        config = replace(config, base_points=args.grid_points)
    if getattr(args, "refine", None) is not None:
        config = replace(config, refine_levels=args.refine)
    if getattr(args, "rl", None):
        try:
            rls = tuple(float(v) for v in args.rl.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad --rl list: {exc}") from exc
        config = replace(config, load_resistances=rls)
    if getattr(args, "power", None):
        config = replace(config, power_w=args.power)
    if getattr(args, "mu", None):
        try:
            mus = tuple(float(v) for v in args.mu.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad --mu list: {exc}") from exc
        config = replace(config, mu_list=mus)
    return config


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config) if args.config else default_config()
        config = _apply_overrides(config, args)
        if args.command == "transfer":
            for path in cmd_transfer(config, args.out):
                print(path)
        elif args.command == "ratio":
            for path in cmd_ratio(config, args.out):
                print(path)
        elif args.command == "waterfill":
            csv_path, json_path = cmd_waterfill(config, args.out)
            print(csv_path)
            print(json_path)
        elif args.command == "sweep":
            print(cmd_sweep(config, args.out))
        elif args.command == "table1":
            print(cmd_table1(args.out, config.base_points, config.refine_levels))
        elif args.command == "verify":
            return cmd_verify(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
