"""Lossless two-port channel models.

Three channels are supported: a parallel LC circuit, an open-ended
transmission-line segment with ports at the two ends, and a
shorted-at-both-ends line tapped at interior transmit/receive points.
All three have purely imaginary impedance matrices whose entries share a
common denominator that vanishes at the resonance frequencies.  Entries
are therefore represented as (numerator, denominator) pairs so that
evaluation stays finite on the poles and pole limits become plain
arithmetic downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "LcParallel",
    "TLineOpenEnds",
    "TLineShortedTapped",
    "ChannelModel",
    "ReactanceSample",
    "eval_reactances",
    "poles_in_interval",
    "lc_impulse_z21",
]


@dataclass(frozen=True)
class LcParallel:
    """Parallel inductor-capacitor two-port (both ports across the tank)."""

    inductance: float  # H
    capacitance: float  # F

    def __post_init__(self):
        if self.inductance <= 0 or self.capacitance <= 0:
            raise ValueError("inductance and capacitance must be positive")

    @property
    def resonance(self) -> float:
        """Resonant angular frequency 1/sqrt(LC), rad/s."""
        return 1.0 / math.sqrt(self.inductance * self.capacitance)


@dataclass(frozen=True)
class TLineOpenEnds:
    """Open-circuited line segment with ports at x=0 and x=length."""

    char_impedance: float  # ohm
    wave_speed: float  # m/s
    length: float  # m

    def __post_init__(self):
        if self.char_impedance <= 0 or self.wave_speed <= 0 or self.length <= 0:
            raise ValueError("char_impedance, wave_speed, length must be positive")


@dataclass(frozen=True)
class TLineShortedTapped:
    """Line shorted at both ends, tapped at x_transmit and x_receive."""

    char_impedance: float  # ohm
    wave_speed: float  # m/s
    length: float  # m
    x_transmit: float  # m
    x_receive: float  # m

    def __post_init__(self):
        if self.char_impedance <= 0 or self.wave_speed <= 0 or self.length <= 0:
            raise ValueError("char_impedance, wave_speed, length must be positive")
        if not (0.0 <= self.x_transmit <= self.length):
            raise ValueError("x_transmit must lie in [0, length]")
        if not (0.0 <= self.x_receive <= self.length):
            raise ValueError("x_receive must lie in [0, length]")


ChannelModel = Union[LcParallel, TLineOpenEnds, TLineShortedTapped]


@dataclass(frozen=True)
class ReactanceSample:
    """Rational representation of the imaginary impedance entries at omega.

    The reactances are recovered as Z_T'' = num_t/denom, Z_R'' = num_r/denom,
    Z_RT'' = num_rt/denom wherever denom != 0.  All fields are finite at every
    real omega, pole frequencies included.  Fields may be scalars or arrays,
    following the shape of omega.
    """

    num_t: np.ndarray | float  # ohm
    num_r: np.ndarray | float  # ohm
    num_rt: np.ndarray | float  # ohm
    denom: np.ndarray | float  # dimensionless
    omega: np.ndarray | float  # rad/s

    @property
    def z_rt(self):
        """Mutual reactance Z_RT'' (inf/nan exactly on poles)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.num_rt / self.denom

    @property
    def z_r(self):
        """Receive self-reactance Z_R'' (inf/nan exactly on poles)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.num_r / self.denom


def eval_reactances(model: ChannelModel, omega) -> ReactanceSample:
    """Evaluate the three reactance entries of `model` at `omega` (rad/s).

    Accepts a scalar or ndarray of real frequencies; total on the real line.
    """
    omega = np.asarray(omega, dtype=float) if np.ndim(omega) else float(omega)
    if isinstance(model, LcParallel):
        num = omega * model.inductance
        denom = 1.0 - model.inductance * model.capacitance * omega**2
        return ReactanceSample(num, num, num, denom, omega)
    if isinstance(model, TLineOpenEnds):
        kl = omega * model.length / model.wave_speed
        z0 = model.char_impedance
        # entries of the open-line matrix carry a -1/sin(kL) prefactor;
        # the -1 is folded into the numerators
        denom = np.sin(kl)
        num_diag = -z0 * np.cos(kl)
        num_off = -z0 * np.ones_like(denom) if np.ndim(kl) else -z0
        return ReactanceSample(num_diag, num_diag, num_off, denom, omega)
    if isinstance(model, TLineShortedTapped):
        k = omega / model.wave_speed
        z0, length = model.char_impedance, model.length
        xt, xr = model.x_transmit, model.x_receive
        denom = np.sin(k * length)
        cos_kl = np.cos(k * length)
        num_t = 0.5 * z0 * (np.cos(k * (length - 2 * xt)) - cos_kl)
        num_r = 0.5 * z0 * (np.cos(k * (length - 2 * xr)) - cos_kl)
        # a tap on a shorted end kills the coupling identically; make that a
        # structural zero rather than trusting cancellation of two cosines.
        # The sum grouping keeps the entry bit-exact under swapping the taps.
        if xt in (0.0, length) or xr in (0.0, length):
            num_rt = np.zeros_like(denom) if np.ndim(denom) else 0.0
        else:
            num_rt = 0.5 * z0 * (
                np.cos(k * (length - (xr + xt))) - np.cos(k * (length - abs(xt - xr)))
            )
        return ReactanceSample(num_t, num_r, num_rt, denom, omega)
    raise TypeError(f"unsupported channel model: {model!r}")


def poles_in_interval(model: ChannelModel, lo: float, hi: float) -> np.ndarray:
    """All real pole frequencies of `model` inside [lo, hi], sorted ascending.

    LC has the single positive pole 1/sqrt(LC); the line models have poles at
    pi*c0*l/length for integer l >= 0 (omega=0 counts as a pole for the lines
    but not for LC, where the numerator vanishes there too).
    """
    if not (0 <= lo < hi):
        raise ValueError("require 0 <= lo < hi")
    if isinstance(model, LcParallel):
        w0 = model.resonance
        return np.array([w0]) if lo <= w0 <= hi else np.array([])
    if isinstance(model, (TLineOpenEnds, TLineShortedTapped)):
        step = math.pi * model.wave_speed / model.length
        # tolerance absorbs roundoff at interval endpoints
        l_min = math.ceil(lo / step - 1e-9)
        l_max = math.floor(hi / step + 1e-9)
        l_min = max(l_min, 0)
        if l_max < l_min:
            return np.array([])
        return step * np.arange(l_min, l_max + 1, dtype=float)
    raise TypeError(f"unsupported channel model: {model!r}")


def lc_impulse_z21(model: LcParallel, t) -> np.ndarray | float:
    """Transfer impulse response of the LC two-port: cos(t/sqrt(LC))/C for t>=0."""
    if not isinstance(model, LcParallel):
        raise TypeError("lc_impulse_z21 requires an LcParallel model")
    t = np.asarray(t, dtype=float) if np.ndim(t) else float(t)
    val = np.cos(t * model.resonance) / model.capacitance
    return np.where(np.asarray(t) >= 0, val, 0.0) if np.ndim(t) else (
        val if t >= 0 else 0.0
    )
