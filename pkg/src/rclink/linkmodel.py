"""Receiver circuit model, noise functionals, and closed-form capacity bounds.

The transmit port is driven by a current source; the receive port is
terminated in a load resistor whose voltage is read by an infinite-impedance
amplifier.  Noise enters as Johnson noise of the resistor (density
2*k_B*T*R_L) and white amplifier noise (density Q_A).  All per-frequency
functionals are computed from the rational reactance representation so they
stay finite on the channel poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channels import ChannelModel, ReactanceSample, eval_reactances

__all__ = [
    "ReceiverParams",
    "Band",
    "OutputPsd",
    "transfer_magnitude",
    "alpha",
    "beta",
    "ratio_alpha_beta",
    "output_psd",
    "capacity_upper_bound",
    "capacity_lower_bound",
]

# matches the constant used for the published regression numbers; the 2019
# SI-exact value 1.380649e-23 shifts results by well under a percent
BOLTZMANN_DEFAULT = 1.38e-23


@dataclass(frozen=True)
class ReceiverParams:
    """Load resistor, amplifier, and thermal-noise parameters."""

    load_resistance: float  # ohm
    amp_gain: float  # dimensionless voltage gain
    amp_noise_density: float  # V^2/Hz
    temperature: float  # K
    boltzmann: float = BOLTZMANN_DEFAULT  # J/K

    def __post_init__(self):
        if self.load_resistance <= 0:
            raise ValueError("load_resistance must be positive")
        if self.amp_gain <= 0:
            raise ValueError("amp_gain must be positive")
        if self.amp_noise_density < 0 or self.temperature < 0:
            raise ValueError("noise density and temperature must be nonnegative")
        if self.amp_noise_density == 0 and self.temperature == 0:
            raise ValueError("degenerate noiseless receiver (T=0 and Q_A=0)")


@dataclass(frozen=True)
class Band:
    """Positive-frequency band [carrier - pi*B, carrier + pi*B] in rad/s."""

    carrier: float  # rad/s
    bandwidth: float  # Hz

    def __post_init__(self):
        if self.bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        if self.carrier - math.pi * self.bandwidth <= 0:
            raise ValueError("band must stay in positive frequencies")

    @property
    def lo(self) -> float:
        return self.carrier - math.pi * self.bandwidth

    @property
    def hi(self) -> float:
        return self.carrier + math.pi * self.bandwidth


class OutputPsd(NamedTuple):
    """Amplifier-output spectral density split into its three terms, V^2/Hz."""

    signal: np.ndarray | float
    johnson: np.ndarray | float
    amplifier: np.ndarray | float

    @property
    def total(self):
        return self.signal + self.johnson + self.amplifier


def _sample(model, omega) -> ReactanceSample:
    if isinstance(model, ReactanceSample):
        return model
    return eval_reactances(model, omega)


def transfer_magnitude(model: ChannelModel, rx: ReceiverParams, omega):
    """|V_R / I_T| = R_L |Z_RT| / |Z_R + R_L| in ohms, finite on poles."""
    s = _sample(model, omega)
    rl = rx.load_resistance
    return rl * np.abs(s.num_rt) / np.sqrt(s.num_r**2 + rl**2 * s.denom**2)


def alpha(model: ChannelModel, rx: ReceiverParams, omega):
    """SNR per unit transmit-current spectral density, 1/(A^2 s)."""
    s = _sample(model, omega)
    rl, g = rx.load_resistance, rx.amp_gain
    johnson = 2 * g**2 * rx.boltzmann * rx.temperature * rl
    num = g**2 * s.num_rt**2 * rl**2
    den = johnson * s.num_r**2 + rx.amp_noise_density * (
        s.num_r**2 + rl**2 * s.denom**2
    )
    return num / den


def beta(model: ChannelModel, rx: ReceiverParams, omega):
    """Transmit power per unit transmit-current spectral density, ohms."""
    s = _sample(model, omega)
    rl = rx.load_resistance
    return 2 * rl * s.num_rt**2 / (s.num_r**2 + rl**2 * s.denom**2)


def ratio_alpha_beta(model: ChannelModel, rx: ReceiverParams, omega):
    """alpha/beta computed without intermediate infinities.

    The ratio is independent of the mutual reactance, so it remains defined
    (by continuity) even where Z_RT'' = 0 and alpha/beta itself is 0/0.
    Every channel pole is a local minimum of this quantity.
    """
    s = _sample(model, omega)
    rl, g = rx.load_resistance, rx.amp_gain
    johnson = 2 * g**2 * rx.boltzmann * rx.temperature * rl
    d2rl2 = rl**2 * s.denom**2
    # multiplied-out arrangement: no cancellation off-pole, finite on poles
    num = s.num_r**2 + d2rl2
    den = johnson * s.num_r**2 + rx.amp_noise_density * num
    return (g**2 * rl / 2) * num / den


def output_psd(model: ChannelModel, rx: ReceiverParams, omega, s_it) -> OutputPsd:
    """Amplifier-output spectral density for transmit density s_it (A^2/Hz)."""
    if np.any(np.asarray(s_it) < 0):
        raise ValueError("s_it must be nonnegative")
    s = _sample(model, omega)
    rl, g = rx.load_resistance, rx.amp_gain
    den = s.num_r**2 + rl**2 * s.denom**2
    signal = g**2 * s.num_rt**2 * rl**2 * s_it / den
    johnson = 2 * g**2 * rx.boltzmann * rx.temperature * rl * s.num_r**2 / den
    return OutputPsd(signal, johnson, rx.amp_noise_density * np.ones_like(den) if np.ndim(den) else rx.amp_noise_density)


def capacity_upper_bound(rx: ReceiverParams, band: Band, p_t: float) -> float:
    """Channel-independent zero-temperature capacity bound, bits/s."""
    if p_t < 0:
        raise ValueError("p_t must be nonnegative")
    b = band.bandwidth
    snr = p_t * rx.amp_gain**2 * rx.load_resistance / (2 * b * rx.amp_noise_density)
    return b * math.log2(1 + snr)


def capacity_lower_bound(
    model: ChannelModel,
    rx: ReceiverParams,
    band: Band,
    p_t: float,
    grid,
    check_resolution: bool = True,
) -> float:
    """Capacity of the flat-SNR (zero-temperature-optimal) transmit density.

    Integrates log2[1 + snr0 * psi(omega)] over the band, where psi is the
    Johnson-noise degradation factor, using the quadrature nodes/weights of
    `grid` (see waterfill.build_grid).  With T=0 this reduces exactly to the
    upper bound.
    """
    if p_t < 0:
        raise ValueError("p_t must be nonnegative")
    nodes, weights = np.asarray(grid.nodes), np.asarray(grid.weights)
    snr0 = p_t * rx.amp_gain**2 * rx.load_resistance / (
        2 * band.bandwidth * rx.amp_noise_density
    )

    def integrand(omega):
        s = eval_reactances(model, omega)
        rl, g = rx.load_resistance, rx.amp_gain
        johnson = 2 * g**2 * rx.boltzmann * rx.temperature * rl
        qa = rx.amp_noise_density
        den = qa * (s.num_r**2 + rl**2 * s.denom**2)
        psi = den / (den + johnson * s.num_r**2)
        return np.log2(1 + snr0 * psi)

    vals = integrand(nodes)
    result = float(np.sum(weights * vals) / (2 * math.pi))
    if check_resolution and len(nodes) > 32:
        # every-other-node trapezoid as a coarsened comparison
        coarse_n = nodes[::2]
        coarse_v = vals[::2]
        cw = np.empty_like(coarse_n)
        cw[1:-1] = (coarse_n[2:] - coarse_n[:-2]) / 2
        cw[0] = (coarse_n[1] - coarse_n[0]) / 2
        cw[-1] = (coarse_n[-1] - coarse_n[-2]) / 2
        coarse = float(np.sum(cw * coarse_v) / (2 * math.pi))
        if result != 0 and abs(result - coarse) > 1e-3 * abs(result):
            raise ValueError(
                "frequency grid too coarse for the lower-bound integral "
                f"(refinement changes result by {abs(result - coarse) / abs(result):.2e})"
            )
    return result
