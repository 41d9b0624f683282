"""Bounce-series oracles for the frequency-domain closed forms.

The line channels admit time-domain solutions as trains of reflected
impulses; their Fourier transforms are geometric series that converge for
Im(omega) < 0.  Evaluating truncated series at complex frequencies in the
region of convergence gives an independent check of the closed-form
impedance expressions without discretizing delta functions.  The LC
channel, whose impulse response is delta-free, additionally gets a direct
time-integral check.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .channels import LcParallel, TLineOpenEnds, TLineShortedTapped

__all__ = [
    "open_line_series_vi",
    "open_line_closed_vi",
    "shorted_line_series_v",
    "shorted_line_closed_v",
    "lc_transfer_from_impulse",
    "lc_transfer_closed",
]


def _require_lower_half(omega: complex):
    if omega.imag >= 0:
        raise ValueError("series converge only for Im(omega) < 0")


def open_line_series_vi(
    model: TLineOpenEnds, omega: complex, x: float, terms: int
) -> tuple[complex, complex]:
    """Partial sums of the open-line bounce series: (V(omega,x)/I1, I(omega,x)/I1).

    Each reflection pair contributes one right-going and one left-going
    exponential; the voltage reflection coefficient at the open ends is +1,
    the current coefficient -1.
    """
    _require_lower_half(omega)
    if terms < 1:
        raise ValueError("terms must be at least 1")
    c0, length, z0 = model.wave_speed, model.length, model.char_impedance
    v = 0j
    i = 0j
    for m in range(terms):
        fwd = cmath.exp(-1j * omega * (x + 2 * length * m) / c0)
        bwd = cmath.exp(1j * omega * (x - 2 * length * (m + 1)) / c0)
        v += fwd + bwd
        i += fwd - bwd
    return z0 * v, i


def open_line_closed_vi(
    model: TLineOpenEnds, omega: complex, x: float
) -> tuple[complex, complex]:
    """Closed-form (V/I1, I/I1) for the open line driven at x=0."""
    c0, length, z0 = model.wave_speed, model.length, model.char_impedance
    kl = omega * length / c0
    klx = omega * (length - x) / c0
    v = -1j * z0 * cmath.cos(klx) / cmath.sin(kl)
    i = cmath.sin(klx) / cmath.sin(kl)
    return v, i


def shorted_line_series_v(
    model: TLineShortedTapped, omega: complex, x: float, terms: int
) -> complex:
    """Partial sum of the shorted-line image series for V(omega,x)/I_T.

    The direct impulse plus four image terms, each multiplied by the
    truncated round-trip train sum_{m<terms} exp(-2i*omega*L*m/c0).
    """
    _require_lower_half(omega)
    if terms < 1:
        raise ValueError("terms must be at least 1")
    c0, length, z0 = model.wave_speed, model.length, model.char_impedance
    xt = model.x_transmit

    def fwd(a):  # delta(t - a/c0)
        return cmath.exp(-1j * omega * a / c0)

    def bwd(a):  # delta(t + a/c0)
        return cmath.exp(1j * omega * a / c0)

    images = (
        fwd(x - xt + 2 * length)
        + bwd(x - xt - 2 * length)
        - fwd(x + xt)
        - bwd(x + xt - 2 * length)
    )
    train = sum(fwd(2 * length * m) for m in range(terms))
    return (z0 / 2) * (fwd(abs(x - xt)) + images * train)


def shorted_line_closed_v(model: TLineShortedTapped, omega: complex, x: float) -> complex:
    """Closed-form V(omega,x)/I_T for the shorted tapped line."""
    c0, length, z0 = model.wave_speed, model.length, model.char_impedance
    xt = model.x_transmit
    k = omega / c0
    return (
        1j
        * z0
        * (cmath.cos(k * (length - x - xt)) - cmath.cos(k * (length - abs(x - xt))))
        / (2 * cmath.sin(k * length))
    )


def lc_transfer_from_impulse(
    model: LcParallel, omega: complex, horizon: float, dt: float
) -> complex:
    """Transform of the LC impulse response by composite trapezoid on [0, horizon].

    Requires enough damping (horizon * |Im(omega)| >= 20) for the truncated
    tail to be negligible, and dt fine relative to the resonance period.
    """
    _require_lower_half(omega)
    if dt >= 0.05 * math.sqrt(model.inductance * model.capacitance):
        raise ValueError("dt too coarse relative to the resonance period")
    if horizon * abs(omega.imag) < 20:
        raise ValueError("horizon too short for the integrand tail to decay")
    n = int(math.ceil(horizon / dt))
    t = np.linspace(0.0, horizon, n + 1)
    w0 = model.resonance
    integrand = (np.cos(w0 * t) / model.capacitance) * np.exp(-1j * omega * t)
    return complex(np.trapezoid(integrand, t))


def lc_transfer_closed(model: LcParallel, omega: complex) -> complex:
    """Closed-form LC transfer function i*omega*L / (1 - LC*omega^2)."""
    lc = model.inductance * model.capacitance
    return 1j * omega * model.inductance / (1 - lc * omega**2)
