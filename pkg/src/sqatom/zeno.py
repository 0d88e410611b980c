"""Survival weak values, dwell times, and the coherence/dwell ratio.

A weak measurement with pre- and post-selection over a window
[t_i, t_f] assigns the atom a survival weak value at intermediate
times.  Integrating it across the window gives the weak-value dwell
time; its small-window behaviour against the coherence time quantifies
how strongly repeated interrogation pins the state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple


@dataclass(frozen=True)
class MeasurementWindow:
    """Interaction window with optional post-selection energy offset.

    ``k_delta_E`` is the energy (in frequency units) separating the
    post-selected state from the surviving one; zero selects the
    surviving state itself and makes the weak value real.
    """

    t_i: float
    t_f: float
    k_delta_E: float = 0.0

    def __post_init__(self) -> None:
        if not self.t_f > self.t_i:
            raise ValueError(
                f"t_f must exceed t_i, got t_i={self.t_i}, t_f={self.t_f}"
            )

    @property
    def tau_m(self) -> float:
        return self.t_f - self.t_i

    @classmethod
    def from_duration(
        cls, tau_m: float, t_i: float = 0.0, k_delta_E: float = 0.0
    ) -> "MeasurementWindow":
        return cls(t_i=t_i, t_f=t_i + tau_m, k_delta_E=k_delta_E)


class RatioResult(NamedTuple):
    ratio: float
    sustainable: bool


def survival_weak_value(
    t: float, window: MeasurementWindow, gamma_decay: float
) -> complex:
    """Weak value of the survival projector at time t inside the window.

    For a zero post-selection offset the value is real, starts at 1 at
    t_i and falls to 0 at t_f.  With a nonzero offset the general
    complex expression is used.
    """
    if gamma_decay < 0.0:
        raise ValueError(f"gamma_decay must be >= 0, got {gamma_decay}")
    if not (window.t_i <= t <= window.t_f):
        raise ValueError(
            f"t={t} outside the measurement window "
            f"[{window.t_i}, {window.t_f}]"
        )
    if window.k_delta_E != 0.0:
        return survival_weak_value_general(t, window, gamma_decay)

    tau_m = window.tau_m
    remaining = window.t_f - t
    if gamma_decay == 0.0:
        return complex(remaining / tau_m)
    decay = math.exp(-gamma_decay * (t - window.t_i))
    numerator = -math.expm1(-gamma_decay * remaining)
    denominator = -math.expm1(-gamma_decay * tau_m)
    return complex(decay * numerator / denominator)


def survival_weak_value_general(
    t: float, window: MeasurementWindow, gamma_decay: float
) -> complex:
    """Unreduced complex form of the survival weak value.

    Valid for any post-selection offset; indeterminate (0/0) when both
    the decay and the offset vanish, which is rejected.  A window whose
    offset phase winds through a full turn makes the denominator vanish
    and is rejected as a degenerate post-selection.
    """
    if gamma_decay < 0.0:
        raise ValueError(f"gamma_decay must be >= 0, got {gamma_decay}")
    if not (window.t_i <= t <= window.t_f):
        raise ValueError(
            f"t={t} outside the measurement window "
            f"[{window.t_i}, {window.t_f}]"
        )
    rate = -gamma_decay + 1j * window.k_delta_E
    if rate == 0.0:
        raise ValueError(
            "survival weak value is indeterminate at zero decay and zero "
            "post-selection offset; use the real form"
        )
    denominator = 1.0 - cmath.exp(rate * window.tau_m)
    if abs(denominator) < 1e-14:
        raise ValueError(
            "degenerate post-selection: the offset phase over the window "
            "is an integer number of turns"
        )
    numerator = 1.0 - cmath.exp(rate * (window.t_f - t))
    return math.exp(-gamma_decay * (t - window.t_i)) * numerator / denominator


def dwell_time_weak(gamma_decay: float, tau_m: float) -> float:
    """Weak-value dwell time over a window of length tau_m.

    Closed form (1/Gamma)[1 - Gamma tau_m / (e^{Gamma tau_m} - 1)].
    The Gamma -> 0 limit tau_m / 2 is a removable singularity; small
    arguments switch to the series tau_m (1/2 - u/12 + u^3/720) to dodge
    the cancellation.  The closed form is evaluated with negative
    exponents, u/(e^u - 1) = u e^{-u}/(1 - e^{-u}), so huge u saturates
    at 1/Gamma instead of overflowing.
    """
    if gamma_decay < 0.0:
        raise ValueError(f"gamma_decay must be >= 0, got {gamma_decay}")
    if tau_m <= 0.0:
        raise ValueError(f"tau_m must be > 0, got {tau_m}")
    u = gamma_decay * tau_m
    if u < 1e-3:
        return tau_m * (0.5 - u / 12.0 + u**3 / 720.0)
    return (1.0 - u * math.exp(-u) / -math.expm1(-u)) / gamma_decay


def dwell_time_frequent(gamma_decay: float, tau_m: float) -> float:
    """Frequent-interrogation approximation 1 / (2/tau_m + Gamma).

    Accurate when tau_m is short against 1/Gamma; returned regardless of
    regime so callers can display the discrepancy.
    """
    if gamma_decay < 0.0:
        raise ValueError(f"gamma_decay must be >= 0, got {gamma_decay}")
    if tau_m <= 0.0:
        raise ValueError(f"tau_m must be > 0, got {tau_m}")
    return 1.0 / (2.0 / tau_m + gamma_decay)


def coherence_dwell_ratio(gamma_decay: float, tau_m: float) -> RatioResult:
    """Ratio of coherence time to frequent-limit dwell time.

    Equals 1/2 + 1/(tau_m Gamma); the coherence outlives the dwell
    exactly when the ratio exceeds one, which happens for
    tau_m Gamma < 2.  Zero decay gives an infinite, sustainable ratio.
    """
    if gamma_decay < 0.0:
        raise ValueError(f"gamma_decay must be >= 0, got {gamma_decay}")
    if tau_m <= 0.0:
        raise ValueError(f"tau_m must be > 0, got {tau_m}")
    if gamma_decay == 0.0:
        return RatioResult(ratio=math.inf, sustainable=True)
    ratio = 0.5 + 1.0 / (tau_m * gamma_decay)
    return RatioResult(ratio=ratio, sustainable=ratio > 1.0)
