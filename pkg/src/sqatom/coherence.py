"""Degree of temporal coherence and the coherence time.

The effective evolution between interrogations is exp[i alpha t -
Gamma t]; its normalized autocorrelation decays at the rate Gamma and
the coherence time is the integrated squared magnitude, 1/(2 Gamma).
The squeezed-bath pipeline produces Gamma from the effective
two-photon coefficient, so a purely real m_eff freezes the decay and
the coherence time diverges.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy.integrate import quad

from .bath import BathConfig
from .effective import AtomConfig, EffectiveParams, effective_params
from .errors import QuadratureError, SingularDenominatorError
from .zeno import coherence_dwell_ratio, dwell_time_weak

# relative level below which Im m_eff is regarded as exactly zero and
# the decay parameter snaps to 0 (coherence time reported infinite)
IM_M_SNAP = 1e-12


@dataclass(frozen=True)
class EvolutionSpec:
    """Oscillation frequency and decay rate of the effective evolution."""

    oscillation: float
    decay_rate: float

    def __post_init__(self) -> None:
        if self.decay_rate < 0.0:
            raise ValueError(
                f"decay_rate must be >= 0, got {self.decay_rate}"
            )


@dataclass(frozen=True)
class TimescaleReport:
    """Coherence and dwell figures for one parameter point.

    ``dwell_time`` and ``ratio`` are filled only when a window length is
    supplied and the decay parameter is non-negative.  ``amplifying``
    marks a negative decay parameter (gain instead of damping); the
    coherence integral then diverges and the dwell figures are withheld.
    """

    decay_rate: float
    coherence_time: float
    denominator: float
    im_m_eff: float
    oscillation: float
    dwell_time: float | None = None
    ratio: float | None = None
    amplifying: bool = False


def degree_of_coherence(spec: EvolutionSpec, tau: float) -> complex:
    """Normalized temporal coherence exp[i alpha tau - Gamma tau]."""
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    return cmath.exp((1j * spec.oscillation - spec.decay_rate) * tau)


def _sinhc(x: float) -> float:
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    return math.sinh(x) / x


def coherence_function_windowed(
    spec: EvolutionSpec, tau: float, half_width: float
) -> complex:
    """Finite-window autocorrelation of the evolution operator.

    Averaging conj(U(t)) U(t + tau) over t in [-T, T] gives
    sinh(2 Gamma T)/(2 Gamma T) times the infinite-window coherence; the
    prefactor cancels in any normalized ratio.
    """
    if half_width <= 0.0:
        raise ValueError(f"half_width must be > 0, got {half_width}")
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    prefactor = _sinhc(2.0 * spec.decay_rate * half_width)
    return prefactor * cmath.exp(
        (1j * spec.oscillation - spec.decay_rate) * tau
    )


def coherence_function_numeric(
    spec: EvolutionSpec,
    tau: float,
    half_width: float,
    tol: float = 1e-10,
) -> complex:
    """Finite-window autocorrelation by adaptive quadrature.

    Integrates conj(U(t)) U(t + tau) over the window and divides by its
    length.  Exists to validate the closed windowed form; they must
    agree to quadrature accuracy.
    """
    if half_width <= 0.0:
        raise ValueError(f"half_width must be > 0, got {half_width}")
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")

    rate = 1j * spec.oscillation - spec.decay_rate

    def integrand_re(t: float) -> float:
        return (cmath.exp(rate.conjugate() * t) * cmath.exp(rate * (t + tau))).real

    def integrand_im(t: float) -> float:
        return (cmath.exp(rate.conjugate() * t) * cmath.exp(rate * (t + tau))).imag

    val_re, err_re = quad(
        integrand_re, -half_width, half_width, epsabs=1e-13, epsrel=1e-12,
        limit=400,
    )
    val_im, err_im = quad(
        integrand_im, -half_width, half_width, epsabs=1e-13, epsrel=1e-12,
        limit=400,
    )
    value = complex(val_re, val_im) / (2.0 * half_width)
    error = (err_re + err_im) / (2.0 * half_width)
    if error > tol * max(1.0, abs(value)):
        raise QuadratureError(
            f"window autocorrelation error estimate {error} above "
            f"tolerance {tol}"
        )
    return value


def coherence_time(decay_rate: float) -> float:
    """Integrated squared coherence, 1/(2 Gamma); infinite at zero decay."""
    if decay_rate < 0.0:
        raise ValueError(f"decay_rate must be >= 0, got {decay_rate}")
    if decay_rate == 0.0:
        return math.inf
    return 1.0 / (2.0 * decay_rate)


def decay_parameter_squeezed(
    atom: AtomConfig, p: EffectiveParams, bath: BathConfig
) -> float:
    """Decay parameter |xi| Omega gamma^2 Im(m_eff) / (4 d).

    May come out negative when Im(m_eff) and d have opposite signs;
    that is amplification, reported as-is.
    """
    d = p.steady_denominator
    if abs(d) < 1e-14 * bath.gamma**3:
        raise SingularDenominatorError(
            f"steady-state denominator {d} is negligible against gamma^3"
        )
    return (
        atom.attenuation
        * atom.rabi_frequency
        * bath.gamma**2
        * p.m_eff.imag
        / (4.0 * d)
    )


def steady_oscillation(
    atom: AtomConfig, p: EffectiveParams, bath: BathConfig
) -> float:
    """Oscillation frequency of the effective steady evolution.

    Reported for completeness; the coherence magnitude, and with it the
    coherence time, never depends on it.
    """
    gamma = bath.gamma
    omega = atom.rabi_frequency
    d = p.steady_denominator
    quarter_block = (
        0.25
        + p.n_eff * (p.n_eff + 1.0)
        - abs(p.m_eff) ** 2
        + p.delta_eff**2
    )
    return 0.5 * (
        omega * gamma**3 * quarter_block / d
        - atom.attenuation * omega * gamma**2 * p.delta_eff / (2.0 * d)
    )


def coherence_time_squeezed(
    atom: AtomConfig,
    bath: BathConfig,
    tau_m: float | None = None,
) -> TimescaleReport:
    """Full pipeline from configurations to coherence (and dwell) times.

    Im(m_eff) within IM_M_SNAP of zero, relatively, is treated as an
    exact zero so that the sustainable-phase solution reports an
    infinite coherence time instead of a rounding-noise-sized decay.
    """
    p = effective_params(atom, bath)
    rate = decay_parameter_squeezed(atom, p, bath)
    if abs(p.m_eff.imag) <= IM_M_SNAP * max(1.0, abs(p.m_eff)):
        rate = 0.0

    amplifying = rate < 0.0
    if amplifying:
        warnings.warn(
            "negative decay parameter: the squeezed channel amplifies "
            "this configuration; dwell figures withheld",
            RuntimeWarning,
            stacklevel=2,
        )
        tau_c = math.inf
    else:
        tau_c = coherence_time(rate)

    dwell: float | None = None
    ratio: float | None = None
    if tau_m is not None and not amplifying:
        dwell = dwell_time_weak(rate, tau_m)
        ratio = coherence_dwell_ratio(rate, tau_m).ratio

    return TimescaleReport(
        decay_rate=rate,
        coherence_time=tau_c,
        denominator=p.steady_denominator,
        im_m_eff=p.m_eff.imag,
        oscillation=steady_oscillation(atom, p, bath),
        dwell_time=dwell,
        ratio=ratio,
        amplifying=amplifying,
    )
