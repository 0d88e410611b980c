"""Squeezing-phase condition for a non-decaying coherence.

The decay parameter is proportional to Im(m_eff), which for fixed bath
and drive is a pure sinusoid in the squeezing phase,
a sin(phi) + b cos(phi).  Solving for its zero gives the phase at which
the coherence time diverges.  Two independent solvers are provided: the
closed arctangent form and a bracketing bisection; they must agree and
the bisection is the arbiter of the closed form's sign conventions.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .bath import (
    BathConfig,
    ConstantPhase,
    LinearPhase,
    lorentzian_widths,
    two_photon_spectrum_abs,
)
from .effective import AtomConfig, effective_params
from .errors import DegenerateConfigurationError


@dataclass(frozen=True)
class SustainabilitySolution:
    """Root of Im(m_eff) over the squeezing phase plus the drive bound.

    ``phi_star`` lies on the principal branch (-pi/2, pi/2]; the
    sinusoid's second root sits half a turn away.  ``zeta`` is the
    coefficient entering the arctangent form.  ``omega_tilde_required``
    is the drive fraction a linear phase profile would need; it cannot
    exceed one, hence the feasibility flag.  ``degenerate`` marks an
    identically vanishing Im(m_eff), where every phase is a root.
    """

    method: str
    phi_star: float
    phi_star_companion: float
    zeta: float
    omega_tilde_required: float
    feasible: bool
    residual: float
    degenerate: bool = False


def im_M_tilde(phi: float, atom: AtomConfig, bath: BathConfig) -> float:
    """Im(m_eff) with the bath's phase model pinned to the constant phi."""
    pinned = dataclasses.replace(bath, phase_model=ConstantPhase(phi))
    return effective_params(atom, pinned).m_eff.imag


def _fractions(atom: AtomConfig) -> tuple[float, float]:
    omega_prime = math.hypot(atom.rabi_frequency, atom.detuning)
    if omega_prime == 0.0:
        raise DegenerateConfigurationError(
            "rabi_frequency and detuning are both zero; the dressed-frame "
            "fractions are undefined"
        )
    return omega_prime, atom.detuning / omega_prime


def _zeta(atom: AtomConfig, bath: BathConfig) -> float:
    """Sinusoid coefficient: transverse-weighted spectral difference minus
    the shifted two-photon magnitude."""
    omega_prime, detuning_fraction = _fractions(atom)
    widths = lorentzian_widths(bath)
    m_center = two_photon_spectrum_abs(0.0, widths)
    m_shifted = two_photon_spectrum_abs(omega_prime, widths)
    return (
        0.5 * (1.0 - detuning_fraction**2) * (m_shifted - m_center)
        - m_shifted
    )


def _principal(phi: float) -> float:
    """Map an angle into (-pi/2, pi/2] by half-turn shifts."""
    while phi > 0.5 * math.pi:
        phi -= math.pi
    while phi <= -0.5 * math.pi:
        phi += math.pi
    return phi


def _condition_fields(
    atom: AtomConfig, bath: BathConfig
) -> tuple[float, float, bool]:
    zeta = _zeta(atom, bath)
    if bath.delta_M > 0.0:
        required = math.pi * abs(zeta) / bath.delta_M
    else:
        required = math.inf
    feasible = 0.0 < required <= 1.0
    return zeta, required, feasible


def solve_phi_closed_form(
    atom: AtomConfig, bath: BathConfig
) -> SustainabilitySolution:
    """Phase root from tan(phi) = detuning_fraction * delta_M / zeta.

    A vanishing zeta with a nonvanishing numerator pushes the root to
    the quarter turn; when both vanish the sinusoid is identically zero
    and the solution is degenerate.
    """
    _, detuning_fraction = _fractions(atom)
    zeta, required, feasible = _condition_fields(atom, bath)
    numerator = detuning_fraction * bath.delta_M

    if zeta == 0.0:
        if numerator == 0.0:
            return SustainabilitySolution(
                method="closed_form",
                phi_star=0.0,
                phi_star_companion=math.pi,
                zeta=zeta,
                omega_tilde_required=required,
                feasible=feasible,
                residual=abs(im_M_tilde(0.0, atom, bath)),
                degenerate=True,
            )
        phi_star = 0.5 * math.pi
    else:
        phi_star = math.atan(numerator / zeta)

    return SustainabilitySolution(
        method="closed_form",
        phi_star=phi_star,
        phi_star_companion=phi_star + math.pi,
        zeta=zeta,
        omega_tilde_required=required,
        feasible=feasible,
        residual=abs(im_M_tilde(phi_star, atom, bath)),
    )


def solve_phi_root(
    atom: AtomConfig, bath: BathConfig, scan_points: int = 720
) -> SustainabilitySolution:
    """Phase root by bracketing scan and bisection over a full turn.

    Deliberately ignorant of the arctangent form: the function is
    evaluated through the effective-parameter pipeline only, so this
    route arbitrates the closed form's sign conventions.
    """

    def f(phi: float) -> float:
        return im_M_tilde(phi, atom, bath)

    amplitude = math.hypot(f(0.0), f(0.5 * math.pi))
    widths = lorentzian_widths(bath)
    scale = max(
        1.0, two_photon_spectrum_abs(0.0, widths) + bath.delta_M
    )
    zeta, required, feasible = _condition_fields(atom, bath)
    if amplitude <= 1e-14 * scale:
        return SustainabilitySolution(
            method="bisection",
            phi_star=0.0,
            phi_star_companion=math.pi,
            zeta=zeta,
            omega_tilde_required=required,
            feasible=feasible,
            residual=abs(f(0.0)),
            degenerate=True,
        )

    lo_edge = -0.5 * math.pi
    hi_edge = 1.5 * math.pi
    grid = [
        lo_edge + (hi_edge - lo_edge) * i / scan_points
        for i in range(scan_points + 1)
    ]
    values = [f(phi) for phi in grid]

    root: float | None = None
    for i in range(scan_points):
        lo, hi = grid[i], grid[i + 1]
        flo, fhi = values[i], values[i + 1]
        if flo == 0.0:
            root = lo
            break
        if flo * fhi < 0.0:
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fmid = f(mid)
                if fmid == 0.0 or hi - lo < 1e-15:
                    break
                if flo * fmid < 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fmid
            root = 0.5 * (lo + hi)
            break
    if root is None:
        raise ArithmeticError(
            "no sign change found for Im(m_eff) over a full turn; "
            "the sinusoid scan is inconsistent"
        )

    phi_star = _principal(root)
    return SustainabilitySolution(
        method="bisection",
        phi_star=phi_star,
        phi_star_companion=phi_star + math.pi,
        zeta=zeta,
        omega_tilde_required=required,
        feasible=feasible,
        residual=abs(f(phi_star)),
    )


def omega_tilde_condition(
    atom: AtomConfig, bath: BathConfig
) -> SustainabilitySolution:
    """Drive fraction a linear phase profile needs for sustainability.

    Requires pi |zeta| / delta_M <= 1, since the drive fraction is at
    most one.  Only meaningful under the linear phase model and a
    positive two-photon shift.
    """
    if not isinstance(bath.phase_model, LinearPhase):
        raise ValueError(
            "the drive-fraction condition assumes the linear phase model"
        )
    if bath.delta_M <= 0.0:
        raise ValueError(
            "the drive-fraction condition is undefined for delta_M <= 0"
        )
    closed = solve_phi_closed_form(atom, bath)
    return dataclasses.replace(closed, method="linear_phase_condition")
