"""Effective master-equation coefficients for the driven atom in the squeezed bath.

The finite bandwidth of the reservoir dresses the bare spectra into
effective coefficients (an effective photon number, an effective complex
squeezing parameter, a scaled detuning shift, and a drive correction),
all evaluated at the laser frequency and at one generalized-Rabi offset
above it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .bath import (
    BathConfig,
    lorentzian_widths,
    photon_number_spectrum,
    squeezing_phase,
    two_photon_spectrum_abs,
)
from .errors import DegenerateConfigurationError


@dataclass(frozen=True)
class AtomConfig:
    """Two-level atom and drive parameters.

    Attributes
    ----------
    rabi_frequency:
        Coherent driving strength (>= 0).
    detuning:
        Laser frequency minus atomic transition frequency.
    attenuation:
        Magnitude of the weak transverse coupling energy probed by the
        coherence measurement (>= 0).  It scales the decay parameter of
        the degree of coherence but does not enter the Bloch dynamics.
    atom_frequency:
        Optional atomic transition frequency.  When given together with
        the bath's laser frequency, detuning consistency is enforced.
    """

    rabi_frequency: float
    detuning: float = 0.0
    attenuation: float = 0.0
    atom_frequency: float | None = None

    def __post_init__(self) -> None:
        if self.rabi_frequency < 0.0:
            raise ValueError(f"rabi_frequency must be >= 0, got {self.rabi_frequency}")
        if self.attenuation < 0.0:
            raise ValueError(f"attenuation must be >= 0, got {self.attenuation}")


@dataclass(frozen=True)
class EffectiveParams:
    """Bandwidth-corrected coefficients entering the master equation.

    ``n_eff`` plays the role of a thermal photon number, ``m_eff`` of a
    complex squeezing parameter, ``delta_eff`` is the scaled detuning
    including squeezing-induced shifts, and ``drive_correction`` adds to
    the Rabi frequency in the inversion equation.  ``steady_denominator``
    is the common denominator of the steady-state solution.
    """

    n_eff: float
    m_eff: complex
    delta_eff: float
    drive_correction: complex
    generalized_rabi: float
    rabi_fraction: float
    detuning_fraction: float
    spectral_contrast: complex
    steady_denominator: float
    squeeze_phase: float


class PhysicalityResult(NamedTuple):
    ok: bool
    margin: float


def spectral_contrast(
    bath: BathConfig, generalized_rabi: float, phase: float
) -> complex:
    """Difference of the bath spectra between the laser frequency and one
    generalized-Rabi offset above it.

    Returns N(0) - N(x') - (|M(0)| - |M(x')|) e^{i phase} with
    x' = generalized_rabi.  Vanishes for an unsqueezed bath and for a
    zero offset.
    """
    widths = lorentzian_widths(bath)
    n_center = photon_number_spectrum(0.0, widths)
    n_shifted = photon_number_spectrum(generalized_rabi, widths)
    m_center = two_photon_spectrum_abs(0.0, widths)
    m_shifted = two_photon_spectrum_abs(generalized_rabi, widths)
    return (n_center - n_shifted) - (m_center - m_shifted) * cmath.exp(1j * phase)


def effective_params(atom: AtomConfig, bath: BathConfig) -> EffectiveParams:
    """Derive all effective coefficients from atom and bath configurations.

    Raises
    ------
    DegenerateConfigurationError
        If both the Rabi frequency and the detuning vanish: the dressed
        frame fractions are undefined there.
    ValueError
        If the atom carries an explicit transition frequency inconsistent
        with ``bath.omega_laser - atom.detuning``.
    """
    if atom.atom_frequency is not None:
        implied = bath.omega_laser - atom.atom_frequency
        scale = max(1.0, abs(bath.omega_laser), abs(atom.atom_frequency))
        if abs(implied - atom.detuning) > 1e-9 * scale:
            raise ValueError(
                f"detuning {atom.detuning} inconsistent with "
                f"omega_laser - atom_frequency = {implied}"
            )

    omega = atom.rabi_frequency
    delta = atom.detuning
    omega_prime = math.hypot(omega, delta)
    if omega_prime == 0.0:
        raise DegenerateConfigurationError(
            "rabi_frequency and detuning are both zero; the dressed-frame "
            "fractions are undefined"
        )
    rabi_fraction = omega / omega_prime
    detuning_fraction = delta / omega_prime

    gamma = bath.gamma
    phi = squeezing_phase(bath, delta)
    phase_factor = cmath.exp(1j * phi)

    widths = lorentzian_widths(bath)
    n_shifted = photon_number_spectrum(omega_prime, widths)
    m_shifted = two_photon_spectrum_abs(omega_prime, widths)
    contrast = spectral_contrast(bath, omega_prime, phi)

    transverse_weight = 0.5 * (1.0 - detuning_fraction**2)
    n_eff = n_shifted + transverse_weight * contrast.real
    m_eff = (
        m_shifted * phase_factor
        - transverse_weight * contrast
        + 1j * detuning_fraction * bath.delta_M * phase_factor
    )
    delta_eff = (
        delta / gamma
        - transverse_weight * contrast.imag
        + detuning_fraction * bath.delta_N
    )
    drive_correction = gamma * rabi_fraction * (
        bath.delta_N
        + bath.delta_M * phase_factor
        - 1j * detuning_fraction * contrast
    )

    quarter_block = 0.25 + n_eff * (n_eff + 1.0) - abs(m_eff) ** 2 + delta_eff**2
    denominator = gamma**3 * (1.0 + 2.0 * n_eff) * quarter_block + gamma * omega * (
        (0.5 + n_eff + m_eff.real) * (omega + drive_correction.real)
        + drive_correction.imag * (m_eff.imag + delta_eff)
    )

    return EffectiveParams(
        n_eff=n_eff,
        m_eff=m_eff,
        delta_eff=delta_eff,
        drive_correction=drive_correction,
        generalized_rabi=omega_prime,
        rabi_fraction=rabi_fraction,
        detuning_fraction=detuning_fraction,
        spectral_contrast=contrast,
        steady_denominator=denominator,
        squeeze_phase=phi,
    )


def physicality_check(params: EffectiveParams) -> PhysicalityResult:
    """Check the squeezing bound |m_eff|^2 <= n_eff (n_eff + 1).

    The bound guarantees a completely positive generator.  Violations are
    reported through the signed margin n_eff (n_eff + 1) - |m_eff|^2 and
    are never fatal: parameter sweeps must traverse unphysical corners.
    """
    margin = params.n_eff * (params.n_eff + 1.0) - abs(params.m_eff) ** 2
    return PhysicalityResult(ok=margin >= 0.0, margin=margin)
