"""Squeezing spectra of a finite-bandwidth squeezed vacuum.

The reservoir is a cavity-based squeezed vacuum characterized by two
Lorentzian spectra: a photon-number spectrum N(x) and a two-photon
correlation magnitude |M(x)|, both functions of the offset x from the
laser (carrier) frequency.  Their widths are set by the cavity damping
rate and the parametric amplification constant.  The squeezing phase is
either a constant or a linear function of the detuning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ConstantPhase:
    """Squeezing phase fixed at ``value`` for every detuning."""

    value: float = 0.0

    def at(self, detuning: float) -> float:
        return self.value


@dataclass(frozen=True)
class LinearPhase:
    """Squeezing phase varying linearly with detuning.

    phase(detuning) = phase_at_atom_freq + pi * detuning / rabi_frequency

    The slope is fixed by the Rabi frequency of the drive; the offset is
    the phase at zero detuning (often taken to be 0).
    """

    phase_at_atom_freq: float = 0.0
    rabi_frequency: float = 1.0

    def __post_init__(self) -> None:
        if self.rabi_frequency <= 0.0:
            raise ValueError(
                f"LinearPhase requires rabi_frequency > 0, got {self.rabi_frequency}"
            )

    def at(self, detuning: float) -> float:
        return self.phase_at_atom_freq + math.pi * detuning / self.rabi_frequency


PhaseModel = ConstantPhase | LinearPhase


@dataclass(frozen=True)
class BathConfig:
    """Parameters of the finite-bandwidth squeezed reservoir.

    Attributes
    ----------
    gamma:
        Cavity damping rate (frequency units, > 0).  Sets the overall
        relaxation scale of the atom as well.
    epsilon:
        Real parametric amplification constant (frequency units).  Must
        stay below threshold, 0 <= epsilon < gamma / 2, so both spectral
        widths remain positive.
    omega_laser:
        Laser (carrier) frequency.  The spectra only depend on offsets
        from it, so this is bookkeeping for detuning consistency checks.
    phase_model:
        Squeezing-phase model, constant or linear in detuning.
    delta_N, delta_M:
        Squeezing-induced shift parameters (dimensionless).  No closed
        form is available for them; they are user inputs, default 0.
    """

    gamma: float
    epsilon: float = 0.0
    omega_laser: float = 0.0
    phase_model: PhaseModel = ConstantPhase(0.0)
    delta_N: float = 0.0
    delta_M: float = 0.0

    def __post_init__(self) -> None:
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.epsilon < 0.0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.epsilon >= 0.5 * self.gamma:
            raise ValueError(
                "epsilon must stay below the amplification threshold gamma/2 "
                f"(got epsilon={self.epsilon}, gamma={self.gamma}); at threshold "
                "the narrow spectral width vanishes and the spectra diverge"
            )


@dataclass(frozen=True)
class LorentzianWidths:
    """Widths of the two Lorentzians making up the squeezing spectra.

    broad = gamma/2 + epsilon, narrow = gamma/2 - epsilon; their sum is
    the cavity damping rate and broad >= narrow > 0 below threshold.
    """

    broad: float
    narrow: float

    def __post_init__(self) -> None:
        if not (self.broad >= self.narrow > 0.0):
            raise ValueError(
                f"widths require broad >= narrow > 0, got ({self.broad}, {self.narrow})"
            )


def lorentzian_widths(cfg: BathConfig) -> LorentzianWidths:
    """Spectral widths (gamma/2 + epsilon, gamma/2 - epsilon) of the bath."""
    return LorentzianWidths(
        broad=0.5 * cfg.gamma + cfg.epsilon,
        narrow=0.5 * cfg.gamma - cfg.epsilon,
    )


def photon_number_spectrum(x: float, widths: LorentzianWidths) -> float:
    """Thermal-like photon-number spectrum N(x) at offset x from the laser.

    N(x) = ((broad^2 - narrow^2)/4) * (1/(x^2 + narrow^2) - 1/(x^2 + broad^2))

    Nonnegative, even in x, and vanishing identically for epsilon = 0.
    """
    b2 = widths.broad * widths.broad
    n2 = widths.narrow * widths.narrow
    x2 = x * x
    return 0.25 * (b2 - n2) * (1.0 / (x2 + n2) - 1.0 / (x2 + b2))


def two_photon_spectrum_abs(x: float, widths: LorentzianWidths) -> float:
    """Magnitude |M(x)| of the two-photon correlation spectrum at offset x.

    |M(x)| = ((broad^2 - narrow^2)/4) * (1/(x^2 + narrow^2) + 1/(x^2 + broad^2))

    Satisfies |M(x)|^2 = N(x) (N(x) + 1) identically: the cavity output is
    a minimum-uncertainty squeezed state at every frequency.
    """
    b2 = widths.broad * widths.broad
    n2 = widths.narrow * widths.narrow
    x2 = x * x
    return 0.25 * (b2 - n2) * (1.0 / (x2 + n2) + 1.0 / (x2 + b2))


def squeezing_phase(cfg: BathConfig, detuning: float) -> float:
    """Evaluate the configured squeezing-phase model at the given detuning."""
    return cfg.phase_model.at(detuning)
