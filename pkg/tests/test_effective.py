"""Effective coefficients: contrast term, dressed parameters, physicality."""

import cmath
import math

import numpy as np
import pytest

from sqatom.bath import BathConfig, ConstantPhase, lorentzian_widths, photon_number_spectrum, two_photon_spectrum_abs
from sqatom.effective import (
    AtomConfig,
    EffectiveParams,
    effective_params,
    physicality_check,
    spectral_contrast,
)
from sqatom.errors import DegenerateConfigurationError


def _flat_reference(gamma, epsilon, omega, delta, phi, delta_n, delta_m):
    """Second, independently written evaluation of the full coefficient set.

    Deliberately flat: no shared helpers with the package beyond arithmetic.
    Returns a dict keyed like EffectiveParams fields.
    """
    lam = 0.5 * gamma + epsilon
    mu = 0.5 * gamma - epsilon
    pref = (lam * lam - mu * mu) / 4.0

    def n_of(x):
        return pref * (1.0 / (x * x + mu * mu) - 1.0 / (x * x + lam * lam))

    def m_of(x):
        return pref * (1.0 / (x * x + mu * mu) + 1.0 / (x * x + lam * lam))

    op = math.hypot(omega, delta)
    ot = omega / op
    dt = delta / op
    e_phi = cmath.exp(1j * phi)
    weight = 0.5 * (1.0 - dt * dt)

    ups = (n_of(0.0) - n_of(op)) - (m_of(0.0) - m_of(op)) * e_phi
    n_eff = n_of(op) + weight * ups.real
    m_eff = m_of(op) * e_phi - weight * ups + 1j * dt * delta_m * e_phi
    d_eff = delta / gamma - weight * ups.imag + dt * delta_n
    beta = gamma * ot * (delta_n + delta_m * e_phi - 1j * dt * ups)

    quarter = 0.25 + n_eff * (n_eff + 1.0) - abs(m_eff) ** 2 + d_eff * d_eff
    d = gamma**3 * (1.0 + 2.0 * n_eff) * quarter + gamma * omega * (
        (0.5 + n_eff + m_eff.real) * (omega + beta.real) + beta.imag * (m_eff.imag + d_eff)
    )
    return {
        "n_eff": n_eff,
        "m_eff": m_eff,
        "delta_eff": d_eff,
        "drive_correction": beta,
        "generalized_rabi": op,
        "rabi_fraction": ot,
        "detuning_fraction": dt,
        "spectral_contrast": ups,
        "steady_denominator": d,
    }


def _close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_reference_point_against_flat_evaluation():
    gamma, epsilon, omega, delta = 1.0, 0.25, 1.0, 0.2
    phi, delta_n, delta_m = 0.0, 0.1, 0.1
    atom = AtomConfig(rabi_frequency=omega, detuning=delta)
    bath = BathConfig(gamma=gamma, epsilon=epsilon, phase_model=ConstantPhase(phi),
                      delta_N=delta_n, delta_M=delta_m)
    p = effective_params(atom, bath)
    ref = _flat_reference(gamma, epsilon, omega, delta, phi, delta_n, delta_m)
    assert _close(p.n_eff, ref["n_eff"])
    assert _close(p.m_eff, ref["m_eff"])
    assert _close(p.delta_eff, ref["delta_eff"])
    assert _close(p.drive_correction, ref["drive_correction"])
    assert _close(p.generalized_rabi, ref["generalized_rabi"])
    assert _close(p.spectral_contrast, ref["spectral_contrast"])
    assert _close(p.steady_denominator, ref["steady_denominator"])


def test_random_points_against_flat_evaluation():
    rng = np.random.default_rng(101)
    for _ in range(300):
        gamma = float(rng.uniform(0.3, 3.0))
        epsilon = float(rng.uniform(0.0, 0.49) * gamma)
        omega = float(rng.uniform(0.05, 5.0) * gamma)
        delta = float(rng.uniform(-3.0, 3.0) * gamma)
        phi = float(rng.uniform(-math.pi, math.pi))
        delta_n = float(rng.uniform(0.0, 0.5))
        delta_m = float(rng.uniform(0.0, 0.5))
        atom = AtomConfig(rabi_frequency=omega, detuning=delta)
        bath = BathConfig(gamma=gamma, epsilon=epsilon, phase_model=ConstantPhase(phi),
                          delta_N=delta_n, delta_M=delta_m)
        p = effective_params(atom, bath)
        ref = _flat_reference(gamma, epsilon, omega, delta, phi, delta_n, delta_m)
        for key, value in ref.items():
            assert _close(getattr(p, key), value), key


def test_contrast_vanishes_without_squeezing():
    bath = BathConfig(gamma=1.0, epsilon=0.0)
    assert spectral_contrast(bath, 2.0, 0.7) == 0.0


def test_contrast_vanishes_at_zero_splitting():
    bath = BathConfig(gamma=1.0, epsilon=0.3)
    assert spectral_contrast(bath, 0.0, 1.1) == 0.0


def test_contrast_frozen_value():
    # gamma = 1, epsilon = 1/4, splitting 1, phase 0:
    # (16/9 - 16/425) - (20/9 - 84/425) = -64/225
    bath = BathConfig(gamma=1.0, epsilon=0.25)
    value = spectral_contrast(bath, 1.0, 0.0)
    assert value.real == pytest.approx(-64.0 / 225.0, rel=1e-13)
    assert value.imag == 0.0


def test_contrast_periodic_in_phase():
    bath = BathConfig(gamma=1.0, epsilon=0.2)
    for phi in [-2.0, 0.4, 1.9]:
        a = spectral_contrast(bath, 1.5, phi)
        b = spectral_contrast(bath, 1.5, phi + 2.0 * math.pi)
        assert abs(a - b) <= 1e-12


def test_vacuum_reduction_is_exact():
    atom = AtomConfig(rabi_frequency=1.0, detuning=0.5)
    bath = BathConfig(gamma=2.0, epsilon=0.0)
    p = effective_params(atom, bath)
    assert p.n_eff == 0.0
    assert p.m_eff == 0.0
    assert p.drive_correction == 0.0
    assert p.delta_eff == 0.25
    assert p.spectral_contrast == 0.0


def test_resonant_two_photon_coefficient():
    # on resonance the dressed two-photon coefficient collapses to
    # |M(Omega)| e^{i phi} - contrast/2
    gamma, epsilon, omega, phi = 1.0, 0.25, 2.0, 0.9
    atom = AtomConfig(rabi_frequency=omega)
    bath = BathConfig(gamma=gamma, epsilon=epsilon, phase_model=ConstantPhase(phi))
    p = effective_params(atom, bath)
    widths = lorentzian_widths(bath)
    expected = (two_photon_spectrum_abs(omega, widths) * cmath.exp(1j * phi)
                - 0.5 * spectral_contrast(bath, omega, phi))
    assert abs(p.m_eff - expected) <= 1e-14
    assert p.detuning_fraction == 0.0
    assert p.rabi_fraction == 1.0


def test_fraction_identity():
    rng = np.random.default_rng(31)
    for _ in range(100):
        omega = float(rng.uniform(0.0, 4.0))
        delta = float(rng.uniform(-4.0, 4.0))
        if math.hypot(omega, delta) < 1e-3:
            continue
        p = effective_params(AtomConfig(rabi_frequency=omega, detuning=delta),
                             BathConfig(gamma=1.0, epsilon=0.2))
        assert p.rabi_fraction**2 + p.detuning_fraction**2 == pytest.approx(1.0, abs=1e-12)
        assert p.generalized_rabi == pytest.approx(math.hypot(omega, delta), rel=1e-15)


def test_degenerate_configuration_rejected():
    with pytest.raises(DegenerateConfigurationError):
        effective_params(AtomConfig(rabi_frequency=0.0, detuning=0.0),
                         BathConfig(gamma=1.0))


def test_atom_frequency_consistency():
    atom = AtomConfig(rabi_frequency=1.0, detuning=0.2, atom_frequency=9.8)
    bath = BathConfig(gamma=1.0, epsilon=0.1, omega_laser=10.0)
    effective_params(atom, bath)  # consistent: no raise
    bad = AtomConfig(rabi_frequency=1.0, detuning=0.3, atom_frequency=9.8)
    with pytest.raises(ValueError):
        effective_params(bad, bath)


def test_atom_config_validation():
    with pytest.raises(ValueError):
        AtomConfig(rabi_frequency=-1.0)
    with pytest.raises(ValueError):
        AtomConfig(rabi_frequency=1.0, attenuation=-0.5)


def _bare_params(n_eff, m_eff, delta_eff=0.0):
    return EffectiveParams(
        n_eff=n_eff, m_eff=m_eff, delta_eff=delta_eff, drive_correction=0j,
        generalized_rabi=1.0, rabi_fraction=1.0, detuning_fraction=0.0,
        spectral_contrast=0j, steady_denominator=1.0, squeeze_phase=0.0)


def test_physicality_examples():
    ok, margin = physicality_check(_bare_params(0.0, 0j))
    assert ok and margin == 0.0
    ok, margin = physicality_check(_bare_params(1.0, 1.0 + 0j))
    assert ok and margin == pytest.approx(1.0, rel=1e-15)
    ok, margin = physicality_check(_bare_params(0.1, 0.5 + 0j))
    assert not ok
    assert margin == pytest.approx(-0.14, rel=1e-12)


def test_denominator_positive_on_physical_draws():
    rng = np.random.default_rng(47)
    for _ in range(400):
        gamma = float(rng.uniform(0.3, 3.0))
        epsilon = float(rng.uniform(0.0, 0.49) * gamma)
        omega = float(rng.uniform(0.05, 4.0) * gamma)
        delta = float(rng.uniform(-2.0, 2.0) * gamma)
        phi = float(rng.uniform(-math.pi, math.pi))
        atom = AtomConfig(rabi_frequency=omega, detuning=delta)
        bath = BathConfig(gamma=gamma, epsilon=epsilon, phase_model=ConstantPhase(phi))
        p = effective_params(atom, bath)
        ok, _ = physicality_check(p)
        if not ok:
            continue
        if p.steady_denominator <= 0.0:
            pytest.fail(
                "nonpositive denominator at gamma=%r epsilon=%r omega=%r delta=%r phi=%r: d=%r"
                % (gamma, epsilon, omega, delta, phi, p.steady_denominator))


def test_physicality_margin_matches_flat_evaluation():
    # the check itself never raises; its margin must track an
    # independent evaluation of n(n+1) - |m|^2
    rng = np.random.default_rng(59)
    for _ in range(100):
        gamma = float(rng.uniform(0.3, 3.0))
        epsilon = float(rng.uniform(0.0, 0.49) * gamma)
        omega = float(rng.uniform(0.05, 4.0) * gamma)
        delta = float(rng.uniform(-2.0, 2.0) * gamma)
        phi = float(rng.uniform(-math.pi, math.pi))
        p = effective_params(
            AtomConfig(rabi_frequency=omega, detuning=delta),
            BathConfig(gamma=gamma, epsilon=epsilon, phase_model=ConstantPhase(phi)))
        ref = _flat_reference(gamma, epsilon, omega, delta, phi, 0.0, 0.0)
        expected = ref["n_eff"] * (ref["n_eff"] + 1.0) - abs(ref["m_eff"]) ** 2
        ok, margin = physicality_check(p)
        assert margin == pytest.approx(expected, rel=1e-10, abs=1e-12)
        assert ok == (margin >= 0.0)
