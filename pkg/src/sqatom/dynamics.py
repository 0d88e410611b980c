"""Time evolution of the driven atom in the squeezed reservoir.

Two equivalent descriptions are implemented side by side: the closed
linear moment equations for (<sigma_minus>, <sigma_plus>, <sigma_z>) and
the density-matrix master equation with the anomalous two-photon terms.
The moment equations are integrated directly; the master equation is
exponentiated as a 4x4 superoperator.  Their agreement is a strong
internal consistency check and is asserted by the test suite.

Conventions
-----------
Basis order (excited, ground).  sigma_plus = |e><g|, sigma_minus =
|g><e|, sigma_z = |e><e| - |g><g|, expectations <A> = tr(rho A), so
<sigma_minus> = rho[0, 1].  Density matrices are vectorized row-major:
vec(rho) = (rho_ee, rho_eg, rho_ge, rho_gg), under which
vec(A rho B) = kron(A, B^T) vec(rho).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .bath import BathConfig
from .effective import AtomConfig, EffectiveParams
from .errors import SingularDenominatorError, StiffnessError

SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class BlochState:
    """Expectation values (<sigma_minus>, <sigma_plus>, <sigma_z>)."""

    sigma_minus: complex
    sigma_plus: complex
    sigma_z: float

    def as_vector(self) -> np.ndarray:
        return np.array(
            [self.sigma_minus, self.sigma_plus, self.sigma_z], dtype=complex
        )

    @staticmethod
    def from_vector(v: np.ndarray) -> "BlochState":
        return BlochState(
            sigma_minus=complex(v[0]),
            sigma_plus=complex(v[1]),
            sigma_z=float(np.real(v[2])),
        )

    @staticmethod
    def ground() -> "BlochState":
        return BlochState(0.0 + 0.0j, 0.0 + 0.0j, -1.0)


@dataclass(frozen=True)
class SteadyState:
    sigma_minus: complex
    sigma_plus: complex
    sigma_z: float
    denominator: float


@dataclass(frozen=True)
class BlochTrajectory:
    """Time-stamped moment records from an integration run."""

    times: np.ndarray
    sigma_minus: np.ndarray
    sigma_plus: np.ndarray
    sigma_z: np.ndarray

    def state_at(self, index: int) -> BlochState:
        return BlochState(
            sigma_minus=complex(self.sigma_minus[index]),
            sigma_plus=complex(self.sigma_plus[index]),
            sigma_z=float(self.sigma_z[index].real),
        )

    def final_state(self) -> BlochState:
        return self.state_at(len(self.times) - 1)


class DensityDiagnostics(NamedTuple):
    trace: float
    hermiticity_defect: float
    min_eigenvalue: float


def bloch_rhs(
    state: BlochState,
    p: EffectiveParams,
    atom: AtomConfig,
    bath: BathConfig,
) -> BlochState:
    """Right-hand side of the three coupled moment equations.

    Written term by term; the raising-operator equation is the Hermitian
    conjugate of the lowering-operator one.
    """
    gamma = bath.gamma
    omega = atom.rabi_frequency
    n_eff = p.n_eff
    m_eff = p.m_eff
    delta_eff = p.delta_eff
    beta = p.drive_correction

    sm = state.sigma_minus
    sp = state.sigma_plus
    sz = state.sigma_z

    d_sm = (
        -gamma * (0.5 + n_eff - 1j * delta_eff) * sm
        - gamma * m_eff * sp
        + 0.5j * omega * sz
    )
    d_sp = (
        -gamma * m_eff.conjugate() * sm
        - gamma * (0.5 + n_eff + 1j * delta_eff) * sp
        - 0.5j * omega * sz
    )
    d_sz = (
        1j * (omega + beta.conjugate()) * sm
        - 1j * (omega + beta) * sp
        - gamma * (1.0 + 2.0 * n_eff) * sz
        - gamma
    )
    return BlochState(
        sigma_minus=d_sm, sigma_plus=d_sp, sigma_z=float(d_sz.real)
    )


def bloch_coefficients(
    p: EffectiveParams, atom: AtomConfig, bath: BathConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Matrix form (A, b) with d/dt (sm, sp, sz) = A @ (sm, sp, sz) + b."""
    gamma = bath.gamma
    omega = atom.rabi_frequency
    n_eff = p.n_eff
    m_eff = p.m_eff
    delta_eff = p.delta_eff
    beta = p.drive_correction

    a = np.array(
        [
            [-gamma * (0.5 + n_eff - 1j * delta_eff), -gamma * m_eff, 0.5j * omega],
            [
                -gamma * m_eff.conjugate(),
                -gamma * (0.5 + n_eff + 1j * delta_eff),
                -0.5j * omega,
            ],
            [
                1j * (omega + beta.conjugate()),
                -1j * (omega + beta),
                -gamma * (1.0 + 2.0 * n_eff),
            ],
        ],
        dtype=complex,
    )
    b = np.array([0.0, 0.0, -gamma], dtype=complex)
    return a, b


def integrate_bloch(
    initial: BlochState,
    p: EffectiveParams,
    atom: AtomConfig,
    bath: BathConfig,
    t_final: float,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    n_points: int = 201,
    fixed_step: float | None = None,
) -> BlochTrajectory:
    """Integrate the moment equations from t = 0 to t_final.

    Adaptive embedded Runge-Kutta by default.  Passing ``fixed_step``
    switches to a classical fixed-step fourth-order scheme, useful for
    bitwise-reproducible runs.
    """
    if t_final <= 0.0:
        raise ValueError(f"t_final must be > 0, got {t_final}")
    if rtol <= 0.0 or atol <= 0.0:
        raise ValueError("tolerances must be > 0")

    a, b = bloch_coefficients(p, atom, bath)
    times = np.linspace(0.0, t_final, n_points)
    y0 = initial.as_vector()

    if fixed_step is not None:
        ys = _rk4_fixed(a, b, y0, times, fixed_step)
    else:
        sol = solve_ivp(
            lambda t, y: a @ y + b,
            (0.0, t_final),
            y0,
            method="RK45",
            t_eval=times,
            rtol=rtol,
            atol=atol,
        )
        if not sol.success:
            raise StiffnessError(
                f"moment-equation integration failed: {sol.message}"
            )
        ys = sol.y.T

    return BlochTrajectory(
        times=times,
        sigma_minus=ys[:, 0].copy(),
        sigma_plus=ys[:, 1].copy(),
        sigma_z=ys[:, 2].real.copy(),
    )


def _rk4_fixed(
    a: np.ndarray,
    b: np.ndarray,
    y0: np.ndarray,
    times: np.ndarray,
    step: float,
) -> np.ndarray:
    """Classical fourth-order steps between the requested output times."""
    if step <= 0.0:
        raise ValueError(f"fixed_step must be > 0, got {step}")

    def rhs(y: np.ndarray) -> np.ndarray:
        return a @ y + b

    out = np.empty((len(times), 3), dtype=complex)
    out[0] = y0
    y = y0.copy()
    for i in range(1, len(times)):
        span = times[i] - times[i - 1]
        n_sub = max(1, int(np.ceil(span / step)))
        h = span / n_sub
        for _ in range(n_sub):
            k1 = rhs(y)
            k2 = rhs(y + 0.5 * h * k1)
            k3 = rhs(y + 0.5 * h * k2)
            k4 = rhs(y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i] = y
    return out


def steady_state_analytic(
    p: EffectiveParams, atom: AtomConfig, bath: BathConfig
) -> SteadyState:
    """Closed-form stationary moments.

    Raises a singular-denominator error when |d| falls below
    1e-14 * gamma^3.
    """
    gamma = bath.gamma
    omega = atom.rabi_frequency
    d = p.steady_denominator
    if abs(d) < 1e-14 * gamma**3:
        raise SingularDenominatorError(
            f"steady-state denominator {d} is negligible against gamma^3"
        )
    n_eff = p.n_eff
    m_eff = p.m_eff
    delta_eff = p.delta_eff

    quarter_block = (
        0.25 + n_eff * (n_eff + 1.0) - abs(m_eff) ** 2 + delta_eff**2
    )
    sz = -(gamma**3) * quarter_block / d
    sp = (
        1j
        * (omega / (2.0 * d))
        * gamma**2
        * (0.5 + n_eff + m_eff.conjugate() - 1j * delta_eff)
    )
    return SteadyState(
        sigma_minus=sp.conjugate(),
        sigma_plus=sp,
        sigma_z=float(sz),
        denominator=float(d),
    )


def steady_state_numeric(
    p: EffectiveParams, atom: AtomConfig, bath: BathConfig
) -> SteadyState:
    """Stationary moments from the 3x3 linear solve A v = -b.

    Validates the result by substituting back into the term-by-term
    right-hand side; the residual must not exceed 1e-12 * gamma * scale.
    """
    a, b = bloch_coefficients(p, atom, bath)
    try:
        v = np.linalg.solve(a, -b)
    except np.linalg.LinAlgError as exc:
        raise SingularDenominatorError(
            f"moment-equation system is singular: {exc}"
        ) from exc

    state = BlochState.from_vector(v)
    residual = bloch_rhs(state, p, atom, bath).as_vector()
    scale = max(1.0, float(np.max(np.abs(v))))
    if np.max(np.abs(residual)) > 1e-12 * bath.gamma * scale * 10.0:
        raise SingularDenominatorError(
            f"steady-state residual {np.max(np.abs(residual))} too large"
        )
    return SteadyState(
        sigma_minus=state.sigma_minus,
        sigma_plus=state.sigma_plus,
        sigma_z=state.sigma_z,
        denominator=p.steady_denominator,
    )


def steady_state_integrated(
    p: EffectiveParams,
    atom: AtomConfig,
    bath: BathConfig,
    horizon: float | None = None,
) -> SteadyState:
    """Stationary moments from a long-time integration of the moments.

    The default horizon is 100 / (gamma (1 + 2 n_eff)); convergence is
    checked by requiring the residual of the right-hand side to drop
    below 1e-10 * gamma.
    """
    gamma = bath.gamma
    if horizon is None:
        horizon = 100.0 / (gamma * (1.0 + 2.0 * p.n_eff))
    # tighter than the general-purpose defaults: the endpoint residual is
    # solver-error dominated once the transient has died, and it has to
    # clear the 1e-10 * gamma gate below even for stiff parameter sets
    traj = integrate_bloch(
        BlochState.ground(), p, atom, bath, horizon,
        rtol=1e-12, atol=1e-13, n_points=11,
    )
    state = traj.final_state()
    residual = bloch_rhs(state, p, atom, bath).as_vector()
    if np.max(np.abs(residual)) > 1e-10 * gamma:
        raise StiffnessError(
            "long-time integration did not converge to a stationary point: "
            f"residual {np.max(np.abs(residual))}"
        )
    return SteadyState(
        sigma_minus=state.sigma_minus,
        sigma_plus=state.sigma_plus,
        sigma_z=state.sigma_z,
        denominator=p.steady_denominator,
    )


def _left(op: np.ndarray) -> np.ndarray:
    return np.kron(op, IDENTITY)


def _right(op: np.ndarray) -> np.ndarray:
    return np.kron(IDENTITY, op.T)


def _sandwich(left_op: np.ndarray, right_op: np.ndarray) -> np.ndarray:
    return np.kron(left_op, right_op.T)


def master_superoperator(
    p: EffectiveParams, atom: AtomConfig, bath: BathConfig
) -> np.ndarray:
    """4x4 generator L with vec(d rho / dt) = L vec(rho), row-major layout.

    Contains the scaled-detuning commutator, the two thermal-style
    dissipators weighted by n_eff and n_eff + 1, the anomalous two-photon
    sandwich terms weighted by m_eff, the coherent drive, and the
    drive-correction double commutators.
    """
    gamma = bath.gamma
    omega = atom.rabi_frequency
    n_eff = p.n_eff
    m_eff = p.m_eff
    delta_eff = p.delta_eff
    beta = p.drive_correction

    sp, sm, sz = SIGMA_PLUS, SIGMA_MINUS, SIGMA_Z
    commute_z = _left(sz) - _right(sz)

    gen = 0.5j * gamma * delta_eff * commute_z
    gen = gen + 0.5 * gamma * n_eff * (
        2.0 * _sandwich(sp, sm) - _left(sm @ sp) - _right(sm @ sp)
    )
    gen = gen + 0.5 * gamma * (n_eff + 1.0) * (
        2.0 * _sandwich(sm, sp) - _left(sp @ sm) - _right(sp @ sm)
    )
    gen = gen - gamma * m_eff * _sandwich(sp, sp)
    gen = gen - gamma * m_eff.conjugate() * _sandwich(sm, sm)
    gen = gen - 0.5j * omega * (_left(sp + sm) - _right(sp + sm))
    gen = gen + 0.25j * (
        beta * (_left(sp) - _right(sp)) @ commute_z
        - beta.conjugate() * (_left(sm) - _right(sm)) @ commute_z
    )
    return gen


def propagate_density(
    rho0: np.ndarray, generator: np.ndarray, t: float
) -> np.ndarray:
    """Evolve a 2x2 density matrix for a time t under the 4x4 generator."""
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t == 0.0:
        return np.array(rho0, dtype=complex)
    vec = np.asarray(rho0, dtype=complex).reshape(4)
    evolved = expm(generator * t) @ vec
    return evolved.reshape(2, 2)


def density_trajectory(
    rho0: np.ndarray, generator: np.ndarray, times: np.ndarray
) -> list[np.ndarray]:
    """Evolve through a uniformly spaced time grid by repeated stepping.

    One matrix exponential per distinct step length; the semigroup
    property makes repeated application exact for the uniform grid.
    """
    times = np.asarray(times, dtype=float)
    out: list[np.ndarray] = []
    vec = np.asarray(rho0, dtype=complex).reshape(4)
    steps = np.diff(times)
    if len(times) > 0 and times[0] != 0.0:
        vec = expm(generator * times[0]) @ vec
    propagator = None
    last_h = None
    for i, t in enumerate(times):
        out.append(vec.reshape(2, 2).copy())
        if i == len(times) - 1:
            break
        h = steps[i]
        if propagator is None or h != last_h:
            propagator = expm(generator * h)
            last_h = h
        vec = propagator @ vec
    return out


def bloch_from_density(rho: np.ndarray) -> BlochState:
    return BlochState(
        sigma_minus=complex(rho[0, 1]),
        sigma_plus=complex(rho[1, 0]),
        sigma_z=float((rho[0, 0] - rho[1, 1]).real),
    )


def density_from_bloch(state: BlochState) -> np.ndarray:
    rho = np.array(
        [
            [0.5 * (1.0 + state.sigma_z), state.sigma_minus],
            [state.sigma_plus, 0.5 * (1.0 - state.sigma_z)],
        ],
        dtype=complex,
    )
    return rho


def density_diagnostics(rho: np.ndarray) -> DensityDiagnostics:
    """Trace, Hermiticity defect, and smallest eigenvalue of a candidate
    density matrix.  Positivity violations are reported, never raised:
    the generator is not completely positive outside the squeezing bound
    and sweeps must pass through that region.
    """
    trace = float(np.trace(rho).real)
    defect = float(np.linalg.norm(rho - rho.conjugate().T))
    hermitian_part = 0.5 * (rho + rho.conjugate().T)
    min_eig = float(np.min(np.linalg.eigvalsh(hermitian_part)))
    return DensityDiagnostics(
        trace=trace, hermiticity_defect=defect, min_eigenvalue=min_eig
    )
