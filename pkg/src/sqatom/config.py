"""Flat key = value run configuration for the command-line front end.

The format is deliberately plain: one ``key = value`` assignment per
line, ``#`` comments, no sections, no nesting.  Unknown keys and
duplicate assignments are rejected with their line numbers so that a
typo cannot silently fall back to a default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bath import BathConfig, ConstantPhase, LinearPhase
from .effective import AtomConfig
from .errors import ConfigError
from .zeno import MeasurementWindow


@dataclass(frozen=True)
class Tolerances:
    integrator_rtol: float = 1e-8
    integrator_atol: float = 1e-10
    quadrature_tol: float = 1e-10
    root_tol: float = 1e-12


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter: name, range, point count, spacing."""

    parameter: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class TrajectorySettings:
    t_final: float = 10.0
    n_points: int = 201
    init_sigma_z: float = -1.0
    init_re_sigma_minus: float = 0.0
    init_im_sigma_minus: float = 0.0


@dataclass(frozen=True)
class SpectrumGrid:
    x_min: float
    x_max: float
    x_points: int = 1001


@dataclass(frozen=True)
class RunConfig:
    atom: AtomConfig
    bath: BathConfig
    measurement: MeasurementWindow | None
    sweep: SweepSpec | None
    outputs: tuple[str, ...]
    tolerances: Tolerances
    trajectory: TrajectorySettings
    grid: SpectrumGrid
    gamma_override: float | None
    t_i: float
    k_delta_E: float


_FLOAT_KEYS = {
    "gamma", "epsilon", "Omega", "Delta", "omega_laser", "omega_A",
    "xi_abs", "delta_N", "delta_M", "phi0", "phi_at_omega_A",
    "tau_m", "t_i", "k_delta_E", "Gamma",
    "t_final", "init_sigma_z", "init_re_sigma_minus", "init_im_sigma_minus",
    "x_min", "x_max",
    "integrator_rtol", "integrator_atol", "quadrature_tol", "root_tol",
}
_INT_KEYS = {"n_points", "x_points"}
_STRING_KEYS = {"phase_model", "outputs", "sweep"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STRING_KEYS

SWEEPABLE = {
    "gamma", "epsilon", "Omega", "Delta", "phi0", "phi_at_omega_A",
    "delta_N", "delta_M", "xi_abs", "tau_m", "Gamma",
}

_OUTPUT_TOKENS = {"timescales", "sustainability"}


def _read_entries(text: str) -> dict[str, tuple[str, int]]:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in entries:
            raise ConfigError(
                f"duplicate key {key!r} (first set on line {entries[key][1]})",
                lineno,
            )
        if not value:
            raise ConfigError(f"empty value for key {key!r}", lineno)
        entries[key] = (value, lineno)
    return entries


def _parse_float(key: str, entries: dict[str, tuple[str, int]]) -> tuple[float, int]:
    value, lineno = entries[key]
    try:
        parsed = float(value)
    except ValueError:
        raise ConfigError(f"invalid number {value!r} for key {key!r}", lineno)
    if not math.isfinite(parsed):
        raise ConfigError(f"non-finite value for key {key!r}", lineno)
    return parsed, lineno


def _parse_int(key: str, entries: dict[str, tuple[str, int]]) -> tuple[int, int]:
    value, lineno = entries[key]
    try:
        parsed = int(value)
    except ValueError:
        raise ConfigError(f"invalid integer {value!r} for key {key!r}", lineno)
    return parsed, lineno


def _parse_sweep(value: str, lineno: int) -> SweepSpec:
    tokens = value.split()
    if len(tokens) not in (4, 5):
        raise ConfigError(
            "sweep expects '<param> <start> <stop> <count> [log]', "
            f"got {value!r}",
            lineno,
        )
    param = tokens[0]
    if param not in SWEEPABLE:
        raise ConfigError(
            f"cannot sweep {param!r}; allowed: {', '.join(sorted(SWEEPABLE))}",
            lineno,
        )
    try:
        start = float(tokens[1])
        stop = float(tokens[2])
        count = int(tokens[3])
    except ValueError:
        raise ConfigError(f"malformed sweep numbers in {value!r}", lineno)
    spacing = "linear"
    if len(tokens) == 5:
        if tokens[4] != "log":
            raise ConfigError(
                f"sweep spacing must be 'log' when given, got {tokens[4]!r}",
                lineno,
            )
        spacing = "log"
    if count < 2:
        raise ConfigError(f"sweep count must be >= 2, got {count}", lineno)
    if not start < stop:
        raise ConfigError(
            f"sweep start must be below stop, got {start} >= {stop}", lineno
        )
    if spacing == "log" and start <= 0.0:
        raise ConfigError(
            f"log spacing requires start > 0, got {start}", lineno
        )
    return SweepSpec(
        parameter=param, start=start, stop=stop, count=count, spacing=spacing
    )


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text into a RunConfig.

    Raises ConfigError (with a line number whenever one applies) on
    unknown keys, duplicates, bad values, missing required keys, or
    invariant violations.
    """
    entries = _read_entries(text)

    for required in ("gamma", "Omega"):
        if required not in entries:
            raise ConfigError(f"missing required key {required!r}")

    def get_float(key: str, default: float) -> float:
        if key not in entries:
            return default
        return _parse_float(key, entries)[0]

    def get_int(key: str, default: int) -> int:
        if key not in entries:
            return default
        return _parse_int(key, entries)[0]

    gamma, gamma_line = _parse_float("gamma", entries)
    if gamma <= 0.0:
        raise ConfigError(f"gamma must be > 0, got {gamma}", gamma_line)

    epsilon = 0.0
    if "epsilon" in entries:
        epsilon, eps_line = _parse_float("epsilon", entries)
        if epsilon < 0.0:
            raise ConfigError(f"epsilon must be >= 0, got {epsilon}", eps_line)
        if epsilon >= 0.5 * gamma:
            raise ConfigError(
                f"epsilon must stay below gamma/2 = {0.5 * gamma}, got {epsilon}",
                eps_line,
            )

    omega, omega_line = _parse_float("Omega", entries)
    if omega < 0.0:
        raise ConfigError(f"Omega must be >= 0, got {omega}", omega_line)

    omega_laser = get_float("omega_laser", 0.0)
    delta_given = "Delta" in entries
    delta = get_float("Delta", 0.0)

    atom_frequency = None
    if "omega_A" in entries:
        atom_frequency, omega_a_line = _parse_float("omega_A", entries)
        implied = omega_laser - atom_frequency
        if delta_given:
            scale = max(1.0, abs(omega_laser), abs(atom_frequency))
            if abs(implied - delta) > 1e-9 * scale:
                raise ConfigError(
                    f"Delta = {delta} inconsistent with omega_laser - omega_A "
                    f"= {implied}",
                    omega_a_line,
                )
        else:
            delta = implied

    xi_abs = get_float("xi_abs", 1.0)
    if xi_abs < 0.0:
        raise ConfigError(
            f"xi_abs must be >= 0, got {xi_abs}", entries["xi_abs"][1]
        )

    delta_n = get_float("delta_N", 0.0)
    delta_m = get_float("delta_M", 0.0)

    model_name = "constant"
    if "phase_model" in entries:
        model_name, model_line = entries["phase_model"]
        if model_name not in ("constant", "linear"):
            raise ConfigError(
                f"phase_model must be 'constant' or 'linear', got {model_name!r}",
                model_line,
            )
    phi0 = get_float("phi0", 0.0)
    phi_at_omega_a = get_float("phi_at_omega_A", 0.0)
    if model_name == "linear":
        if omega <= 0.0:
            raise ConfigError(
                "the linear phase model requires Omega > 0", omega_line
            )
        if "phi0" in entries:
            raise ConfigError(
                "phi0 applies to the constant phase model only",
                entries["phi0"][1],
            )
        phase_model: ConstantPhase | LinearPhase = LinearPhase(
            phase_at_atom_freq=phi_at_omega_a, rabi_frequency=omega
        )
    else:
        if "phi_at_omega_A" in entries:
            raise ConfigError(
                "phi_at_omega_A applies to the linear phase model only",
                entries["phi_at_omega_A"][1],
            )
        phase_model = ConstantPhase(phi0)

    t_i = get_float("t_i", 0.0)
    k_delta_e = get_float("k_delta_E", 0.0)
    measurement = None
    if "tau_m" in entries:
        tau_m, tau_line = _parse_float("tau_m", entries)
        if tau_m <= 0.0:
            raise ConfigError(f"tau_m must be > 0, got {tau_m}", tau_line)
        measurement = MeasurementWindow.from_duration(
            tau_m, t_i=t_i, k_delta_E=k_delta_e
        )

    gamma_override = None
    if "Gamma" in entries:
        gamma_override, override_line = _parse_float("Gamma", entries)
        if gamma_override < 0.0:
            raise ConfigError(
                f"Gamma override must be >= 0, got {gamma_override}",
                override_line,
            )

    t_final = get_float("t_final", 10.0)
    if t_final <= 0.0:
        raise ConfigError(
            f"t_final must be > 0, got {t_final}", entries["t_final"][1]
        )
    n_points = get_int("n_points", 201)
    if n_points < 2:
        raise ConfigError(
            f"n_points must be >= 2, got {n_points}", entries["n_points"][1]
        )

    x_min = get_float("x_min", -10.0 * gamma)
    x_max = get_float("x_max", 10.0 * gamma)
    if not x_min < x_max:
        line = entries.get("x_max", entries.get("x_min", ("", None)))[1]
        raise ConfigError(
            f"x_min must be below x_max, got {x_min} >= {x_max}", line
        )
    x_points = get_int("x_points", 1001)
    if x_points < 2:
        raise ConfigError(
            f"x_points must be >= 2, got {x_points}", entries["x_points"][1]
        )

    tolerances = Tolerances(
        integrator_rtol=get_float("integrator_rtol", 1e-8),
        integrator_atol=get_float("integrator_atol", 1e-10),
        quadrature_tol=get_float("quadrature_tol", 1e-10),
        root_tol=get_float("root_tol", 1e-12),
    )
    for name in (
        "integrator_rtol", "integrator_atol", "quadrature_tol", "root_tol"
    ):
        if getattr(tolerances, name) <= 0.0:
            raise ConfigError(
                f"{name} must be > 0, got {getattr(tolerances, name)}",
                entries[name][1],
            )

    outputs: tuple[str, ...] = ("timescales",)
    if "outputs" in entries:
        raw_outputs, outputs_line = entries["outputs"]
        tokens = tuple(raw_outputs.split())
        bad = [t for t in tokens if t not in _OUTPUT_TOKENS]
        if bad:
            raise ConfigError(
                f"unknown output(s) {', '.join(bad)}; allowed: "
                f"{', '.join(sorted(_OUTPUT_TOKENS))}",
                outputs_line,
            )
        outputs = tokens

    sweep = None
    if "sweep" in entries:
        raw_sweep, sweep_line = entries["sweep"]
        sweep = _parse_sweep(raw_sweep, sweep_line)
        if sweep.parameter == "phi0" and model_name != "constant":
            raise ConfigError(
                "sweeping phi0 requires phase_model = constant", sweep_line
            )
        if sweep.parameter == "phi_at_omega_A" and model_name != "linear":
            raise ConfigError(
                "sweeping phi_at_omega_A requires phase_model = linear",
                sweep_line,
            )

    atom = AtomConfig(
        rabi_frequency=omega,
        detuning=delta,
        attenuation=xi_abs,
        atom_frequency=atom_frequency,
    )
    bath = BathConfig(
        gamma=gamma,
        epsilon=epsilon,
        omega_laser=omega_laser,
        phase_model=phase_model,
        delta_N=delta_n,
        delta_M=delta_m,
    )
    return RunConfig(
        atom=atom,
        bath=bath,
        measurement=measurement,
        sweep=sweep,
        outputs=outputs,
        tolerances=tolerances,
        trajectory=TrajectorySettings(
            t_final=t_final,
            n_points=n_points,
            init_sigma_z=get_float("init_sigma_z", -1.0),
            init_re_sigma_minus=get_float("init_re_sigma_minus", 0.0),
            init_im_sigma_minus=get_float("init_im_sigma_minus", 0.0),
        ),
        grid=SpectrumGrid(x_min=x_min, x_max=x_max, x_points=x_points),
        gamma_override=gamma_override,
        t_i=t_i,
        k_delta_E=k_delta_e,
    )


def apply_parameter(cfg: RunConfig, name: str, value: float) -> RunConfig:
    """Return a copy of cfg with one swept parameter substituted.

    Sweeping Delta drops any fixed atomic frequency (the laser is
    implicitly retuned); sweeping Omega under the linear phase model
    also rescales the model's slope.
    """
    if name == "gamma":
        return replace(cfg, bath=replace(cfg.bath, gamma=value))
    if name == "epsilon":
        return replace(cfg, bath=replace(cfg.bath, epsilon=value))
    if name == "delta_N":
        return replace(cfg, bath=replace(cfg.bath, delta_N=value))
    if name == "delta_M":
        return replace(cfg, bath=replace(cfg.bath, delta_M=value))
    if name == "Omega":
        atom = replace(cfg.atom, rabi_frequency=value)
        bath = cfg.bath
        if isinstance(bath.phase_model, LinearPhase):
            bath = replace(
                bath,
                phase_model=LinearPhase(
                    phase_at_atom_freq=bath.phase_model.phase_at_atom_freq,
                    rabi_frequency=value,
                ),
            )
        return replace(cfg, atom=atom, bath=bath)
    if name == "Delta":
        return replace(
            cfg, atom=replace(cfg.atom, detuning=value, atom_frequency=None)
        )
    if name == "xi_abs":
        return replace(cfg, atom=replace(cfg.atom, attenuation=value))
    if name == "phi0":
        return replace(cfg, bath=replace(cfg.bath, phase_model=ConstantPhase(value)))
    if name == "phi_at_omega_A":
        model = cfg.bath.phase_model
        assert isinstance(model, LinearPhase)
        return replace(
            cfg,
            bath=replace(
                cfg.bath,
                phase_model=LinearPhase(
                    phase_at_atom_freq=value,
                    rabi_frequency=model.rabi_frequency,
                ),
            ),
        )
    if name == "tau_m":
        return replace(
            cfg,
            measurement=MeasurementWindow.from_duration(
                value, t_i=cfg.t_i, k_delta_E=cfg.k_delta_E
            ),
        )
    if name == "Gamma":
        return replace(cfg, gamma_override=value)
    raise ValueError(f"not a sweepable parameter: {name!r}")
