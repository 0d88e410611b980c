"""Command-line front end.

Subcommands: spectra, steady-state, dynamics, timescales, zeno,
sustainability, sweep.  Each reads a flat key = value config, writes a
CSV document (stdout or --out), and exits 0 on success, 1 on a
configuration problem, 2 on a runtime failure covering every requested
point.  Passing --plot alongside --out renders a figure next to the CSV
for the multi-point reports.

CSV output is deterministic: floats are written in shortest
round-trip form, infinities as the literal token ``inf``, and rows use
bare newline terminators.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from typing import Callable, Sequence

import numpy as np

from .bath import LinearPhase, lorentzian_widths, photon_number_spectrum, \
    squeezing_phase, two_photon_spectrum_abs
from .coherence import coherence_time_squeezed
from .config import RunConfig, apply_parameter, parse_config
from .dynamics import (
    BlochState,
    bloch_from_density,
    density_diagnostics,
    density_from_bloch,
    density_trajectory,
    master_superoperator,
    steady_state_analytic,
)
from .effective import effective_params, physicality_check
from .errors import ConfigError
from .sustainability import (
    im_M_tilde,
    omega_tilde_condition,
    solve_phi_closed_form,
    solve_phi_root,
)
from .zeno import coherence_dwell_ratio, dwell_time_frequent, dwell_time_weak

FigureFn = Callable[[str], None]
HandlerResult = tuple[list[str], list[list[str]], FigureFn | None, int]

TIMESCALE_COLUMNS = [
    "gamma", "epsilon", "Omega", "Delta", "phi", "delta_N", "delta_M",
    "xi_abs", "Gamma", "tau_C", "tau_D", "ratio", "d", "ImM_tilde",
]
SUSTAINABILITY_COLUMNS = [
    "method", "phi_star", "phi_star_companion", "zeta",
    "omega_tilde_required", "feasible", "residual",
]
ZENO_COLUMNS = ["tau_m", "tau_D_exact", "tau_D_frequent", "ratio", "sustainable"]


def fmt(value) -> str:
    """Deterministic cell formatting: shortest round-trip floats,
    ``inf`` sentinels, lowercase booleans, empty string for missing."""
    if value is None:
        return ""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(v)


def _sanitize(message: str) -> str:
    return message.replace(",", ";").replace("\n", " ").replace("\r", " ")


def _note(args: argparse.Namespace, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _cmd_spectra(cfg: RunConfig, args: argparse.Namespace) -> HandlerResult:
    widths = lorentzian_widths(cfg.bath)
    xs = np.linspace(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.x_points)
    n_vals = [photon_number_spectrum(float(x), widths) for x in xs]
    m_vals = [two_photon_spectrum_abs(float(x), widths) for x in xs]
    rows = [
        [fmt(float(x)), fmt(n), fmt(m)]
        for x, n, m in zip(xs, n_vals, m_vals)
    ]

    def figure(path: str) -> None:
        from .plotting import save_spectra_figure

        save_spectra_figure(path, xs, n_vals, m_vals)

    return ["x", "N", "M_abs"], rows, figure, 0


def _cmd_steady_state(cfg: RunConfig, args: argparse.Namespace) -> HandlerResult:
    atom, bath = cfg.atom, cfg.bath
    p = effective_params(atom, bath)
    ss = steady_state_analytic(p, atom, bath)
    check = physicality_check(p)
    header = [
        "gamma", "epsilon", "Omega", "Delta", "phi", "delta_N", "delta_M",
        "sigma_z", "re_sigma_minus", "im_sigma_minus", "d", "physical",
        "margin",
    ]
    row = [
        fmt(bath.gamma), fmt(bath.epsilon), fmt(atom.rabi_frequency),
        fmt(atom.detuning), fmt(squeezing_phase(bath, atom.detuning)),
        fmt(bath.delta_N), fmt(bath.delta_M),
        fmt(ss.sigma_z), fmt(ss.sigma_minus.real), fmt(ss.sigma_minus.imag),
        fmt(ss.denominator), fmt(check.ok), fmt(check.margin),
    ]
    return header, [row], None, 0


def _cmd_dynamics(cfg: RunConfig, args: argparse.Namespace) -> HandlerResult:
    atom, bath, traj = cfg.atom, cfg.bath, cfg.trajectory
    p = effective_params(atom, bath)
    generator = master_superoperator(p, atom, bath)
    initial = BlochState(
        sigma_minus=complex(traj.init_re_sigma_minus, traj.init_im_sigma_minus),
        sigma_plus=complex(traj.init_re_sigma_minus, -traj.init_im_sigma_minus),
        sigma_z=traj.init_sigma_z,
    )
    times = np.linspace(0.0, traj.t_final, traj.n_points)
    rhos = density_trajectory(density_from_bloch(initial), generator, times)

    rows = []
    re_sm, im_sm, sz = [], [], []
    for t, rho in zip(times, rhos):
        state = bloch_from_density(rho)
        diag = density_diagnostics(rho)
        re_sm.append(state.sigma_minus.real)
        im_sm.append(state.sigma_minus.imag)
        sz.append(state.sigma_z)
        rows.append([
            fmt(float(t)), fmt(state.sigma_minus.real),
            fmt(state.sigma_minus.imag), fmt(state.sigma_z),
            fmt(diag.trace), fmt(diag.min_eigenvalue),
        ])
    header = [
        "t", "re_sigma_minus", "im_sigma_minus", "sigma_z", "trace",
        "min_eigenvalue",
    ]

    def figure(path: str) -> None:
        from .plotting import save_dynamics_figure

        save_dynamics_figure(path, times, re_sm, im_sm, sz)

    return header, rows, figure, 0


def _timescale_row(cfg: RunConfig):
    atom, bath = cfg.atom, cfg.bath
    tau_m = cfg.measurement.tau_m if cfg.measurement is not None else None
    report = coherence_time_squeezed(atom, bath, tau_m=tau_m)
    row = [
        fmt(bath.gamma), fmt(bath.epsilon), fmt(atom.rabi_frequency),
        fmt(atom.detuning), fmt(squeezing_phase(bath, atom.detuning)),
        fmt(bath.delta_N), fmt(bath.delta_M), fmt(atom.attenuation),
        fmt(report.decay_rate), fmt(report.coherence_time),
        fmt(report.dwell_time), fmt(report.ratio),
        fmt(report.denominator), fmt(report.im_m_eff),
    ]
    return row, report


def _cmd_timescales(cfg: RunConfig, args: argparse.Namespace) -> HandlerResult:
    row, _ = _timescale_row(cfg)
    return list(TIMESCALE_COLUMNS), [row], None, 0


def _zeno_decay_rate(cfg: RunConfig) -> float:
    if cfg.gamma_override is not None:
        return cfg.gamma_override
    report = coherence_time_squeezed(cfg.atom, cfg.bath)
    if report.decay_rate < 0.0:
        raise ArithmeticError(
            "dwell time is undefined for a negative decay parameter; "
            "supply a Gamma override or change the squeezing phase"
        )
    return report.decay_rate


def _cmd_zeno(cfg: RunConfig, args: argparse.Namespace) -> HandlerResult:
    sweep = cfg.sweep
    if sweep is not None and sweep.parameter not in ("tau_m", "Gamma"):
        raise ConfigError(
            "the zeno subcommand sweeps tau_m or Gamma only, got "
            f"{sweep.parameter!r}"
        )

    rows = []
    tau_axis: list[float] = []
    exact: list[float] = []
    frequent: list[float] = []
    ratios: list[float] = []

    def add_row(rate: float, tau_m: float) -> None:
        dwell = dwell_time_weak(rate, tau_m)
        dwell_freq = dwell_time_frequent(rate, tau_m)
        res = coherence_dwell_ratio(rate, tau_m)
        tau_axis.append(tau_m)
        exact.append(dwell)
        frequent.append(dwell_freq)
        ratios.append(res.ratio)
        rows.append([
            fmt(tau_m), fmt(dwell), fmt(dwell_freq), fmt(res.ratio),
            fmt(res.sustainable),
        ])

    if sweep is None:
        if cfg.measurement is None:
            raise ConfigError(
                "the zeno subcommand needs tau_m (or a tau_m sweep)"
            )
        add_row(_zeno_decay_rate(cfg), cfg.measurement.tau_m)
        return list(ZENO_COLUMNS), rows, None, 0

    if sweep.parameter == "tau_m":
        if sweep.start <= 0.0:
            raise ConfigError("tau_m sweep requires start > 0")
        rate = _zeno_decay_rate(cfg)
        for value in sweep.values():
            add_row(rate, float(value))
        axis_label = "window length"
        axis = tau_axis
    else:
        if sweep.start < 0.0:
            raise ConfigError("Gamma sweep requires start >= 0")
        if cfg.measurement is None:
            raise ConfigError("a Gamma sweep needs a fixed tau_m")
        axis = []
        for value in sweep.values():
            add_row(float(value), cfg.measurement.tau_m)
            axis.append(float(value))
        axis_label = "decay parameter"

    def figure(path: str) -> None:
        from .plotting import save_zeno_figure

        save_zeno_figure(path, axis, exact, frequent, ratios, xlabel=axis_label)

    return list(ZENO_COLUMNS), rows, figure, 0


def _sustainability_row(solution) -> list[str]:
    return [
        fmt(solution.method), fmt(solution.phi_star),
        fmt(solution.phi_star_companion), fmt(solution.zeta),
        fmt(solution.omega_tilde_required), fmt(solution.feasible),
        fmt(solution.residual),
    ]


def _cmd_sustainability(cfg: RunConfig, args: argparse.Namespace) -> HandlerResult:
    atom, bath = cfg.atom, cfg.bath
    closed = solve_phi_closed_form(atom, bath)
    bisected = solve_phi_root(atom, bath)
    solutions = [closed, bisected]
    if isinstance(bath.phase_model, LinearPhase) and bath.delta_M > 0.0:
        condition = omega_tilde_condition(atom, bath)
        solutions.append(condition)
        if abs(condition.phi_star) > 0.1:
            _warn(
                "the drive-fraction condition assumes a small solved phase; "
                f"|phi_star| = {abs(condition.phi_star):.3f} rad exceeds 0.1"
            )
    rows = [_sustainability_row(s) for s in solutions]

    phis = np.linspace(-0.5 * math.pi, 1.5 * math.pi, 361)
    curve = [im_M_tilde(float(phi), atom, bath) for phi in phis]
    roots = [] if bisected.degenerate else [
        bisected.phi_star, bisected.phi_star_companion
    ]

    def figure(path: str) -> None:
        from .plotting import save_sustainability_figure

        save_sustainability_figure(path, phis, curve, roots)

    return list(SUSTAINABILITY_COLUMNS), rows, figure, 0


def _cmd_sweep(cfg: RunConfig, args: argparse.Namespace) -> HandlerResult:
    sweep = cfg.sweep
    if sweep is None:
        raise ConfigError("the sweep subcommand needs a sweep line")
    if sweep.parameter == "Gamma":
        raise ConfigError(
            "a Gamma override sweep is only meaningful for the zeno "
            "subcommand"
        )
    if sweep.parameter == "tau_m" and sweep.start <= 0.0:
        raise ConfigError("tau_m sweep requires start > 0")

    with_sustainability = "sustainability" in cfg.outputs
    header = list(TIMESCALE_COLUMNS)
    if with_sustainability:
        header += [
            "phi_star", "zeta", "omega_tilde_required", "feasible", "residual",
        ]
    header.append("error")

    values = sweep.values()
    rows = []
    failures = 0
    axis: list[float] = []
    decay_series: list[float | None] = []
    tau_c_series: list[float | None] = []
    im_m_series: list[float | None] = []

    for value in values:
        axis.append(float(value))
        try:
            pcfg = apply_parameter(cfg, sweep.parameter, float(value))
            row, report = _timescale_row(pcfg)
            if with_sustainability:
                sol = solve_phi_closed_form(pcfg.atom, pcfg.bath)
                row += [
                    fmt(sol.phi_star), fmt(sol.zeta),
                    fmt(sol.omega_tilde_required), fmt(sol.feasible),
                    fmt(sol.residual),
                ]
            row.append("")
            decay_series.append(report.decay_rate)
            tau_c_series.append(report.coherence_time)
            im_m_series.append(report.im_m_eff)
        except (ValueError, ArithmeticError, RuntimeError) as exc:
            failures += 1
            row = [""] * (len(header) - 1) + [_sanitize(str(exc))]
            decay_series.append(None)
            tau_c_series.append(None)
            im_m_series.append(None)
        rows.append(row)

    exit_code = 2 if failures == len(rows) else 0

    def figure(path: str) -> None:
        from .plotting import save_sweep_figure

        save_sweep_figure(
            path, sweep.parameter, axis, decay_series, tau_c_series,
            im_m_series,
        )

    return header, rows, figure, exit_code


_HANDLERS = {
    "spectra": _cmd_spectra,
    "steady-state": _cmd_steady_state,
    "dynamics": _cmd_dynamics,
    "timescales": _cmd_timescales,
    "zeno": _cmd_zeno,
    "sustainability": _cmd_sustainability,
    "sweep": _cmd_sweep,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqatom",
        description=(
            "Driven two-level atom in a finite-bandwidth squeezed vacuum: "
            "spectra, dynamics, coherence and dwell timescales"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectra", "tabulate the bath spectra over an offset grid"),
        ("steady-state", "closed-form stationary moments"),
        ("dynamics", "propagate the master equation and record moments"),
        ("timescales", "decay parameter, coherence and dwell times"),
        ("zeno", "dwell times and coherence/dwell ratio"),
        ("sustainability", "solve the squeezing phase for sustained coherence"),
        ("sweep", "timescale report over a swept parameter"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to key = value config")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--quiet", action="store_true", help="suppress notes")
        p.add_argument(
            "--plot",
            action="store_true",
            help="render a figure next to the CSV (requires --out)",
        )
    return parser


def _write_csv(header: list[str], rows: list[list[str]], out: str | None) -> None:
    if out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(out, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        return 1

    if args.plot and not args.out:
        print("error: --plot requires --out", file=sys.stderr)
        return 1

    try:
        with open(args.config) as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1

    try:
        cfg = parse_config(text)
        header, rows, figure, exit_code = _HANDLERS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    _write_csv(header, rows, args.out)
    if args.out:
        _note(args, f"wrote {len(rows)} row(s) to {args.out}")

    if args.plot:
        if figure is None:
            _note(args, "no figure for a single-point report")
        else:
            png = os.path.splitext(args.out)[0] + ".png"
            figure(png)
            _note(args, f"wrote figure to {png}")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
