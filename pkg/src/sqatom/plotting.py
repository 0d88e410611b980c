"""Figure rendering for the command-line report paths.

Everything here draws to files with the Agg backend; nothing opens a
window.  The CSV stays the canonical, deterministic output; figures are
a convenience view of the same rows.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_DPI = 120


def _finite_mask(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    return np.isfinite(arr)


def save_spectra_figure(path: str, x, n_vals, m_vals) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(x, n_vals, label="photon number N")
    ax.plot(x, m_vals, label="two-photon |M|", linestyle="--")
    ax.set_xlabel("offset from laser frequency")
    ax.set_ylabel("spectrum")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_dynamics_figure(path: str, times, re_sm, im_sm, sz) -> None:
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.0, 6.0), sharex=True)
    ax1.plot(times, sz)
    ax1.set_ylabel("inversion")
    ax2.plot(times, re_sm, label="Re coherence")
    ax2.plot(times, im_sm, label="Im coherence", linestyle="--")
    ax2.set_xlabel("time")
    ax2.set_ylabel("lowering-operator moment")
    ax2.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_zeno_figure(
    path: str, xs, exact, frequent, ratios, xlabel: str = "window length"
) -> None:
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.0, 6.0), sharex=True)
    ax1.plot(xs, exact, label="dwell (exact)")
    ax1.plot(xs, frequent, label="dwell (frequent limit)", linestyle="--")
    ax1.set_ylabel("dwell time")
    ax1.legend()
    mask = _finite_mask(ratios)
    x_arr = np.asarray(xs, dtype=float)
    ratio_arr = np.asarray(ratios, dtype=float)
    ax2.plot(x_arr[mask], ratio_arr[mask])
    ax2.axhline(1.0, color="gray", linewidth=0.8)
    ax2.set_xlabel(xlabel)
    ax2.set_ylabel("coherence/dwell ratio")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_sweep_figure(
    path: str, parameter: str, values, decay, tau_c, im_m
) -> None:
    fig, axes = plt.subplots(3, 1, figsize=(6.0, 7.5), sharex=True)
    val_arr = np.asarray(values, dtype=float)

    for ax, series, label in (
        (axes[0], decay, "decay parameter"),
        (axes[1], tau_c, "coherence time"),
        (axes[2], im_m, "Im effective squeezing"),
    ):
        arr = np.array(
            [v if v is not None else math.nan for v in series], dtype=float
        )
        mask = np.isfinite(arr)
        ax.plot(val_arr[mask], arr[mask])
        ax.set_ylabel(label)
    axes[2].axhline(0.0, color="gray", linewidth=0.8)
    axes[2].set_xlabel(parameter)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_sustainability_figure(path: str, phis, im_values, roots) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(phis, im_values)
    ax.axhline(0.0, color="gray", linewidth=0.8)
    for root in roots:
        ax.axvline(root, color="tab:red", linestyle=":", linewidth=1.0)
    ax.set_xlabel("squeezing phase")
    ax.set_ylabel("Im effective squeezing")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
