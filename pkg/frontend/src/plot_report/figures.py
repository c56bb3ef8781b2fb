"""Figure builders: diagnostics series, snapshot overlays, calibration curves.

Every sample in the inputs is rendered; nothing is decimated.  Figures are
deterministic for fixed inputs (fixed size, dpi, palette, and no embedded
timestamps).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .parsing import (
    CalibrationTable,
    Series,
    Snapshot,
    read_calibration,
    read_series,
    read_snapshot,
    relative_drift,
)

_DPI = 150
_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
_SAVE_KW = dict(dpi=_DPI, metadata={"Software": "plot-report"})


def drift_annotations(series: Series) -> dict[str, float]:
    """Relative drift of each W_k column, as quoted in series legends."""
    return {name: relative_drift(series.column(name)) for name in series.w_columns}


def series_legend_labels(series: Series) -> list[str]:
    """Legend entries of the quermassintegral panel, drift to 3 sig digits."""
    drifts = drift_annotations(series)
    return [f"{name} (drift {drifts[name]:.3g})" for name in series.w_columns]


def plot_series(series: Series, out: str | Path) -> None:
    t = series.column("t")
    fig, axes = plt.subplots(3, 1, figsize=(8, 10), sharex=True)

    ax = axes[0]
    labels = series_legend_labels(series)
    for i, name in enumerate(series.w_columns):
        ax.plot(t, series.column(name), color=_PALETTE[i % len(_PALETTE)],
                lw=1.2, label=labels[i])
    ax.set_ylabel("quermassintegrals")
    ax.legend(loc="best", fontsize=8)

    ax = axes[1]
    ax.plot(t, series.column("sigmaMin"), color=_PALETTE[0], lw=1.2, label="sigmaMin")
    ax.axhline(0.0, color="0.6", lw=0.8, ls="--")
    ax.set_ylabel("horo-convexity margin")
    ax.legend(loc="best", fontsize=8)

    ax = axes[2]
    ax.plot(t, series.column("rMax"), color=_PALETTE[1], lw=1.2, label="rMax")
    ax.plot(t, series.column("rMin"), color=_PALETTE[2], lw=1.2, label="rMin")
    ax.set_ylabel("radial extent")
    ax.set_xlabel("t")
    ax.legend(loc="best", fontsize=8)

    fig.tight_layout()
    fig.savefig(out, **_SAVE_KW)
    plt.close(fig)


def plot_snapshot_overlay(snapshots: list[Snapshot], out: str | Path) -> None:
    snapshots = sorted(snapshots, key=lambda s: s.t)
    fig, ax = plt.subplots(figsize=(7, 7))
    tmin, tmax = snapshots[0].t, snapshots[-1].t
    span = (tmax - tmin) or 1.0
    cmap = plt.get_cmap("viridis")
    for snap in snapshots:
        x, y = snap.profile_xy()
        if snap.closed:
            x = np.append(x, x[0])
            y = np.append(y, y[0])
        ax.plot(x, y, lw=1.2, color=cmap((snap.t - tmin) / span),
                label=f"t = {snap.t:.4g}")
    ax.set_aspect("equal")
    if snapshots[0].closed:
        ax.set_xlabel("x (orthographic from the pole)")
        ax.set_ylabel("y")
    else:
        ax.set_xlabel("orbit radius")
        ax.set_ylabel("height")
    if len(snapshots) <= 12:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(out, **_SAVE_KW)
    plt.close(fig)


def plot_calibration(table: CalibrationTable, out: str | Path,
                     experiments: list[Series] | None = None) -> None:
    w_cols = [c for c in table.columns if c.startswith("W_")]
    n = len(w_cols) - 2
    fig, axes = plt.subplots(1, 2, figsize=(12, 5))

    ax = axes[0]
    for k in range(1, n + 1):
        ax.plot(table.column(f"W_{k - 1}"), table.column(f"W_{k}"),
                color=_PALETTE[(k - 1) % len(_PALETTE)], lw=1.2,
                label=f"f_{k}: W_{k} on centered spheres")
    for series in experiments or []:
        for k in range(1, min(n, len(series.w_columns) - 2) + 1):
            ax.plot(series.column(f"W_{k - 1}"), series.column(f"W_{k}"),
                    ".", ms=2, color=_PALETTE[(k - 1) % len(_PALETTE)],
                    alpha=0.6, label=f"experiment (W_{k - 1}, W_{k})")
    ax.set_xlabel("W_{k-1}")
    ax.set_ylabel("W_k")
    ax.legend(loc="best", fontsize=8)

    ax = axes[1]
    for k in range(1, n + 1):
        name = f"weighted_{k}"
        if name in table.columns:
            ax.plot(table.column(f"W_{k}"), table.column(name),
                    color=_PALETTE[(k - 1) % len(_PALETTE)], lw=1.2,
                    label=f"rho_{k}: weighted functional on centered spheres")
    ax.set_xlabel("W_k")
    ax.set_ylabel("weighted functional")
    ax.legend(loc="best", fontsize=8)

    fig.tight_layout()
    fig.savefig(out, **_SAVE_KW)
    plt.close(fig)


def plot(kind: str, inputs: list[str | Path], out: str | Path) -> None:
    """Dispatch on figure kind; inputs must exist and parse."""
    if not inputs:
        raise ValueError("at least one --in path is required")
    if kind == "series":
        plot_series(read_series(inputs[0]), out)
    elif kind == "snapshot-overlay":
        plot_snapshot_overlay([read_snapshot(p) for p in inputs], out)
    elif kind == "calibration":
        table = read_calibration(inputs[0])
        experiments = [read_series(p) for p in inputs[1:]]
        plot_calibration(table, out, experiments)
    else:
        raise ValueError(f"unknown figure kind: {kind!r}")
