"""Figure builders for sweep results and frame dumps.

Three kinds: ``heatmap`` (gain over the (tau0, N) grid with the
mean-energy-discrimination boundary overlaid in red), ``curves`` (gain vs
tau0 with shaded one-sigma bands), and ``scatter`` ((n_I, n_S) count clouds
colored by the true bit).  Rendering is a pure function of the CSV;
timestamps are scrubbed from the output so re-renders are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.figure import Figure

from .schema import (
    EmptySelectionError,
    SchemaMismatchError,
    read_frames_csv,
    read_sweep_csv,
)

KINDS = ("heatmap", "curves", "scatter")
GAIN_COLUMNS = {"opt": "gain_opt", "phc": "gain_phc"}

# blue for the optimal-bound benchmark / bit 0, red for photon counting / bit 1
_BLUE = "#1f77b4"
_RED = "#d62728"

plt.rcParams["svg.hashsalt"] = "plotviz"


@dataclass
class PlotSpec:
    """One rendering request; ``gain`` may be 'opt', 'phc', or None (both,
    curves only; heatmaps need a single column and default to 'phc')."""

    input_csv: str | Path
    kind: str
    out_path: str | Path
    gain: str | None = None
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaMismatchError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.gain is not None and self.gain not in GAIN_COLUMNS:
            raise SchemaMismatchError(f"gain must be 'opt' or 'phc', got {self.gain!r}")


def _apply_limits(ax, spec: PlotSpec):
    if spec.xlim is not None:
        ax.set_xlim(*spec.xlim)
    if spec.ylim is not None:
        ax.set_ylim(*spec.ylim)


def _build_heatmap(spec: PlotSpec) -> Figure:
    table = read_sweep_csv(spec.input_csv)
    tau0 = np.array(table.column("tau0"))
    n_vals = np.array(table.column("N"))
    column = GAIN_COLUMNS[spec.gain or "phc"]
    gains = np.array(table.column(column))
    med = np.array(table.column("med_tau0"))

    xs = np.unique(tau0)
    ys = np.unique(n_vals)
    if len(xs) < 2 or len(ys) < 2 or len(table.rows) != len(xs) * len(ys):
        raise SchemaMismatchError(
            f"heatmap needs a complete (tau0, N) grid; got {len(table.rows)} rows "
            f"for {len(xs)} tau0 x {len(ys)} N values"
        )
    grid = np.full((len(ys), len(xs)), np.nan)
    med_by_n = {}
    for t, n, g, m in zip(tau0, n_vals, gains, med):
        grid[np.searchsorted(ys, n), np.searchsorted(xs, t)] = g
        med_by_n[n] = m

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_under("#d9d9d9")  # below-zero gain rendered neutral
    mesh = ax.pcolormesh(xs, ys, grid, cmap=cmap, vmin=0.0, vmax=1.0, shading="nearest")
    ax.plot(
        [med_by_n[n] for n in ys],
        ys,
        color=_RED,
        lw=1.8,
        label="mean-energy-discrimination limit",
    )
    ax.set_yscale("log")
    ax.set_xlabel(r"lower transmissivity $\tau_0$")
    ax.set_ylabel(r"mean signal photons $N$")
    ax.set_xlim(xs[0], xs[-1])
    fig.colorbar(mesh, ax=ax, label=f"{column} (bits)")
    ax.legend(loc="lower left", fontsize=8)
    _apply_limits(ax, spec)
    return fig


def _build_curves(spec: PlotSpec) -> Figure:
    table = read_sweep_csv(spec.input_csv)
    tau0 = np.array(table.column("tau0"))
    n_vals = np.array(table.column("N"))
    sigma = np.array(table.column("uncertainty"))
    if spec.gain is None:
        selected = [("gain_opt", _BLUE), ("gain_phc", _RED)]
    else:
        column = GAIN_COLUMNS[spec.gain]
        selected = [(column, _BLUE if spec.gain == "opt" else _RED)]

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for column, color in selected:
        gains = np.array(table.column(column))
        for n in np.unique(n_vals):
            sel = n_vals == n
            order = np.argsort(tau0[sel])
            x = tau0[sel][order]
            y = gains[sel][order]
            band = sigma[sel][order]
            label = column if len(np.unique(n_vals)) == 1 else f"{column}, N={n:g}"
            ax.plot(x, y, color=color, lw=1.5, label=label)
            ax.fill_between(x, y - band, y + band, color=color, alpha=0.25, lw=0)
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel(r"lower transmissivity $\tau_0$")
    ax.set_ylabel("information gain (bits)")
    ax.legend(fontsize=8)
    _apply_limits(ax, spec)
    return fig


def _build_scatter(spec: PlotSpec) -> Figure:
    table = read_frames_csv(spec.input_csv)
    n_s = np.array(table.column("n_s"))
    n_i = np.array(table.column("n_i"))
    bit = np.array(table.column("true_bit"))

    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    for value, color, label in ((0.0, _BLUE, "bit 0"), (1.0, _RED, "bit 1")):
        sel = bit == value
        if np.any(sel):
            ax.scatter(n_i[sel], n_s[sel], s=4, color=color, alpha=0.5, label=label, lw=0)
    ax.set_xlabel(r"idler counts $n_I$")
    ax.set_ylabel(r"signal counts $n_S$")
    ax.legend(fontsize=8)
    _apply_limits(ax, spec)
    return fig


_BUILDERS = {"heatmap": _build_heatmap, "curves": _build_curves, "scatter": _build_scatter}


def build_figure(spec: PlotSpec) -> Figure:
    """Build the matplotlib figure without saving (exposed for tests)."""
    return _BUILDERS[spec.kind](spec)


def render(spec: PlotSpec) -> Path:
    """Render the figure to ``spec.out_path``; returns the written path.

    Vector formats carry no creation timestamp so identical inputs produce
    identical files.
    """
    out = Path(spec.out_path)
    fig = build_figure(spec)
    fmt = out.suffix.lstrip(".").lower() or "svg"
    metadata = {}
    if fmt == "svg":
        metadata = {"Date": None}
    elif fmt == "pdf":
        metadata = {"CreationDate": None}
    try:
        fig.savefig(out, format=fmt, dpi=150, metadata=metadata or None)
    finally:
        plt.close(fig)
    return out
