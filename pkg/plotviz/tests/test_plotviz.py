"""Rendering tests against CSV fixtures produced by the qread CLI."""

from pathlib import Path

import numpy as np
import pytest
from matplotlib.collections import PathCollection, PolyCollection, QuadMesh

from plotviz import (
    EmptySelectionError,
    PlotSpec,
    SchemaMismatchError,
    build_figure,
    read_frames_csv,
    read_sweep_csv,
    render,
)
from plotviz.cli import main

DATA = Path(__file__).resolve().parent / "data"
FIG4A = DATA / "fig4a_sample.csv"
GRID = DATA / "grid_sample.csv"
FRAMES = DATA / "frames_sample.csv"


# ---------------------------------------------------------------------------
# schema
# ---------------------------------------------------------------------------


def test_sweep_schema_roundtrip():
    table = read_sweep_csv(FIG4A)
    assert len(table.rows) == 24
    assert all(r["status"] == "ok" for r in table.rows)
    assert all(0.990 < r["tau0"] < 1.0 for r in table.rows)


def test_schema_mismatch_on_wrong_header(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(SchemaMismatchError):
        read_sweep_csv(bad)
    with pytest.raises(SchemaMismatchError):
        read_frames_csv(bad)


def test_empty_selection_when_all_rows_failed(tmp_path):
    table = read_sweep_csv(GRID)
    header = ",".join(table.columns)
    row = dict(table.rows[0])
    row["status"] = "TruncationFailure"
    line = ",".join(str(row[c]) for c in table.columns)
    bad = tmp_path / "failed.csv"
    bad.write_text(header + "\n" + line + "\n")
    with pytest.raises(EmptySelectionError):
        read_sweep_csv(bad)


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------


def test_fig4a_curves_has_two_benchmark_series_with_bands(tmp_path):
    spec = PlotSpec(FIG4A, "curves", tmp_path / "fig4a.svg")
    fig = build_figure(spec)
    ax = fig.axes[0]
    series = [l for l in ax.lines if l.get_label().startswith("gain")]
    assert len(series) == 2
    labels = sorted(l.get_label() for l in series)
    assert labels == ["gain_opt", "gain_phc"]
    bands = [c for c in ax.collections if isinstance(c, PolyCollection)]
    assert len(bands) == 2
    out = render(spec)
    assert out.exists() and out.stat().st_size > 0


def test_curves_plot_values_are_verbatim_from_csv(tmp_path):
    # the renderer must not transform the numbers it plots
    spec = PlotSpec(FIG4A, "curves", tmp_path / "v.svg", gain="phc")
    fig = build_figure(spec)
    ax = fig.axes[0]
    series = [l for l in ax.lines if l.get_label() == "gain_phc"]
    assert len(series) == 1
    table = read_sweep_csv(FIG4A)
    order = np.argsort(table.column("tau0"))
    expected_y = np.array(table.column("gain_phc"))[order]
    expected_x = np.array(table.column("tau0"))[order]
    assert np.array_equal(series[0].get_ydata(), expected_y)
    assert np.array_equal(series[0].get_xdata(), expected_x)


def test_curves_single_gain_selector(tmp_path):
    spec = PlotSpec(FIG4A, "curves", tmp_path / "phc.svg", gain="opt")
    ax = build_figure(spec).axes[0]
    series = [l for l in ax.lines if l.get_label().startswith("gain")]
    assert [l.get_label() for l in series] == ["gain_opt"]


# ---------------------------------------------------------------------------
# heatmap
# ---------------------------------------------------------------------------


def test_heatmap_renders_grid_with_med_overlay(tmp_path):
    spec = PlotSpec(GRID, "heatmap", tmp_path / "grid.svg", gain="phc")
    fig = build_figure(spec)
    ax = fig.axes[0]
    meshes = [c for c in ax.collections if isinstance(c, QuadMesh)]
    assert len(meshes) == 1
    assert len(ax.lines) == 1  # the red boundary curve
    assert ax.get_yscale() == "log"
    out = render(spec)
    assert out.exists() and out.stat().st_size > 0


def test_heatmap_rejects_degenerate_grid(tmp_path):
    table_text = FIG4A.read_text().strip().split("\n")
    single = tmp_path / "single.csv"
    single.write_text("\n".join(table_text[:2]) + "\n")
    with pytest.raises(SchemaMismatchError):
        build_figure(PlotSpec(single, "heatmap", tmp_path / "x.svg"))


# ---------------------------------------------------------------------------
# scatter
# ---------------------------------------------------------------------------


def test_scatter_shows_two_clouds(tmp_path):
    spec = PlotSpec(FRAMES, "scatter", tmp_path / "clouds.svg")
    fig = build_figure(spec)
    ax = fig.axes[0]
    clouds = [c for c in ax.collections if isinstance(c, PathCollection)]
    assert len(clouds) == 2
    sizes = sorted(len(c.get_offsets()) for c in clouds)
    assert sizes == [1500, 1500]
    render(spec)


def test_scatter_cloud_slopes_ordered():
    # fitted slope of n_s on n_i must be lower for the absorbing cell state
    table = read_frames_csv(FRAMES)
    ns = np.array(table.column("n_s"))
    ni = np.array(table.column("n_i"))
    bit = np.array(table.column("true_bit"))
    slopes = {}
    for value in (0.0, 1.0):
        sel = bit == value
        slopes[value] = float(np.polyfit(ni[sel], ns[sel], 1)[0])
    assert slopes[0.0] < slopes[1.0]
    # displaced clouds: the mean signal count separates the two bits
    assert float(np.mean(ns[bit == 0.0])) < float(np.mean(ns[bit == 1.0]))


# ---------------------------------------------------------------------------
# determinism and CLI
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("suffix", ["svg", "png"])
def test_render_is_deterministic(tmp_path, suffix):
    a = render(PlotSpec(FIG4A, "curves", tmp_path / f"a.{suffix}"))
    b = render(PlotSpec(FIG4A, "curves", tmp_path / f"b.{suffix}"))
    assert a.read_bytes() == b.read_bytes()


def test_cli_renders_all_kinds(tmp_path):
    for kind, src in (("curves", FIG4A), ("heatmap", GRID), ("scatter", FRAMES)):
        out = tmp_path / f"{kind}.svg"
        rc = main(["--in", str(src), "--kind", kind, "--out", str(out)])
        assert rc == 0 and out.exists()


def test_cli_extension_defaults(tmp_path):
    out = tmp_path / "noext"
    assert main(["--in", str(FIG4A), "--kind", "curves", "--out", str(out)]) == 0
    assert (tmp_path / "noext.svg").exists()
    out2 = tmp_path / "raster"
    assert (
        main(["--in", str(FIG4A), "--kind", "curves", "--out", str(out2), "--raster"]) == 0
    )
    assert (tmp_path / "raster.png").exists()


def test_cli_reports_schema_errors(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n1,2\n")
    rc = main(["--in", str(bad), "--kind", "curves", "--out", str(tmp_path / "o.svg")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err
