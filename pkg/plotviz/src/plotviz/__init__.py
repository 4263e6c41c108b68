"""Rendering of qread sweep results and frame dumps to figures.

This package never computes error probabilities or gains; every plotted
value comes straight out of the CSV columns written by the qread CLI.
"""

__version__ = "0.1.0"

from .render import GAIN_COLUMNS, KINDS, PlotSpec, build_figure, render
from .schema import (
    FRAME_COLUMNS,
    SWEEP_COLUMNS,
    EmptySelectionError,
    SchemaMismatchError,
    read_frames_csv,
    read_sweep_csv,
)
