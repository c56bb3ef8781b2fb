"""Figure generation for horoflow run artifacts.

Consumes only the simulation's documented external file formats: the
diagnostics series CSV, structured-text shape snapshots, and the
sphere-calibration table.
"""

from .figures import (
    drift_annotations,
    plot,
    plot_calibration,
    plot_series,
    plot_snapshot_overlay,
    series_legend_labels,
)
from .parsing import (
    CalibrationTable,
    ParseError,
    Series,
    Snapshot,
    read_calibration,
    read_series,
    read_snapshot,
    relative_drift,
)

__version__ = "0.1.0"

__all__ = [
    "CalibrationTable",
    "ParseError",
    "Series",
    "Snapshot",
    "drift_annotations",
    "plot",
    "plot_calibration",
    "plot_series",
    "plot_snapshot_overlay",
    "read_calibration",
    "read_series",
    "read_snapshot",
    "relative_drift",
    "series_legend_labels",
    "__version__",
]
