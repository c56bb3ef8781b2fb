"""File formats: shape snapshots, diagnostics time series, run directories.

Snapshots are structured text with 17-significant-digit decimals so that a
write/read round trip reproduces the floating-point values bit-exactly.
"""

from __future__ import annotations

import csv
import os
from pathlib import Path

import numpy as np

from .config import RunConfig, run_id, serialize
from .errors import HoroflowError
from .flow import DiagnosticsRecord
from .geometry import ProfileCurve

_MAGIC = "horoflow-snapshot"


def write_snapshot(path: str | Path, curve: ProfileCurve, t: float) -> None:
    lines = [_MAGIC, f"n {curve.n}", f"N {curve.N}", f"t {t:.17g}"]
    for row in curve.ambient_nodes():
        lines.append(" ".join(f"{v:.17g}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_snapshot(path: str | Path) -> tuple[ProfileCurve, float]:
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines or lines[0] != _MAGIC:
        raise HoroflowError(f"{path}: not a shape snapshot file")
    try:
        n = int(lines[1].split()[1])
        N = int(lines[2].split()[1])
        t = float(lines[3].split()[1])
        nodes = np.array([[float(v) for v in line.split()] for line in lines[4 : 4 + N]])
    except (IndexError, ValueError) as exc:
        raise HoroflowError(f"{path}: malformed snapshot header or node data: {exc}")
    if nodes.shape != (N, n + 2):
        raise HoroflowError(f"{path}: expected {N} nodes of dimension {n + 2}")
    return ProfileCurve.from_ambient(n, nodes), t


def series_header(n: int) -> list[str]:
    return (
        ["t", "dt"]
        + [f"W_{k}" for k in range(n + 2)]
        + ["sigmaMin", "rMax", "rMin", "phiPrimeMin", "speedMax"]
        + [f"hm_{k}" for k in range(1, n + 1)]
        + [f"kw_{k}" for k in range(1, n + 1)]
    )


class SeriesWriter:
    """Streams diagnostics records to a delimited text file."""

    def __init__(self, path: str | Path, n: int):
        self.n = n
        self._fh = open(path, "w", newline="")
        self._writer = csv.writer(self._fh)
        self._writer.writerow(series_header(n))

    def write(self, rec: DiagnosticsRecord) -> None:
        row = [rec.t, rec.dt, *rec.W, rec.sigma_min, rec.r_max, rec.r_min,
               rec.phip_min, rec.speed_max, *rec.hm, *rec.kw]
        self._writer.writerow([f"{v:.17g}" for v in row])

    def close(self) -> None:
        self._fh.close()

    def __enter__(self) -> "SeriesWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def read_series(path: str | Path) -> tuple[list[str], np.ndarray]:
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise HoroflowError(f"{path}: empty series file")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise HoroflowError(f"{path}:{lineno}: bad numeric value: {exc}")
    if not rows:
        raise HoroflowError(f"{path}: series file has a header but no samples")
    return header, np.array(rows)


def default_output_dir() -> str:
    return os.environ.get("HOROFLOW_OUTPUT_DIR", "runs")


def prepare_run_dir(config: RunConfig) -> Path:
    """outputDir/run-id with a copy of the config; snapshots/ inside."""
    root = Path(config.outputDir) / run_id(config)
    (root / "snapshots").mkdir(parents=True, exist_ok=True)
    (root / "config.cfg").write_text(serialize(config))
    return root
