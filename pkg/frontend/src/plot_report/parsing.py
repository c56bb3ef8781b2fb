"""Readers for the documented artifact formats.

This package talks to the simulation only through its files: the
diagnostics series (CSV), shape snapshots (structured text), and the
sphere-calibration table (tab-separated columns).  Parse failures always
name the offending file and line.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

_SNAPSHOT_MAGIC = "horoflow-snapshot"


class ParseError(Exception):
    def __init__(self, path: str | Path, lineno: int | None, msg: str):
        where = f"{path}:{lineno}" if lineno is not None else str(path)
        super().__init__(f"{where}: {msg}")
        self.path = str(path)
        self.lineno = lineno


@dataclass(frozen=True)
class Series:
    columns: list[str]
    data: np.ndarray  # shape (rows, len(columns))

    def column(self, name: str) -> np.ndarray:
        try:
            return self.data[:, self.columns.index(name)]
        except ValueError:
            raise KeyError(f"series has no column {name!r}; columns: {self.columns}")

    @property
    def w_columns(self) -> list[str]:
        return [c for c in self.columns if c.startswith("W_")]


@dataclass(frozen=True)
class Snapshot:
    n: int
    t: float
    nodes: np.ndarray  # shape (N, n + 2) unit vectors

    @property
    def closed(self) -> bool:
        return self.n == 1

    def profile_xy(self) -> tuple[np.ndarray, np.ndarray]:
        """2D coordinates for drawing.

        n = 1: orthographic projection from the pole (first two ambient
        coordinates).  n >= 2: axisymmetric profile (orbit radius, height).
        """
        if self.n == 1:
            return self.nodes[:, 0], self.nodes[:, 1]
        b = np.sqrt(np.sum(self.nodes[:, :-1] ** 2, axis=1))
        return b, self.nodes[:, -1]


@dataclass(frozen=True)
class CalibrationTable:
    columns: list[str]
    data: np.ndarray

    def column(self, name: str) -> np.ndarray:
        try:
            return self.data[:, self.columns.index(name)]
        except ValueError:
            raise KeyError(f"calibration table has no column {name!r}")


def read_series(path: str | Path) -> Series:
    path = Path(path)
    if not path.exists():
        raise ParseError(path, None, "file does not exist")
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParseError(path, None, "empty series file")
    header = rows[0]
    if "t" not in header or not any(c.startswith("W_") for c in header):
        raise ParseError(path, 1, f"not a diagnostics series header: {header}")
    if len(rows) == 1:
        raise ParseError(path, 1, "series has a header but no samples")
    data = np.empty((len(rows) - 1, len(header)))
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(path, i, f"expected {len(header)} fields, got {len(row)}")
        try:
            data[i - 2] = [float(v) for v in row]
        except ValueError as exc:
            raise ParseError(path, i, f"bad numeric value: {exc}")
    return Series(columns=header, data=data)


def read_snapshot(path: str | Path) -> Snapshot:
    path = Path(path)
    if not path.exists():
        raise ParseError(path, None, "file does not exist")
    lines = path.read_text().splitlines()
    if not lines or lines[0] != _SNAPSHOT_MAGIC:
        raise ParseError(path, 1, "missing snapshot magic line")
    try:
        n = int(lines[1].split()[1])
        N = int(lines[2].split()[1])
        t = float(lines[3].split()[1])
    except (IndexError, ValueError) as exc:
        raise ParseError(path, 2, f"malformed snapshot header: {exc}")
    if len(lines) < 4 + N:
        raise ParseError(path, len(lines), f"expected {N} node rows, file truncated")
    nodes = np.empty((N, n + 2))
    for i in range(N):
        parts = lines[4 + i].split()
        if len(parts) != n + 2:
            raise ParseError(path, 5 + i, f"expected {n + 2} coordinates, got {len(parts)}")
        try:
            nodes[i] = [float(v) for v in parts]
        except ValueError as exc:
            raise ParseError(path, 5 + i, f"bad coordinate: {exc}")
    return Snapshot(n=n, t=t, nodes=nodes)


def read_calibration(path: str | Path) -> CalibrationTable:
    path = Path(path)
    if not path.exists():
        raise ParseError(path, None, "file does not exist")
    lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
    if not lines:
        raise ParseError(path, None, "empty calibration table")
    header = lines[0].split("\t")
    if header[0] != "rho":
        raise ParseError(path, 1, f"calibration table must start with a rho column, got {header[:1]}")
    if len(lines) == 1:
        raise ParseError(path, 1, "calibration table has a header but no rows")
    data = np.empty((len(lines) - 1, len(header)))
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split("\t")
        if len(parts) != len(header):
            raise ParseError(path, i, f"expected {len(header)} fields, got {len(parts)}")
        try:
            data[i - 2] = [float(v) for v in parts]
        except ValueError as exc:
            raise ParseError(path, i, f"bad numeric value: {exc}")
    return CalibrationTable(columns=header, data=data)


def relative_drift(values: np.ndarray) -> float:
    """(max - min) / |first|; the conservation metric quoted in verdicts."""
    scale = abs(values[0])
    if scale == 0.0:
        return float(values.max() - values.min())
    return float((values.max() - values.min()) / scale)
