"""Synthetic artifacts in the documented external formats.

Built by hand on purpose: this package must stay decoupled from the
simulation code and read only what the formats promise.
"""

import math

import numpy as np
import pytest


def _series_text(rows=50):
    header = ("t,dt,W_0,W_1,W_2,sigmaMin,rMax,rMin,phiPrimeMin,speedMax,"
              "hm_1,kw_1")
    lines = [header]
    for i in range(rows):
        t = 0.01 * i
        w0 = 1.0 + 0.001 * i               # nondecreasing
        w1 = 2.0 + 1e-6 * math.sin(3 * i)  # conserved up to drift
        lines.append(
            f"{t:.17g},0.01,{w0:.17g},{w1:.17g},{math.pi:.17g},"
            f"0.05,0.9,0.7,0.6,0.001,1e-9,0.4"
        )
    return "\n".join(lines) + "\n"


def _snapshot_text(t, radius, n=1, N=64):
    theta = np.linspace(0.0, 2 * math.pi, N, endpoint=False)
    x = math.sin(radius) * np.cos(theta)
    y = math.sin(radius) * np.sin(theta)
    z = np.full(N, math.cos(radius))
    lines = ["horoflow-snapshot", f"n {n}", f"N {N}", f"t {t:.17g}"]
    for row in zip(x, y, z):
        lines.append(" ".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def _calibration_text(rows=40):
    lines = ["rho\tW_0\tW_1\tW_2\tweighted_1"]
    for i in range(1, rows + 1):
        rho = 0.03 * i
        # plausible monotone columns; the plot code only needs the shape
        w0 = 2 * math.pi * (1 - math.cos(rho))
        w1 = math.pi * math.sin(rho) ** 2
        lines.append(f"{rho:.17g}\t{w0:.17g}\t{w1:.17g}\t{math.pi:.17g}\t{w1:.17g}")
    return "\n".join(lines) + "\n"


@pytest.fixture
def series_path(tmp_path):
    p = tmp_path / "series.csv"
    p.write_text(_series_text())
    return p


@pytest.fixture
def snapshot_paths(tmp_path):
    paths = []
    for i, (t, r) in enumerate([(0.0, 0.9), (0.5, 0.8), (1.0, 0.7)]):
        p = tmp_path / f"{i:06d}.snap"
        p.write_text(_snapshot_text(t, r))
        paths.append(p)
    return paths


@pytest.fixture
def calibration_path(tmp_path):
    p = tmp_path / "table.tsv"
    p.write_text(_calibration_text())
    return p
