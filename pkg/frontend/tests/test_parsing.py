import math

import numpy as np
import pytest

from plot_report import (
    ParseError,
    read_calibration,
    read_series,
    read_snapshot,
    relative_drift,
)


def test_read_series_columns_and_values(series_path):
    s = read_series(series_path)
    assert s.columns[0] == "t"
    assert s.w_columns == ["W_0", "W_1", "W_2"]
    assert s.data.shape == (50, len(s.columns))
    assert s.column("W_2")[0] == pytest.approx(math.pi, abs=1e-15)


def test_series_missing_file_names_path(tmp_path):
    with pytest.raises(ParseError, match="does not exist"):
        read_series(tmp_path / "nope.csv")


def test_series_empty_file_names_file(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("")
    with pytest.raises(ParseError, match="empty.csv"):
        read_series(p)


def test_series_header_only_is_an_error(tmp_path):
    p = tmp_path / "h.csv"
    p.write_text("t,dt,W_0,W_1,sigmaMin,rMax,rMin,phiPrimeMin,speedMax\n")
    with pytest.raises(ParseError, match="no samples"):
        read_series(p)


def test_series_bad_value_identifies_line(series_path):
    text = series_path.read_text().splitlines()
    text[7] = text[7].replace(text[7].split(",")[2], "not-a-number", 1)
    series_path.write_text("\n".join(text) + "\n")
    with pytest.raises(ParseError, match=r":8: "):
        read_series(series_path)


def test_series_short_row_identifies_line(series_path):
    text = series_path.read_text().splitlines()
    text[3] = "0.1,0.01"
    series_path.write_text("\n".join(text) + "\n")
    with pytest.raises(ParseError, match=r":4: expected"):
        read_series(series_path)


def test_read_snapshot_nodes_unit(snapshot_paths):
    snap = read_snapshot(snapshot_paths[0])
    assert snap.n == 1 and snap.closed
    norms = np.linalg.norm(snap.nodes, axis=1)
    assert np.abs(norms - 1.0).max() < 1e-12
    x, y = snap.profile_xy()
    assert x.shape == y.shape == (snap.nodes.shape[0],)


def test_snapshot_bad_magic(tmp_path):
    p = tmp_path / "bad.snap"
    p.write_text("something-else\nn 1\nN 4\nt 0\n")
    with pytest.raises(ParseError, match="magic"):
        read_snapshot(p)


def test_snapshot_truncated_names_line(snapshot_paths):
    lines = snapshot_paths[0].read_text().splitlines()
    snapshot_paths[0].write_text("\n".join(lines[:10]) + "\n")
    with pytest.raises(ParseError, match="truncated"):
        read_snapshot(snapshot_paths[0])


def test_snapshot_bad_coordinate_names_line(snapshot_paths):
    lines = snapshot_paths[0].read_text().splitlines()
    lines[6] = "0.1 oops 0.2"
    snapshot_paths[0].write_text("\n".join(lines) + "\n")
    with pytest.raises(ParseError, match=r":7: "):
        read_snapshot(snapshot_paths[0])


def test_read_calibration(calibration_path):
    tab = read_calibration(calibration_path)
    assert tab.columns[0] == "rho"
    assert "weighted_1" in tab.columns
    assert np.all(np.diff(tab.column("rho")) > 0)


def test_calibration_bad_row_names_line(calibration_path):
    lines = calibration_path.read_text().splitlines()
    lines[5] = "0.1\t1.0"
    calibration_path.write_text("\n".join(lines) + "\n")
    with pytest.raises(ParseError, match=r":6: expected"):
        read_calibration(calibration_path)


def test_relative_drift_definition():
    v = np.array([2.0, 2.002, 1.998])
    assert relative_drift(v) == pytest.approx(0.004 / 2.0)
    assert relative_drift(np.array([0.0, 1e-9])) == pytest.approx(1e-9)
