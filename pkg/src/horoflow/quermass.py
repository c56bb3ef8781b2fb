"""Quermassintegrals, sphere calibration functions and integral-identity residuals.

W_0 is the enclosed volume, W_1 = |M|/(n+1), and the higher functionals
follow the recursion W_{k+1} = (1/(n+1)) int H_k + k/(n+2-k) W_{k-1}.
The calibration maps f_k and rho_k are defined by equality on centered
geodesic spheres and realized by numerical inversion in the radius.
"""

from __future__ import annotations

from math import cos, pi, sin

import numpy as np
from scipy.optimize import brentq

from .errors import NonMonotonic, NotMeanConvex, OutOfRange
from .geometry import (
    PointwiseGeometry,
    ProfileCurve,
    cap_radial_integral,
    enclosed_volume,
    integrate,
    unit_sphere_area,
)

_RHO_LO = 1e-9
_RHO_HI = pi / 2 - 1e-9


def quermassintegrals(geom: PointwiseGeometry, curve: ProfileCurve) -> np.ndarray:
    """W_0 .. W_{n+1} of the enclosed domain."""
    n = geom.n
    W = np.empty(n + 2)
    W[0] = enclosed_volume(curve)
    W[1] = integrate(geom, np.ones(geom.N)) / (n + 1)
    for k in range(1, n + 1):
        W[k + 1] = integrate(geom, geom.hk[:, k]) / (n + 1) + k / (n + 2 - k) * W[k - 1]
    return W


def sphere_quermass(rho: float, n: int, k: int) -> float:
    """W_k of the geodesic sphere of radius rho, from closed-form curvature integrals."""
    if not 0 < rho < pi / 2:
        raise ValueError(f"rho={rho} outside (0, pi/2)")
    if not 0 <= k <= n + 1:
        raise ValueError(f"k={k} outside 0..{n + 1}")
    omega = unit_sphere_area(n)
    area = omega * sin(rho) ** n
    cot = cos(rho) / sin(rho)
    W = [omega * cap_radial_integral(n, rho), area / (n + 1)]
    for j in range(1, k):
        W.append(area * cot**j / (n + 1) + j / (n + 2 - j) * W[j - 1])
    return W[k]


def sphere_weighted(rho: float, n: int, k: int) -> float:
    """The weighted functional (n+1)W_{k+1} - cos(rho) int H_k on a centered sphere."""
    omega = unit_sphere_area(n)
    area = omega * sin(rho) ** n
    cot = cos(rho) / sin(rho)
    return (n + 1) * sphere_quermass(rho, n, k + 1) - cos(rho) * area * cot**k


def _invert_on_spheres(value_fn, w: float, what: str) -> float:
    """Radius rho* with value_fn(rho*) = w, guarded by a monotonicity pre-scan."""
    grid = np.linspace(_RHO_LO, _RHO_HI, 257)
    vals = np.array([value_fn(r) for r in grid])
    diffs = np.diff(vals)
    if np.any(diffs <= 0):
        i = int(np.argmax(diffs <= 0))
        raise NonMonotonic(
            f"{what} is not strictly increasing near rho={grid[i]:.6f}; refusing to invert"
        )
    if not vals[0] <= w <= vals[-1]:
        raise OutOfRange(
            f"target {w:.6g} outside the attainable sphere range "
            f"[{vals[0]:.6g}, {vals[-1]:.6g}] of {what}"
        )
    return brentq(lambda r: value_fn(r) - w, _RHO_LO, _RHO_HI, xtol=1e-13, rtol=8.9e-16)


def f_k(w: float, n: int, k: int) -> float:
    """Sphere calibration of the quermass inequality: W_k of the centered
    sphere whose W_{k-1} equals w."""
    if w == 0.0:
        return 0.0
    rho = _invert_on_spheres(lambda r: sphere_quermass(r, n, k - 1), w, f"W_{k - 1} on spheres")
    return sphere_quermass(rho, n, k)


def rho_k(w: float, n: int, k: int) -> float:
    """Sphere calibration of the weighted inequality: the weighted functional
    of the centered sphere whose W_k equals w."""
    if w == 0.0:
        return 0.0
    rho = _invert_on_spheres(lambda r: sphere_quermass(r, n, k), w, f"W_{k} on spheres")
    return sphere_weighted(rho, n, k)


def hsiung_minkowski_residual(geom: PointwiseGeometry, k: int) -> float:
    """int phi' H_{k-1} - int u H_k; vanishes at scheme order on closed shapes."""
    if not 1 <= k <= geom.n:
        raise ValueError(f"k={k} outside 1..{geom.n}")
    return integrate(geom, geom.phip * geom.hk[:, k - 1] - geom.u * geom.hk[:, k])


def heintze_karcher_gap(geom: PointwiseGeometry) -> float:
    """int phi'/H_1 - int u; nonnegative, zero exactly on geodesic spheres."""
    H1 = geom.hk[:, 1]
    if H1.min() <= 0.0:
        raise NotMeanConvex(f"H_1 min = {H1.min():.6g}; the inequality needs H_1 > 0")
    return integrate(geom, geom.phip / H1 - geom.u)


def weighted_functional(geom: PointwiseGeometry, curve: ProfileCurve, k: int) -> float:
    """(n+1) W_{k+1} - int cos(r) H_k."""
    if not 0 <= k <= geom.n:
        raise ValueError(f"k={k} outside 0..{geom.n}")
    W = quermassintegrals(geom, curve)
    return (geom.n + 1) * W[k + 1] - integrate(geom, geom.phip * geom.hk[:, k])


def calibration_table(n: int, rhos: np.ndarray) -> str:
    """Structured-text sphere table: rho, W_0..W_{n+1}, weighted_1..weighted_n."""
    cols = ["rho"] + [f"W_{k}" for k in range(n + 2)] + [f"weighted_{k}" for k in range(1, n + 1)]
    lines = ["\t".join(cols)]
    for rho in rhos:
        row = [f"{rho:.17g}"]
        row += [f"{sphere_quermass(rho, n, k):.17g}" for k in range(n + 2)]
        row += [f"{sphere_weighted(rho, n, k):.17g}" for k in range(1, n + 1)]
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"
