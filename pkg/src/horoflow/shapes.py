"""Initial-shape library: spheres, off-center spheres, perturbed spheres."""

from math import pi

import numpy as np

from .geometry import ProfileCurve


def _param(n: int, N: int) -> np.ndarray:
    if n == 1:
        return np.linspace(0.0, 2.0 * pi, N, endpoint=False)
    return np.linspace(0.0, pi, N)


def _from_polar(n: int, theta: np.ndarray, r: np.ndarray) -> ProfileCurve:
    """Profile from radial distance r(theta) about the pole; theta is the
    azimuth of the profile direction in the (e1, e2)-plane."""
    nodes = np.column_stack([
        np.sin(r) * np.cos(theta),
        np.sin(r) * np.sin(theta),
        np.cos(r),
    ])
    return ProfileCurve(n, nodes)


def centered_sphere(n: int, N: int, rho: float) -> ProfileCurve:
    """Geodesic sphere of radius rho centered at the north pole."""
    if not 0.0 < rho < pi / 2:
        raise ValueError("radius must lie in (0, pi/2)")
    theta = _param(n, N)
    return _from_polar(n, theta, np.full_like(theta, rho))


def off_center_sphere(n: int, N: int, rho: float, center_distance: float) -> ProfileCurve:
    """Geodesic sphere of radius rho whose center sits on the axis at the
    given distance from the pole.  center_distance + rho = pi/2 gives the
    boundary horo-sphere touching the equator."""
    if not 0.0 < rho < pi / 2:
        raise ValueError("radius must lie in (0, pi/2)")
    if center_distance < 0.0 or center_distance + rho > pi / 2 + 1e-15:
        raise ValueError("sphere must stay inside the closed hemisphere")
    d = center_distance
    c = np.array([np.sin(d), 0.0, np.cos(d)])
    E1 = np.array([np.cos(d), 0.0, -np.sin(d)])  # along the axis, away from pole
    E2 = np.array([0.0, 1.0, 0.0])
    alpha = _param(n, N)
    nodes = (np.cos(rho) * c[None, :]
             + np.sin(rho) * (np.cos(alpha)[:, None] * E1[None, :]
                              + np.sin(alpha)[:, None] * E2[None, :]))
    return ProfileCurve(n, nodes)


def perturbed_sphere(n: int, N: int, rho: float, amplitude: float,
                     frequency: int) -> ProfileCurve:
    """Pole-centered sphere with radial perturbation a*cos(m*theta)."""
    theta = _param(n, N)
    r = rho + amplitude * np.cos(frequency * theta)
    if np.any(r <= 0.0) or np.any(r >= pi / 2):
        raise ValueError("perturbed radius left (0, pi/2)")
    return _from_polar(n, theta, r)


class CorpusShape:
    """A named corpus member; is_sphere marks exact geodesic spheres."""

    def __init__(self, label: str, curve: ProfileCurve, is_sphere: bool):
        self.label = label
        self.curve = curve
        self.is_sphere = is_sphere


def build_corpus() -> list:
    """Ten horo-convex shapes across n = 1 and n = 2 for the identity and
    inequality suites.  Axisymmetric members use large grids so that the
    quadrature error sits well below the sphere-equality tolerances."""
    return [
        CorpusShape("n1-centered-0.5", centered_sphere(1, 256, 0.5), True),
        CorpusShape("n1-centered-pi4", centered_sphere(1, 256, pi / 4), True),
        CorpusShape("n1-offcenter", off_center_sphere(1, 512, pi / 6, pi / 4), True),
        CorpusShape("n1-horosphere", off_center_sphere(1, 512, pi / 6, pi / 3), True),
        CorpusShape("n1-perturbed-m3", perturbed_sphere(1, 2048, 0.8, 0.03, 3), False),
        CorpusShape("n1-perturbed-m2", perturbed_sphere(1, 2048, 0.6, 0.04, 2), False),
        CorpusShape("n2-centered-pi4", centered_sphere(2, 32769, pi / 4), True),
        CorpusShape("n2-centered-0.6", centered_sphere(2, 32769, 0.6), True),
        CorpusShape("n2-offcenter", off_center_sphere(2, 8193, pi / 6, pi / 6), True),
        CorpusShape("n2-perturbed-m2", perturbed_sphere(2, 4097, 0.8, 0.02, 2), False),
    ]
