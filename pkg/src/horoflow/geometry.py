"""Hypersurface geometry in the open northern hemisphere.

Shapes are represented by a profile curve on a totally geodesic 2-sphere
through the north pole (the ambient unit sphere itself for n = 1, the
generator of a hypersurface of revolution for n >= 2).  Nodes are unit
3-vectors in profile-plane coordinates (e_a, e_axis-normal, e_pole); the
pole direction is the last coordinate.
"""

from dataclasses import dataclass, field
from math import gamma, pi

import numpy as np

from . import kernels
from .errors import DegenerateCurve, GridMismatch, HemisphereViolation, NotStarshaped

POLE = np.array([0.0, 0.0, 1.0])
COINCIDENCE_TOL = 1e-12
UNIT_TOL = 1e-12


def unit_sphere_area(n: int) -> float:
    """Surface area omega_n of the unit n-sphere."""
    return 2.0 * pi ** ((n + 1) / 2.0) / gamma((n + 1) / 2.0)


def cap_radial_integral(n: int, rho):
    """int_0^rho sin^n(s) ds, vectorized in rho."""
    rho = np.asarray(rho, dtype=float)
    if n == 0:
        return rho + 0.0
    if n == 1:
        return 1.0 - np.cos(rho)
    return ((n - 1) * cap_radial_integral(n - 2, rho)
            - np.sin(rho) ** (n - 1) * np.cos(rho)) / n


def binomial_row(n: int) -> np.ndarray:
    row = np.ones(n + 1)
    for k in range(1, n + 1):
        row[k] = row[k - 1] * (n - k + 1) / k
    return row


@dataclass
class ProfileCurve:
    """Discrete generator of a hypersurface of S^{n+1}_+.

    nodes: (N, 3) unit vectors; closed loop for n = 1, axis-to-axis arc
    (nodes[0], nodes[-1] on the plane y = 0) for n >= 2.
    """

    n: int
    nodes: np.ndarray

    def __post_init__(self):
        self.nodes = np.ascontiguousarray(self.nodes, dtype=float)

    @property
    def closed(self) -> bool:
        return self.n == 1

    @property
    def N(self) -> int:
        return self.nodes.shape[0]

    def normalized(self) -> "ProfileCurve":
        norms = np.sqrt(np.einsum("ij,ij->i", self.nodes, self.nodes))
        return ProfileCurve(self.n, self.nodes / norms[:, None])

    def validate(self):
        if self.n < 1:
            raise ValueError("hypersurface dimension must be >= 1")
        if self.N < 16:
            raise ValueError(f"need at least 16 nodes, got {self.N}")
        norms = np.sqrt(np.einsum("ij,ij->i", self.nodes, self.nodes))
        if np.max(np.abs(norms - 1.0)) > UNIT_TOL:
            raise ValueError("nodes are not unit vectors; call normalized()")
        if np.any(self.nodes[:, 2] <= 0.0):
            raise HemisphereViolation("node outside the open northern hemisphere")
        nxt = np.roll(self.nodes, -1, axis=0) if self.closed else self.nodes[1:]
        cur = self.nodes if self.closed else self.nodes[:-1]
        gap = np.sqrt(np.einsum("ij,ij->i", nxt - cur, nxt - cur))
        if np.min(gap) < COINCIDENCE_TOL:
            raise DegenerateCurve("consecutive nodes coincide")
        if not self.closed:
            if max(abs(self.nodes[0, 1]), abs(self.nodes[-1, 1])) > 1e-10:
                raise ValueError("profile endpoints must lie on the axis plane")
            if np.any(self.nodes[1:-1, 1] <= 0.0):
                raise ValueError("interior profile nodes must have positive "
                                 "distance from the axis plane")

    def ambient_nodes(self) -> np.ndarray:
        """Nodes as (n+2)-vectors with the pole direction last."""
        dim = self.n + 2
        out = np.zeros((self.N, dim))
        out[:, 0] = self.nodes[:, 0]
        out[:, 1] = self.nodes[:, 1]
        out[:, dim - 1] = self.nodes[:, 2]
        return out

    @staticmethod
    def from_ambient(n: int, ambient: np.ndarray) -> "ProfileCurve":
        ambient = np.asarray(ambient, dtype=float)
        dim = n + 2
        if ambient.shape[1] != dim:
            raise ValueError(f"expected {dim}-vectors for n={n}")
        mid = ambient[:, 2:dim - 1]
        if mid.size and np.max(np.abs(mid)) > 1e-12:
            raise ValueError("nodes do not lie on the profile 3-plane")
        nodes = np.column_stack([ambient[:, 0], ambient[:, 1], ambient[:, dim - 1]])
        return ProfileCurve(n, nodes)


@dataclass
class PointwiseGeometry:
    """All per-node extrinsic geometry of a profile curve."""

    n: int
    r: np.ndarray            # geodesic distance to the pole
    phi: np.ndarray          # sin r
    phip: np.ndarray         # cos r
    nu: np.ndarray           # (N, 3) outward unit normal in the profile plane
    u: np.ndarray            # support function, -<e_pole, nu>
    kappa: np.ndarray        # (N, n) principal curvatures
    area_element: np.ndarray # n-volume of each node cell (rotation included)
    hk: np.ndarray           # (N, n+1) normalized symmetric functions H_0..H_n
    sigma: np.ndarray        # (N, n) eigenvalues of the horo-tensor
    cells: np.ndarray        # profile arclength cells (no rotation factor)
    star_center: np.ndarray = field(default=None)

    @property
    def N(self) -> int:
        return self.r.shape[0]

    @property
    def sigma_min(self) -> float:
        return float(np.min(self.sigma))


def _weighted_center(nodes, weights, axisymmetric):
    c = weights @ nodes
    if axisymmetric:
        c[1] = 0.0
    nc = np.linalg.norm(c)
    if nc < 1e-14:
        raise NotStarshaped("no usable star center (mean direction vanishes)")
    return c / nc


def build_geometry(curve: ProfileCurve) -> PointwiseGeometry:
    """Populate all pointwise geometry of a valid profile curve.

    The normal is oriented out of the enclosed domain (checked against the
    detected star center; flipped if u would come out negative on
    pole-centered spheres).
    """
    curve.validate()
    X = curve.nodes
    n = curve.n

    if curve.closed:
        cells, nu, kap_prof = kernels.closed_frame(X)
        kap_rot = None
    else:
        cells, nu, kap_prof = kernels.open_frame(X)
        p2 = X[:, 1]
        kap_rot = np.empty_like(kap_prof)
        interior = p2 > 1e-12
        kap_rot[interior] = nu[interior, 1] / p2[interior]
        kap_rot[~interior] = kap_prof[~interior]

    phip = X[:, 2]
    phi = np.sqrt(np.clip(1.0 - phip * phip, 0.0, None))
    r = np.arccos(np.clip(phip, -1.0, 1.0))

    if n == 1:
        weights = cells
    else:
        weights = cells * X[:, 1] ** (n - 1)
    center = _weighted_center(X, weights, axisymmetric=not curve.closed)

    # outward test: <nu, direction toward center> must be negative
    toward = center[None, :] - (X @ center)[:, None] * X
    inward = float(np.sum(weights * np.einsum("ij,ij->i", nu, toward)))
    if inward > 0.0:
        nu = -nu
        kap_prof = -kap_prof
        if kap_rot is not None:
            kap_rot = -kap_rot

    u = -nu[:, 2]

    if n == 1:
        kappa = kap_prof[:, None]
        area = cells.copy()
    else:
        kappa = np.empty((curve.N, n))
        kappa[:, 0] = kap_prof
        for j in range(1, n):
            kappa[:, j] = kap_rot
        area = cells * unit_sphere_area(n - 1) * X[:, 1] ** (n - 1)

    binom = binomial_row(n)
    hk = kernels.elementary(kappa) / binom[None, :]
    sigma = phip[:, None] * kappa + (u - 1.0)[:, None]

    return PointwiseGeometry(
        n=n, r=r, phi=phi, phip=phip, nu=nu, u=u, kappa=kappa,
        area_element=area, hk=hk, sigma=sigma, cells=cells,
        star_center=center,
    )


def integrate(geom: PointwiseGeometry, f) -> float:
    """Quadrature of a per-node scalar against the area element."""
    f = np.asarray(f, dtype=float)
    if f.shape != geom.area_element.shape:
        raise GridMismatch(
            f"integrand has shape {f.shape}, grid has {geom.area_element.shape}")
    return float(np.dot(f, geom.area_element))


def _psi_angles_closed(X, center):
    """Azimuth of each node about the star center, plus radial distances."""
    # deterministic orthonormal frame perpendicular to center
    trial = POLE if abs(center[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    E1 = trial - np.dot(trial, center) * center
    E1 /= np.linalg.norm(E1)
    E2 = np.cross(center, E1)
    rho = np.arccos(np.clip(X @ center, -1.0, 1.0))
    psi = np.arctan2(X @ E2, X @ E1)
    return psi, rho


def enclosed_volume(curve: ProfileCurve) -> float:
    """(n+1)-volume of the domain enclosed by the hypersurface.

    Radial quadrature about the auto-detected star center; raises
    NotStarshaped when the radial map about that center is multivalued.
    """
    curve.validate()
    X = curve.nodes
    n = curve.n

    if curve.closed:
        cells, _, _ = kernels.closed_frame(X)
        weights = cells
    else:
        cells, _, _ = kernels.open_frame(X)
        weights = cells * X[:, 1] ** (n - 1)
    center = _weighted_center(X, weights, axisymmetric=not curve.closed)

    if n == 1:
        psi, rho = _psi_angles_closed(X, center)
        dpsi = np.diff(psi, append=psi[0])
        dpsi = (dpsi + pi) % (2.0 * pi) - pi
        if not (np.all(dpsi > 0.0) or np.all(dpsi < 0.0)):
            raise NotStarshaped("radial angle about the star center is not monotone")
        winding = np.sum(dpsi)
        if abs(abs(winding) - 2.0 * pi) > 1e-9:
            raise NotStarshaped("curve does not wind once about the star center")
        f = 1.0 - np.cos(rho)
        fnext = np.roll(f, -1)
        return float(abs(np.sum(0.5 * (f + fnext) * dpsi)))

    # axisymmetric: polar angle of each profile node about the on-axis center
    rho = np.arccos(np.clip(X @ center, -1.0, 1.0))
    if np.min(rho) < 1e-12:
        raise NotStarshaped("a node coincides with the star center")
    w = (X - np.cos(rho)[:, None] * center) / np.sin(rho)[:, None]
    A = w[0].copy()
    A[1] = 0.0
    A /= np.linalg.norm(A)
    psi = np.arctan2(w[:, 1], w @ A)
    dpsi = np.diff(psi)
    if not np.all(dpsi > 0.0):
        raise NotStarshaped("profile polar angle about the star center is not monotone")
    if abs(psi[0]) > 1e-9 or abs(psi[-1] - pi) > 1e-9:
        raise NotStarshaped("profile does not span the axis about the star center")
    f = np.sin(psi) ** (n - 1) * cap_radial_integral(n, rho)
    vol = unit_sphere_area(n - 1) * np.sum(0.5 * (f[1:] + f[:-1]) * dpsi)
    return float(vol)
