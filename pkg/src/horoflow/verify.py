"""Pass/fail verdicts for the theorem-shaped claims the artifact can test.

Monotonicity and conservation along trajectories, the quermass and weighted
inequalities against their sphere calibrations, off-center sphere rigidity,
and the horo-sphere identity. Checks distinguish a violated claim from a
hypothesis (horo-convexity, positive cone) that is not met.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, pi, sin

import numpy as np
from scipy.optimize import least_squares

from .errors import NotHoroConvex
from .flow import Trajectory
from .geometry import PointwiseGeometry, ProfileCurve, build_geometry
from .quermass import f_k, quermassintegrals, rho_k, weighted_functional
from .shapes import off_center_sphere


@dataclass
class VerdictCheck:
    name: str
    claim: str
    worst_violation: float
    threshold: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.worst_violation <= self.threshold


@dataclass
class VerdictReport:
    provenance: dict
    checks: list[VerdictCheck] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = ["verdict report"]
        for key in sorted(self.provenance):
            lines.append(f"  {key} = {self.provenance[key]}")
        for c in self.checks:
            state = "pass" if c.passed else "FAIL"
            line = (
                f"check {c.name} | {c.claim} | worst={c.worst_violation:.6e} "
                f"threshold={c.threshold:.1e} | {state}"
            )
            if c.note:
                line += f" | {c.note}"
            lines.append(line)
        lines.append("overall " + ("PASS" if self.all_pass else "FAIL"))
        return "\n".join(lines) + "\n"


def verify_monotonicity(
    traj: Trajectory,
    k: int,
    *,
    drift_tol: float = 1e-3,
    step_slack: float = 1e-8,
    rmax_slack: float = 1e-10,
) -> VerdictReport:
    """Conservation of W_k and the per-step monotone quantities of a run."""
    prov = {"n": traj.n, "k_flow": traj.k, "k_checked": k, "reason": traj.reason}
    report = VerdictReport(provenance=prov)
    if len(traj.records) < 2:
        report.checks.append(
            VerdictCheck(
                name="monotonicity",
                claim="trajectory statistics",
                worst_violation=0.0,
                threshold=step_slack,
                note="insufficient samples; vacuous pass",
            )
        )
        return report

    Wk = np.array([r.W[k] for r in traj.records])
    Wkm1 = np.array([r.W[k - 1] for r in traj.records])
    rmax = np.array([r.r_max for r in traj.records])
    kw = np.array([r.kw[k - 1] for r in traj.records])

    report.checks.append(
        VerdictCheck(
            name=f"W_{k} conservation",
            claim=f"relative drift of W_{k} stays small",
            worst_violation=float((Wk.max() - Wk.min()) / abs(Wk[0])),
            threshold=drift_tol,
        )
    )
    report.checks.append(
        VerdictCheck(
            name=f"W_{k - 1} monotone growth",
            claim=f"W_{k - 1} nondecreasing per step",
            worst_violation=float(max(0.0, -np.diff(Wkm1).min())),
            threshold=step_slack,
        )
    )
    report.checks.append(
        VerdictCheck(
            name="rMax monotone decay",
            claim="max distance to the pole nonincreasing per step",
            worst_violation=float(max(0.0, np.diff(rmax).max())),
            threshold=rmax_slack,
        )
    )
    report.checks.append(
        VerdictCheck(
            name=f"weighted functional {k} decay",
            claim=f"(n+1)W_{k + 1} - int cos(r) H_{k} nonincreasing per step",
            worst_violation=float(max(0.0, np.diff(kw).max())),
            threshold=step_slack,
        )
    )
    return report


@dataclass
class InequalityCheck:
    lhs: float
    rhs: float
    margin: float
    sigma_min: float
    tol: float

    @property
    def hypothesis_met(self) -> bool:
        """Horo-convexity, the hypothesis under which the claim is in force."""
        return self.sigma_min >= -1e-9

    @property
    def passed(self) -> bool:
        return (not self.hypothesis_met) or self.margin >= -self.tol

    @property
    def status(self) -> str:
        if not self.hypothesis_met:
            return "hypothesis-not-met"
        return "pass" if self.margin >= -self.tol else "FAIL"


def verify_inequality(
    geom: PointwiseGeometry, curve: ProfileCurve, k: int, tol: float = 1e-6
) -> InequalityCheck:
    """W_k >= f_k(W_{k-1}) with the sphere calibration on the right."""
    W = quermassintegrals(geom, curve)
    rhs = f_k(W[k - 1], geom.n, k)
    return InequalityCheck(
        lhs=float(W[k]),
        rhs=rhs,
        margin=float(W[k] - rhs),
        sigma_min=float(geom.sigma.min()),
        tol=tol,
    )


def verify_weighted_inequality(
    geom: PointwiseGeometry, curve: ProfileCurve, k: int, tol: float = 1e-6
) -> InequalityCheck:
    """(n+1)W_{k+1} - int cos(r) H_k >= rho_k(W_k)."""
    W = quermassintegrals(geom, curve)
    lhs = weighted_functional(geom, curve, k)
    rhs = rho_k(W[k], geom.n, k)
    return InequalityCheck(
        lhs=lhs,
        rhs=rhs,
        margin=lhs - rhs,
        sigma_min=float(geom.sigma.min()),
        tol=tol,
    )


def verify_horo_sphere(center_distance: float, radius: float, n: int = 1, N: int = 512) -> float:
    """Max defect of the off-center sphere identities.

    The horo-tensor eigenvalues must equal cos(d)/sin(r0) - 1 at every node,
    and the law-of-cosines relation cos d = phi' cos r0 + sin r0 u must hold
    pointwise. Returns the larger of the two worst-case deviations.
    """
    if center_distance + radius > pi / 2 + 1e-12:
        raise ValueError("sphere must stay inside the closed hemisphere")
    curve = off_center_sphere(n, N, radius, center_distance)
    geom = build_geometry(curve)
    sigma_expected = cos(center_distance) / sin(radius) - 1.0
    dev_sigma = float(np.abs(geom.sigma - sigma_expected).max())
    lhs = cos(center_distance)
    rhs = geom.phip * cos(radius) + sin(radius) * geom.u
    dev_cos = float(np.abs(lhs - rhs).max())
    return max(dev_sigma, dev_cos)


@dataclass
class SphereFit:
    center: np.ndarray  # profile-plane coordinates of the fitted center
    radius: float
    residual: float  # max |distance to center - radius| over nodes


def best_fit_sphere(curve: ProfileCurve) -> SphereFit:
    """Least-squares geodesic sphere through the nodes.

    For curves the center ranges over the profile 2-sphere; for axisymmetric
    hypersurfaces it is constrained to the rotation axis.
    """
    X = curve.nodes
    r_guess = float(np.mean(np.arccos(np.clip(X[:, 2], -1.0, 1.0))))

    if curve.n == 1:

        def center(p):
            a, b = p[0], p[1]
            return np.array([sin(a) * cos(b), sin(a) * sin(b), cos(a)])

        x0 = np.array([1e-3, 0.0, r_guess])
    else:

        def center(p):
            a = p[0]
            return np.array([sin(a), 0.0, cos(a)])

        x0 = np.array([1e-3, r_guess])

    def resid(p):
        c = center(p)
        return np.arccos(np.clip(X @ c, -1.0, 1.0)) - p[-1]

    sol = least_squares(resid, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    c = center(sol.x)
    dev = np.arccos(np.clip(X @ c, -1.0, 1.0)) - sol.x[-1]
    return SphereFit(center=c, radius=float(sol.x[-1]), residual=float(np.abs(dev).max()))


def require_horo_convex(geom: PointwiseGeometry, what: str = "shape") -> None:
    sigma_min = float(geom.sigma.min())
    if sigma_min < -1e-9:
        raise NotHoroConvex(f"{what} has horo-tensor margin {sigma_min:.6g} < 0")
