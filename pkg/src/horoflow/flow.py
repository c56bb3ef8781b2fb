"""Explicit adaptive time stepping for the flow dx/dt = (phi'/F - u) nu.

Forward Euler (optionally Heun) with a parabolic CFL bound, reject-and-halve
on instability, arclength resampling, per-step diagnostics, and discrete
residual checks of the evolution equations of u and phi'.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator

from . import kernels
from .curvature import CurvatureFunctionSpec
from .errors import DegenerateCurve, HemisphereViolation, OutsideGamma, StepFailure
from .geometry import PointwiseGeometry, ProfileCurve, build_geometry, integrate
from .quermass import hsiung_minkowski_residual, quermassintegrals, weighted_functional

_MAX_HALVINGS = 20
_REJECT_GROWTH = 10.0


@dataclass
class FlowState:
    t: float
    curve: ProfileCurve
    geom: PointwiseGeometry
    dt: float


@dataclass
class DiagnosticsRecord:
    t: float
    dt: float
    W: np.ndarray  # W_0 .. W_{n+1}
    sigma_min: float
    r_max: float
    r_min: float
    phip_min: float
    speed_max: float
    hm: np.ndarray  # Hsiung-Minkowski residuals, k = 1..n
    kw: np.ndarray  # weighted functionals, k = 1..n

    @property
    def roundness(self) -> float:
        return self.r_max - self.r_min


@dataclass
class Trajectory:
    n: int
    k: int
    records: list[DiagnosticsRecord] = field(default_factory=list)
    snapshots: list[tuple[float, ProfileCurve]] = field(default_factory=list)
    reason: str = ""
    final: FlowState | None = None
    steps: int = 0


def _speed_data(
    geom: PointwiseGeometry, F: CurvatureFunctionSpec
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(speed, F value, F gradient) at every node; OutsideGamma off the cone."""
    kap = geom.kappa
    if not kap.min() > 0.0:
        node = int(np.argmin(kap.min(axis=1)))
        raise OutsideGamma(
            f"kappa min = {kap.min():.6g} at node {node}; speed undefined", node=node
        )
    if F.kind == "quotient":
        binom = np.array([float(comb(F.n, j)) for j in range(F.n + 1)])
        return kernels.quotient_speed(kap, F.k, geom.phip, geom.u, binom)
    Fv = np.array([F.evaluate(row) for row in kap])
    grad = np.array([F.gradient(row) for row in kap])
    return geom.phip / Fv - geom.u, Fv, grad


def speed_field(geom: PointwiseGeometry, F: CurvatureFunctionSpec) -> np.ndarray:
    """Normal speed phi'/F - u at every node."""
    return _speed_data(geom, F)[0]


def stable_dt(state: FlowState, F: CurvatureFunctionSpec, cfl_factor: float) -> float:
    """Parabolic bound cfl * min of cell^2 F^2 / (phi' * max gradient component)."""
    if cfl_factor <= 0.0:
        raise ValueError("cflFactor must be positive")
    _, Fv, grad = _speed_data(state.geom, F)
    g = state.geom
    bound = g.cells**2 * Fv**2 / (g.phip * grad.max(axis=1))
    return cfl_factor * float(bound.min())


def _gap_ratio(curve: ProfileCurve) -> float:
    """Max/min geodesic distance between consecutive nodes."""
    X = curve.nodes
    pairs = np.sum(X * np.roll(X, -1, axis=0), axis=1)
    if not curve.closed:
        pairs = pairs[:-1]
    gaps = np.arccos(np.clip(pairs, -1.0, 1.0))
    return float(gaps.max() / gaps.min())


def _resample(curve: ProfileCurve) -> ProfileCurve:
    """Redistribute nodes to uniform arclength; the shape is unchanged."""
    X = curve.nodes
    if curve.closed:
        Xc = np.vstack([X, X[:1]])
        gaps = np.arccos(np.clip(np.sum(Xc[:-1] * Xc[1:], axis=1), -1.0, 1.0))
        s = np.concatenate([[0.0], np.cumsum(gaps)])
        spl = CubicSpline(s, Xc, axis=0, bc_type="periodic")
        snew = np.linspace(0.0, s[-1], curve.N, endpoint=False)
    else:
        gaps = np.arccos(np.clip(np.sum(X[:-1] * X[1:], axis=1), -1.0, 1.0))
        s = np.concatenate([[0.0], np.cumsum(gaps)])
        spl = PchipInterpolator(s, X, axis=0)
        snew = np.linspace(0.0, s[-1], curve.N)
    nodes = spl(snew)
    if not curve.closed:
        nodes[0] = X[0]
        nodes[-1] = X[-1]
        nodes[:, 1] = np.abs(nodes[:, 1])
        nodes[0, 1] = 0.0
        nodes[-1, 1] = 0.0
    return ProfileCurve(n=curve.n, nodes=nodes).normalized()


def _advance_nodes(curve: ProfileCurve, geom, speed: np.ndarray, dt: float) -> np.ndarray:
    nodes = curve.nodes + dt * speed[:, None] * geom.nu
    nodes /= np.linalg.norm(nodes, axis=1, keepdims=True)
    if not curve.closed:
        nodes[:, 1] = np.abs(nodes[:, 1])
        nodes[0, 1] = 0.0
        nodes[-1, 1] = 0.0
    return nodes


def step(
    state: FlowState,
    dt: float,
    F: CurvatureFunctionSpec,
    *,
    second_order: bool = False,
    resample_ratio: float = 2.0,
) -> FlowState:
    """One accepted flow step; rejects and halves dt on numerical breakdown."""
    speed0, _, _ = _speed_data(state.geom, F)
    speed_max0 = float(np.abs(speed0).max())
    for _ in range(_MAX_HALVINGS + 1):
        try:
            nodes = _advance_nodes(state.curve, state.geom, speed0, dt)
            curve = ProfileCurve(n=state.curve.n, nodes=nodes)
            if second_order:
                geom_mid = build_geometry(curve)
                speed1, _, _ = _speed_data(geom_mid, F)
                half = 0.5 * dt * (speed0[:, None] * state.geom.nu + speed1[:, None] * geom_mid.nu)
                nodes = state.curve.nodes + half
                nodes /= np.linalg.norm(nodes, axis=1, keepdims=True)
                if not curve.closed:
                    nodes[:, 1] = np.abs(nodes[:, 1])
                    nodes[0, 1] = 0.0
                    nodes[-1, 1] = 0.0
                curve = ProfileCurve(n=state.curve.n, nodes=nodes)
            geom = build_geometry(curve)
            if _gap_ratio(curve) > resample_ratio:
                curve = _resample(curve)
                geom = build_geometry(curve)
            speed_new, _, _ = _speed_data(geom, F)
            speed_max1 = float(np.abs(speed_new).max())
            if not np.isfinite(speed_max1):
                raise FloatingPointError("non-finite speed")
            # absolute floor keeps rounding-level speeds on stationary spheres accepted
            if speed_max1 > _REJECT_GROWTH * speed_max0 + 1e-10:
                raise FloatingPointError("speed blow-up")
            return FlowState(t=state.t + dt, curve=curve, geom=geom, dt=dt)
        except (FloatingPointError, ValueError, DegenerateCurve, HemisphereViolation, OutsideGamma) as exc:
            last = exc
            dt *= 0.5
    raise StepFailure(f"step rejected {_MAX_HALVINGS} times; last failure: {last}")


def diagnostics(state: FlowState, F: CurvatureFunctionSpec) -> DiagnosticsRecord:
    g = state.geom
    speed, _, _ = _speed_data(g, F)
    W = quermassintegrals(g, state.curve)
    hm = np.array([hsiung_minkowski_residual(g, k) for k in range(1, g.n + 1)])
    kw = np.array(
        [(g.n + 1) * W[k + 1] - integrate(g, g.phip * g.hk[:, k]) for k in range(1, g.n + 1)]
    )
    return DiagnosticsRecord(
        t=state.t,
        dt=state.dt,
        W=W,
        sigma_min=float(g.sigma.min()),
        r_max=float(g.r.max()),
        r_min=float(g.r.min()),
        phip_min=float(g.phip.min()),
        speed_max=float(np.abs(speed).max()),
        hm=hm,
        kw=kw,
    )


def run(
    config,
    on_record: Callable[[DiagnosticsRecord], None] | None = None,
    on_snapshot: Callable[[float, ProfileCurve], None] | None = None,
) -> Trajectory:
    """Advance the flow until roundness < tolRound, t >= tMax, or failure.

    Records diagnostics for every accepted step; snapshots are kept (and
    passed to on_snapshot) every snapshotEvery steps plus first and last.
    """
    from .config import make_initial_shape

    curve = make_initial_shape(config)
    F = CurvatureFunctionSpec.quotient(config.n, config.k)
    state = FlowState(t=0.0, curve=curve, geom=build_geometry(curve), dt=0.0)
    traj = Trajectory(n=config.n, k=config.k)

    def emit(rec: DiagnosticsRecord) -> None:
        traj.records.append(rec)
        if on_record is not None:
            on_record(rec)

    def snap(st: FlowState) -> None:
        traj.snapshots.append((st.t, st.curve))
        if on_snapshot is not None:
            on_snapshot(st.t, st.curve)

    snap(state)
    steps = 0
    while True:
        try:
            rec = diagnostics(state, F)
        except OutsideGamma:
            traj.reason = "OutsideGamma"
            break
        emit(rec)
        if rec.roundness < config.tolRound:
            traj.reason = "Converged"
            break
        if state.t >= config.tMax:
            traj.reason = "TimeLimit"
            break
        try:
            dt = min(stable_dt(state, F, config.cflFactor), config.tMax - state.t)
            state = step(
                state,
                dt,
                F,
                second_order=config.secondOrderStepper,
                resample_ratio=config.resampleRatio,
            )
        except StepFailure:
            traj.reason = "StepFailure"
            break
        except OutsideGamma:
            traj.reason = "OutsideGamma"
            break
        steps += 1
        if config.snapshotEvery > 0 and steps % config.snapshotEvery == 0:
            snap(state)
    traj.steps = steps
    traj.final = state
    if not traj.snapshots or traj.snapshots[-1][1] is not state.curve:
        snap(state)
    return traj


def _fd_weights(h1: np.ndarray, h2: np.ndarray):
    """Nonuniform 3-point first/second derivative weights (prev, mid, next)."""
    d1 = (-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2)))
    d2 = (2.0 / (h1 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h2 * (h1 + h2)))
    return d1, d2


def _arc_derivatives(curve: ProfileCurve, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """First and second arclength derivatives of a per-node scalar."""
    X = curve.nodes
    if curve.closed:
        gaps = np.arccos(np.clip(np.sum(X * np.roll(X, -1, axis=0), axis=1), -1.0, 1.0))
        h1 = np.roll(gaps, 1)  # gap to previous node
        h2 = gaps
        fm = np.roll(f, 1)
        fp = np.roll(f, -1)
    else:
        gaps = np.arccos(np.clip(np.sum(X[:-1] * X[1:], axis=1), -1.0, 1.0))
        h1 = np.concatenate([[gaps[0]], gaps])  # reflected ghost at both ends
        h2 = np.concatenate([gaps, [gaps[-1]]])
        fm = np.concatenate([[f[1]], f[:-1]])
        fp = np.concatenate([f[1:], [f[-2]]])
    (a1, b1, c1), (a2, b2, c2) = _fd_weights(h1, h2)
    return a1 * fm + b1 * f + c1 * fp, a2 * fm + b2 * f + c2 * fp


def evolution_residuals(
    state: FlowState, F: CurvatureFunctionSpec, dt_probe: float
) -> dict[str, np.ndarray]:
    """Pointwise defect of the evolution equations of phi' and u.

    The discrete time derivative (central, probe steps +/- dt_probe without
    resampling) is compared against the spatially discretized right-hand
    sides; both residuals are O(dt_probe^2 + cell^2).
    """
    g = state.geom
    curve = state.curve
    speed, Fv, grad = _speed_data(g, F)

    lhs = {}
    probes = {}
    for direction in (+1.0, -1.0):
        nodes = _advance_nodes(curve, g, speed, direction * dt_probe)
        probes[direction] = build_geometry(ProfileCurve(n=curve.n, nodes=nodes))
    lhs_phip = (probes[1.0].phip - probes[-1.0].phip) / (2.0 * dt_probe)
    lhs_u = (probes[1.0].u - probes[-1.0].u) / (2.0 * dt_probe)

    phip_s, phip_ss = _arc_derivatives(curve, g.phip)
    u_s, u_ss = _arc_derivatives(curve, g.u)
    grad_prof = grad[:, 0]
    grad_rot = grad[:, 1:].sum(axis=1) if g.n > 1 else np.zeros(g.N)
    if g.n > 1:
        b = curve.nodes[:, 1]
        b_s, _ = _arc_derivatives(curve, b)
        axis = b <= 1e-13
        ratio = np.where(axis, 0.0, b_s / np.where(axis, 1.0, b))
        rot_phip = np.where(axis, phip_ss, ratio * phip_s)
        rot_u = np.where(axis, u_ss, ratio * u_s)
    else:
        rot_phip = np.zeros(g.N)
        rot_u = np.zeros(g.N)

    lap_phip = grad_prof * phip_ss + grad_rot * rot_phip
    lap_u = grad_prof * u_ss + grad_rot * rot_u
    trace = grad.sum(axis=1)
    kap2 = (grad * g.kappa**2).sum(axis=1)

    rhs_phip = g.phip / Fv**2 * lap_phip + g.u**2 - 2.0 * g.phip * g.u / Fv
    rhs_phip += g.phip**2 / Fv**2 * trace
    rhs_u = g.phip / Fv**2 * lap_u - phip_s * u_s
    rhs_u += g.phip / Fv**2 * (kap2 - Fv**2) * g.u + (g.phi**2 - g.u**2) / Fv

    return {"res_phip": lhs_phip - rhs_phip, "res_u": lhs_u - rhs_u}
