"""Flow engine: stationarity, conservation, stepping, evolution residuals."""

from math import pi

import numpy as np
import pytest

from horoflow import (
    CurvatureFunctionSpec,
    RunConfig,
    StepFailure,
    build_geometry,
    centered_sphere,
    evolution_residuals,
    off_center_sphere,
    perturbed_sphere,
    run,
    speed_field,
    stable_dt,
    step,
)
from horoflow.flow import FlowState, diagnostics

F1 = CurvatureFunctionSpec.quotient(1, 1)


def _state(curve):
    return FlowState(t=0.0, curve=curve, geom=build_geometry(curve), dt=0.0)


def test_speed_vanishes_on_centered_spheres():
    for n, N in ((1, 256), (2, 257)):
        st = _state(centered_sphere(n, N, pi / 4))
        F = CurvatureFunctionSpec.quotient(n, n)
        assert np.abs(speed_field(st.geom, F)).max() < 1e-12


def test_speed_homogeneity_mock():
    # doubling kappa on a frozen geometry doubles F and halves phi'/F
    st = _state(perturbed_sphere(1, 128, 0.8, 0.02, 3))
    g = st.geom
    F = F1.value_field(g.kappa)
    F2 = F1.value_field(2.0 * g.kappa)
    np.testing.assert_allclose(F2, 2.0 * F, rtol=1e-12)


def test_off_center_sphere_speed_translates_toward_pole():
    st = _state(off_center_sphere(1, 256, pi / 6, pi / 4))
    s = speed_field(st.geom, F1)
    assert s.max() > 0.0 and s.min() < 0.0  # rigid translation field
    new = step(st, stable_dt(st, F1, 0.2), F1)
    from horoflow import best_fit_sphere

    fit = best_fit_sphere(new.curve)
    assert fit.residual < 1e-8  # still a geodesic circle
    assert np.arccos(fit.center[2]) < pi / 4  # center moved toward the pole


def test_stable_dt_parabolic_scaling():
    dt_small = stable_dt(_state(centered_sphere(1, 512, 0.8)), F1, 0.2)
    dt_big = stable_dt(_state(centered_sphere(1, 256, 0.8)), F1, 0.2)
    assert dt_big / dt_small == pytest.approx(4.0, rel=0.05)


def test_stable_dt_rejects_zero_cfl():
    with pytest.raises(ValueError):
        stable_dt(_state(centered_sphere(1, 64, 0.8)), F1, 0.0)


def test_sphere_is_discrete_fixed_point():
    st = _state(centered_sphere(1, 256, pi / 4))
    dt = stable_dt(st, F1, 0.2)
    x0 = st.curve.nodes.copy()
    for _ in range(50):
        st = step(st, dt, F1)
    assert np.abs(st.curve.nodes - x0).max() < 1e-12


def _nodes_after(dt, nsteps, *, second_order):
    st = _state(perturbed_sphere(1, 256, 0.8, 0.03, 3))
    for _ in range(nsteps):
        st = step(st, dt, F1, second_order=second_order)
        assert st.dt == dt  # no silent rejection: dt stays below the CFL bound
    return st.curve.nodes


def test_euler_is_first_order_in_time():
    # Richardson on node positions at fixed final time, same spatial grid
    dt0 = stable_dt(_state(perturbed_sphere(1, 256, 0.8, 0.03, 3)), F1, 0.2)
    ref = _nodes_after(dt0 / 16, 1600, second_order=False)
    errs = [np.abs(_nodes_after(dt0 / f, 100 * f, second_order=False) - ref).max()
            for f in (1, 2, 4)]
    assert 1.6 < errs[0] / errs[1] < 2.7
    assert 1.6 < errs[1] / errs[2] < 2.7


def test_oversized_step_triggers_reject_and_halve():
    st = _state(perturbed_sphere(1, 128, 0.8, 0.03, 3))
    dt = stable_dt(st, F1, 0.2)
    new = step(st, 1e4 * dt, F1)  # must survive by internal halving
    assert new.dt < 1e4 * dt
    assert np.isfinite(new.curve.nodes).all()


def test_equator_crossing_step_is_rejected_not_fatal():
    st = _state(perturbed_sphere(1, 128, 0.8, 0.03, 3))
    dt = stable_dt(st, F1, 0.2)
    new = step(st, 1e5 * dt, F1)  # first attempts push nodes past the equator
    assert new.dt < 1e5 * dt
    assert new.curve.nodes[:, -1].min() > 0.0


def test_step_failure_after_max_halvings():
    st = _state(perturbed_sphere(1, 128, 0.8, 0.03, 5))
    st.geom.kappa[:] = np.abs(st.geom.kappa) + 1e6  # poisoned cache: huge speeds
    with pytest.raises(StepFailure):
        step(st, 1e12, F1)


def test_run_converges_and_reports():
    cfg = RunConfig(n=1, mode="curve", k=1, N=128, shape="PerturbedSphere",
                    rho=0.8, amplitude=0.03, frequency=3, cflFactor=0.4,
                    tMax=5.0, tolRound=1e-3)
    traj = run(cfg)
    assert traj.reason == "Converged"
    assert traj.records[-1].roundness < 1e-3
    W1 = np.array([r.W[1] for r in traj.records])
    assert (W1.max() - W1.min()) / W1[0] < 1e-3


def test_run_from_sphere_converges_immediately():
    cfg = RunConfig(n=1, mode="curve", k=1, N=128, shape="CenteredSphere",
                    rho=0.7, tolRound=1e-6)
    traj = run(cfg)
    assert traj.reason == "Converged"
    assert traj.steps == 0


def test_run_time_limit():
    cfg = RunConfig(n=1, mode="curve", k=1, N=128, shape="PerturbedSphere",
                    rho=0.8, amplitude=0.03, frequency=3, cflFactor=0.2,
                    tMax=1e-3, tolRound=1e-9)
    traj = run(cfg)
    assert traj.reason == "TimeLimit"
    assert traj.final.t >= 1e-3 - 1e-12


def test_second_order_stepper_is_second_order_in_time():
    dt0 = stable_dt(_state(perturbed_sphere(1, 256, 0.8, 0.03, 3)), F1, 0.2)
    ref = _nodes_after(dt0 / 16, 1600, second_order=True)
    errs = [np.abs(_nodes_after(dt0 / f, 100 * f, second_order=True) - ref).max()
            for f in (1, 2, 4)]
    assert 3.2 < errs[0] / errs[1] < 5.0
    assert 3.2 < errs[1] / errs[2] < 5.0
    # and it beats forward Euler at the same dt by a wide margin
    ref_eu = _nodes_after(dt0 / 16, 1600, second_order=False)
    err_eu = np.abs(_nodes_after(dt0, 100, second_order=False) - ref_eu).max()
    assert errs[0] < 0.05 * err_eu


def test_evolution_residuals_vanish_on_spheres():
    st = _state(centered_sphere(1, 256, pi / 4))
    res = evolution_residuals(st, F1, 1e-5)
    assert np.abs(res["res_phip"]).max() < 1e-9
    assert np.abs(res["res_u"]).max() < 1e-9


def test_evolution_residuals_second_order():
    worst = {"res_phip": [], "res_u": []}
    for N in (256, 512, 1024):
        st = _state(perturbed_sphere(1, N, 0.8, 0.03, 3))
        dtp = stable_dt(st, F1, 0.2) / 10.0  # proportional to cell^2
        res = evolution_residuals(st, F1, dtp)
        for key in worst:
            worst[key].append(np.abs(res[key]).max())
    for key, vals in worst.items():
        assert vals[0] / vals[1] == pytest.approx(4.0, rel=0.25), key
        assert vals[1] / vals[2] == pytest.approx(4.0, rel=0.25), key


def test_evolution_residuals_rotation_equivariance():
    from horoflow import ProfileCurve

    c = perturbed_sphere(1, 256, 0.8, 0.03, 3)
    st = _state(c)
    dtp = stable_dt(st, F1, 0.2) / 10.0
    res0 = evolution_residuals(st, F1, dtp)
    a = 1.1
    R = np.array([[np.cos(a), -np.sin(a), 0], [np.sin(a), np.cos(a), 0], [0, 0, 1.0]])
    st_rot = _state(ProfileCurve(1, c.nodes @ R.T))
    res1 = evolution_residuals(st_rot, F1, dtp)
    for key in res0:
        assert np.abs(res0[key]).max() == pytest.approx(np.abs(res1[key]).max(), rel=1e-6)


def test_evolution_residuals_axisymmetric():
    st = _state(perturbed_sphere(2, 513, 0.8, 0.02, 2))
    F = CurvatureFunctionSpec.quotient(2, 2)
    dtp = stable_dt(st, F, 0.2) / 10.0
    res = evolution_residuals(st, F, dtp)
    assert np.abs(res["res_phip"]).max() < 1e-4
    assert np.abs(res["res_u"]).max() < 1e-3


def test_diagnostics_fields_finite():
    st = _state(perturbed_sphere(2, 129, 0.8, 0.02, 2))
    rec = diagnostics(st, CurvatureFunctionSpec.quotient(2, 2))
    values = [rec.t, rec.dt, *rec.W, rec.sigma_min, rec.r_max, rec.r_min,
              rec.phip_min, rec.speed_max, *rec.hm, *rec.kw]
    assert np.isfinite(values).all()
