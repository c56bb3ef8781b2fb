"""Numerical laboratory for locally constrained inverse curvature flows on
hypersurfaces of the open northern hemisphere of the round unit sphere."""

from .config import RunConfig, make_initial_shape, parse, run_id, serialize
from .curvature import (
    CurvatureFunctionSpec,
    HoroMargin,
    ValidationReport,
    h_k,
    horo_margin,
    quotient_F,
    quotient_F_gradient,
    validate_assumptions,
)
from .errors import (
    ConfigError,
    DegenerateCurve,
    GridMismatch,
    HemisphereViolation,
    HoroflowError,
    NonMonotonic,
    NotHoroConvex,
    NotMeanConvex,
    NotStarshaped,
    OutOfRange,
    OutsideGamma,
    StepFailure,
)
from .flow import (
    DiagnosticsRecord,
    FlowState,
    Trajectory,
    evolution_residuals,
    run,
    speed_field,
    stable_dt,
    step,
)
from .geometry import (
    PointwiseGeometry,
    ProfileCurve,
    build_geometry,
    enclosed_volume,
    integrate,
)
from .quermass import (
    calibration_table,
    f_k,
    heintze_karcher_gap,
    hsiung_minkowski_residual,
    quermassintegrals,
    rho_k,
    sphere_quermass,
    sphere_weighted,
    weighted_functional,
)
from .shapes import build_corpus, centered_sphere, off_center_sphere, perturbed_sphere
from .verify import (
    InequalityCheck,
    SphereFit,
    VerdictCheck,
    VerdictReport,
    best_fit_sphere,
    verify_horo_sphere,
    verify_inequality,
    verify_monotonicity,
    verify_weighted_inequality,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
