"""Typed failure modes shared across the package."""


class HoroflowError(Exception):
    """Base class for all package errors."""


class DegenerateCurve(HoroflowError):
    """Consecutive curve nodes coincide within tolerance."""


class HemisphereViolation(HoroflowError):
    """A node left the open northern hemisphere (cos r <= 0)."""


class GridMismatch(HoroflowError):
    """Per-node data does not match the geometry grid."""


class NotStarshaped(HoroflowError):
    """Radial map about the detected star center is multivalued."""


class OutsideGamma(HoroflowError):
    """Principal curvature vector left the positive cone."""

    def __init__(self, msg: str, node: int | None = None):
        super().__init__(msg)
        self.node = node


class NotMeanConvex(HoroflowError):
    """Mean curvature is nonpositive somewhere."""


class OutOfRange(HoroflowError):
    """Requested value outside the attainable sphere-calibration range."""


class NonMonotonic(HoroflowError):
    """Sphere-calibration map failed its monotonicity pre-scan."""


class StepFailure(HoroflowError):
    """Time step rejected too many times; numerical analogue of finite T*."""


class NotHoroConvex(HoroflowError):
    """Initial shape failed the horo-convexity certificate."""


class ConfigError(HoroflowError):
    """Invalid run configuration."""

    def __init__(self, msg: str, field: str | None = None):
        super().__init__(msg)
        self.field = field
