"""Run configuration: a flat key = value text format with strict validation.

The file format is diff-friendly: one key per line, # comments allowed,
booleans as true/false. parse(serialize(config)) round-trips exactly.
"""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, fields
from math import pi

from .errors import ConfigError, NotHoroConvex
from .geometry import ProfileCurve, build_geometry
from .shapes import centered_sphere, off_center_sphere, perturbed_sphere

_SHAPES = ("CenteredSphere", "OffCenterSphere", "PerturbedSphere", "ProfileFile")


@dataclass
class RunConfig:
    n: int = 1
    mode: str = "curve"  # curve | axisymmetric
    k: int = 1
    N: int = 256
    shape: str = "CenteredSphere"
    rho: float = pi / 4
    centerDistance: float = 0.0
    amplitude: float = 0.0
    frequency: int = 2
    profilePath: str = ""
    cflFactor: float = 0.2
    tMax: float = 10.0
    tolRound: float = 1e-4
    outputEvery: int = 1
    snapshotEvery: int = 0
    outputDir: str = "runs"
    seed: int = 0
    allowNonHoroConvex: bool = False
    secondOrderStepper: bool = False
    resampleRatio: float = 2.0


def validate(config: RunConfig) -> None:
    """Reject invalid configurations with the offending field name."""
    if config.n < 1:
        raise ConfigError("n must be a positive integer", field="n")
    want_mode = "curve" if config.n == 1 else "axisymmetric"
    if config.mode not in ("curve", "axisymmetric"):
        raise ConfigError(f"unknown mode {config.mode!r}", field="mode")
    if config.mode != want_mode:
        raise ConfigError(f"mode must be {want_mode!r} for n={config.n}", field="mode")
    if not 1 <= config.k <= config.n:
        raise ConfigError(f"k must lie in 1..{config.n}", field="k")
    if config.N < 16:
        raise ConfigError("N must be at least 16", field="N")
    if config.shape not in _SHAPES:
        raise ConfigError(f"unknown shape {config.shape!r}", field="shape")
    if config.shape != "ProfileFile" and not 0.0 < config.rho < pi / 2:
        raise ConfigError("rho must lie in (0, pi/2)", field="rho")
    if config.shape == "OffCenterSphere":
        if config.centerDistance < 0.0:
            raise ConfigError("centerDistance must be nonnegative", field="centerDistance")
        # the boundary case rho + centerDistance = pi/2 is the horo-sphere
        if config.rho + config.centerDistance > pi / 2 + 1e-12:
            raise ConfigError(
                "rho + centerDistance must not exceed pi/2", field="centerDistance"
            )
    if config.shape == "PerturbedSphere":
        if config.amplitude < 0.0:
            raise ConfigError("amplitude must be nonnegative", field="amplitude")
        if config.frequency < 1:
            raise ConfigError("frequency must be a positive integer", field="frequency")
    if config.shape == "ProfileFile" and not config.profilePath:
        raise ConfigError("profilePath required for shape ProfileFile", field="profilePath")
    if config.cflFactor <= 0.0:
        raise ConfigError("cflFactor must be positive", field="cflFactor")
    if config.tMax <= 0.0:
        raise ConfigError("tMax must be positive", field="tMax")
    if config.tolRound <= 0.0:
        raise ConfigError("tolRound must be positive", field="tolRound")
    if config.outputEvery < 1:
        raise ConfigError("outputEvery must be at least 1", field="outputEvery")
    if config.snapshotEvery < 0:
        raise ConfigError("snapshotEvery must be nonnegative", field="snapshotEvery")
    if config.resampleRatio <= 1.0:
        raise ConfigError("resampleRatio must exceed 1", field="resampleRatio")


def serialize(config: RunConfig) -> str:
    lines = []
    for f in fields(RunConfig):
        v = getattr(config, f.name)
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, float):
            v = f"{v:.17g}"
        lines.append(f"{f.name} = {v}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> RunConfig:
    known = {f.name: f.type for f in fields(RunConfig)}
    defaults = RunConfig()
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}", field=key)
        current = getattr(defaults, key)
        try:
            if isinstance(current, bool):
                if val not in ("true", "false"):
                    raise ValueError(val)
                values[key] = val == "true"
            elif isinstance(current, int):
                values[key] = int(val)
            elif isinstance(current, float):
                values[key] = float(val)
            else:
                values[key] = val
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value {val!r} for {key}", field=key)
    config = RunConfig(**values)
    validate(config)
    return config


def run_id(config: RunConfig) -> str:
    """Deterministic short identifier derived from the config contents."""
    return hashlib.sha256(serialize(config).encode()).hexdigest()[:12]


def make_initial_shape(config: RunConfig) -> ProfileCurve:
    """Build the configured initial shape; certify horo-convexity at build time."""
    validate(config)
    if config.shape == "CenteredSphere":
        curve = centered_sphere(config.n, config.N, config.rho)
    elif config.shape == "OffCenterSphere":
        curve = off_center_sphere(config.n, config.N, config.rho, config.centerDistance)
    elif config.shape == "PerturbedSphere":
        curve = perturbed_sphere(
            config.n, config.N, config.rho, config.amplitude, config.frequency
        )
    else:
        from .io import read_snapshot

        curve, _ = read_snapshot(config.profilePath)
        if curve.n != config.n:
            raise ConfigError(
                f"profile file has n={curve.n}, config has n={config.n}", field="profilePath"
            )
    sigma_min = float(build_geometry(curve).sigma.min())
    # the boundary horo-sphere sits at sigma = 0 up to discretization
    if sigma_min < -1e-9 and not config.allowNonHoroConvex:
        raise NotHoroConvex(
            f"initial shape has horo-tensor margin {sigma_min:.6g} < 0; "
            "set allowNonHoroConvex to force the run"
        )
    return curve


def as_dict(config: RunConfig) -> dict:
    return asdict(config)
