"""Symmetric curvature functions, speed functions and the horo-convexity certificate.

Normalized elementary symmetric polynomials H_k, the quotient speeds
H_k / H_{k-1}, randomized validation of the structural assumptions a speed
function must satisfy (monotone, 1-homogeneous, concave, inverse concave),
and the horo-tensor margin sigma_i = phi' kappa_i + u - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import OutsideGamma
from .geometry import PointwiseGeometry


def _sigma_polys(kappa: np.ndarray) -> np.ndarray:
    """All elementary symmetric polynomials e_0..e_n of one kappa vector."""
    kappa = np.asarray(kappa, dtype=float)
    n = kappa.shape[0]
    e = np.zeros(n + 1)
    e[0] = 1.0
    for i in range(n):
        # prepend kappa_i: e_j <- e_j + kappa_i e_{j-1}, descending j
        for j in range(min(i + 1, n), 0, -1):
            e[j] += kappa[i] * e[j - 1]
    return e


def h_k(kappa: Sequence[float], k: int) -> float:
    """Normalized elementary symmetric polynomial H_k, with H_k(1,..,1) = 1."""
    kappa = np.asarray(kappa, dtype=float)
    n = kappa.shape[0]
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    return _sigma_polys(kappa)[k] / comb(n, k)


def _check_gamma(kappa: np.ndarray) -> None:
    bad = np.flatnonzero(~(kappa > 0.0))
    if bad.size:
        raise OutsideGamma(
            f"kappa[{bad[0]}] = {kappa.flat[bad[0]]:.6g} is not positive", node=int(bad[0])
        )


def quotient_F(kappa: Sequence[float], k: int) -> float:
    """Quotient speed H_k / H_{k-1} on the positive cone."""
    kappa = np.asarray(kappa, dtype=float)
    _check_gamma(kappa)
    n = kappa.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    e = _sigma_polys(kappa)
    return (comb(n, k - 1) / comb(n, k)) * e[k] / e[k - 1]


def quotient_F_gradient(kappa: Sequence[float], k: int) -> np.ndarray:
    """Gradient of H_k/H_{k-1} via deleted-variable symmetric polynomials."""
    kappa = np.asarray(kappa, dtype=float)
    _check_gamma(kappa)
    n = kappa.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    e = _sigma_polys(kappa)
    grad = np.empty(n)
    c = comb(n, k - 1) / comb(n, k)
    for i in range(n):
        # d_j = e_j(kappa with kappa_i deleted): d_j = e_j - kappa_i d_{j-1}
        d = 1.0
        dkm1 = 1.0 if k == 1 else 0.0
        dkm2 = 1.0 if k == 2 else 0.0
        for j in range(1, k):
            d = e[j] - kappa[i] * d
            if j == k - 1:
                dkm1 = d
            if j == k - 2:
                dkm2 = d
        # dsigma_k/dkappa_i = d_{k-1}, dsigma_{k-1}/dkappa_i = d_{k-2}
        grad[i] = c * (dkm1 * e[k - 1] - e[k] * dkm2) / e[k - 1] ** 2
    return grad


SpeedFn = Callable[[np.ndarray], float]
GradFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class CurvatureFunctionSpec:
    """A 1-homogeneous speed function F with its gradient in kappa.

    kind is "quotient" (with quotient order k), "mean", or "custom".
    evaluate and gradient act on a single kappa vector of length n.
    """

    kind: str
    n: int
    k: int | None
    evaluate: SpeedFn
    gradient: GradFn
    label: str = ""

    @staticmethod
    def quotient(n: int, k: int) -> "CurvatureFunctionSpec":
        if not 1 <= k <= n:
            raise ValueError(f"k={k} outside 1..{n}")
        return CurvatureFunctionSpec(
            kind="quotient",
            n=n,
            k=k,
            evaluate=lambda kap: quotient_F(kap, k),
            gradient=lambda kap: quotient_F_gradient(kap, k),
            label=f"H_{k}/H_{k - 1}",
        )

    @staticmethod
    def mean_curvature(n: int) -> "CurvatureFunctionSpec":
        return CurvatureFunctionSpec.quotient(n, 1)

    @staticmethod
    def custom(
        n: int, evaluate: SpeedFn, gradient: GradFn, label: str
    ) -> "CurvatureFunctionSpec":
        return CurvatureFunctionSpec(
            kind="custom", n=n, k=None, evaluate=evaluate, gradient=gradient, label=label
        )

    def value_field(self, kappa: np.ndarray) -> np.ndarray:
        """F at every node of an (N, n) curvature array."""
        kappa = np.asarray(kappa, dtype=float)
        _check_gamma(kappa.min(axis=1))
        if self.kind == "quotient":
            binom = np.array([float(comb(self.n, j)) for j in range(self.n + 1)])
            phip = np.ones(kappa.shape[0])
            u = np.zeros(kappa.shape[0])
            _, F, _ = kernels.quotient_speed(kappa, self.k, phip, u, binom)
            return F
        return np.array([self.evaluate(row) for row in kappa])

    def gradient_field(self, kappa: np.ndarray) -> np.ndarray:
        """Gradient of F at every node of an (N, n) curvature array."""
        kappa = np.asarray(kappa, dtype=float)
        _check_gamma(kappa.min(axis=1))
        if self.kind == "quotient":
            binom = np.array([float(comb(self.n, j)) for j in range(self.n + 1)])
            phip = np.ones(kappa.shape[0])
            u = np.zeros(kappa.shape[0])
            _, _, grad = kernels.quotient_speed(kappa, self.k, phip, u, binom)
            return grad
        return np.array([self.gradient(row) for row in kappa])


@dataclass
class CheckResult:
    name: str
    samples: int
    worst_violation: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.worst_violation < self.threshold


@dataclass
class ValidationReport:
    label: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [f"speed-function validation: {self.label}"]
        for c in self.checks:
            state = "pass" if c.passed else "FAIL"
            lines.append(
                f"  {c.name:<24s} samples={c.samples:<6d} "
                f"worst={c.worst_violation:.3e} threshold={c.threshold:.1e} {state}"
            )
        return "\n".join(lines) + "\n"


def _gamma_samples(n: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Random points of the positive cone spread over two decades."""
    return 10.0 ** rng.uniform(-1.0, 1.0, size=(samples, n))


def validate_assumptions(
    spec: CurvatureFunctionSpec, samples: int = 1000, seed: int = 0, threshold: float = 1e-8
) -> ValidationReport:
    """Randomized structural checks on a speed function.

    Checks gradient positivity, degree-1 homogeneity, normalization
    F(1,..,1) = 1, midpoint concavity, and midpoint concavity of the
    inverse map kappa -> 1/F(1/kappa) on random cone points.
    """
    if samples < 100:
        raise ValueError("samples must be at least 100")
    rng = np.random.default_rng(seed)
    n = spec.n
    a = _gamma_samples(n, samples, rng)
    b = _gamma_samples(n, samples, rng)

    report = ValidationReport(label=spec.label or spec.kind)

    worst = 0.0
    for row in a:
        worst = max(worst, -float(np.min(spec.gradient(row))))
    report.checks.append(CheckResult("gradient positivity", samples, worst, threshold))

    worst = 0.0
    for row in a:
        fv = spec.evaluate(row)
        for lam in (0.5, 2.0):
            worst = max(worst, abs(spec.evaluate(lam * row) - lam * fv) / max(abs(fv), 1.0))
    report.checks.append(CheckResult("homogeneity", samples, worst, max(threshold, 1e-10)))

    worst = abs(spec.evaluate(np.ones(n)) - 1.0)
    report.checks.append(CheckResult("normalization", 1, worst, max(threshold, 1e-12)))

    worst = 0.0
    for pa, pb in zip(a, b):
        mid = spec.evaluate(0.5 * (pa + pb))
        worst = max(worst, 0.5 * (spec.evaluate(pa) + spec.evaluate(pb)) - mid)
    report.checks.append(CheckResult("concavity", samples, worst, threshold))

    def inv_dual(xi: np.ndarray) -> float:
        return 1.0 / spec.evaluate(1.0 / xi)

    worst = 0.0
    for pa, pb in zip(a, b):
        mid = inv_dual(0.5 * (pa + pb))
        worst = max(worst, 0.5 * (inv_dual(pa) + inv_dual(pb)) - mid)
    report.checks.append(CheckResult("inverse concavity", samples, worst, threshold))

    return report


@dataclass(frozen=True)
class HoroMargin:
    sigma_min: float
    per_node: np.ndarray  # (N, n) eigenvalues of the horo-tensor


def horo_margin(geom: PointwiseGeometry) -> HoroMargin:
    """Eigenvalues of the horo-tensor; the shape is horo-convex iff min >= 0."""
    return HoroMargin(sigma_min=float(geom.sigma.min()), per_node=geom.sigma)
