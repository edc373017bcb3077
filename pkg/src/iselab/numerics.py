"""Quadrature, stable series, and contour integrals for the limit constants.

Three independent numeric routes live here: an adaptive quadrature and an
alternating series for the mean rescaled density, and a two-ray contour
integral for the moment generating function of the density at a point.
All heavy lifting is scipy's QUADPACK; failures surface as ToleranceError
rather than silently degraded output.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate


class ToleranceError(RuntimeError):
    """A numeric routine could not certify its requested tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Shared knobs for the adaptive quadratures and the contour integral."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    truncation_length: float = 5.0

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be at least 10")
        if self.truncation_length < 2.0:
            raise ValueError("contour truncation below 2 loses the tail")


DEFAULT_QUADRATURE = QuadratureConfig()


def gamma_fn(z: float) -> float:
    """Gamma function for real arguments, rejecting the poles explicitly."""
    z = float(z)
    if not math.isfinite(z):
        raise ValueError("gamma_fn needs a finite argument")
    if z <= 0 and z == int(z):
        raise ValueError(f"gamma pole at non-positive integer {z}")
    return math.gamma(z)


def _quad(fn: Callable[[float], float], lo: float, hi: float, cfg: QuadratureConfig) -> float:
    out = integrate.quad(
        fn,
        lo,
        hi,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions,
        full_output=1,
    )
    if len(out) >= 4:
        raise ToleranceError(f"quadrature did not converge: {out[3]}")
    return float(out[0])


def mean_density_quadrature(
    lambda_x: float, cfg: QuadratureConfig | None = None
) -> float:
    """Mean rescaled density at lambda_x via the one-dimensional integral

    (2 pi)^(-1/2) * integral_0^inf  y^(1/2) exp(-lambda^2/(2y) - y^2/2) dy.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    lam2 = float(lambda_x) ** 2

    def integrand(y: float) -> float:
        if y <= 0.0:
            return 0.0
        return math.sqrt(y) * math.exp(-lam2 / (2.0 * y) - y * y / 2.0)

    return _quad(integrand, 0.0, np.inf, cfg) / math.sqrt(2.0 * math.pi)


_SQRT_HALF = math.sqrt(0.5)
# cos((m+1) pi/4) for (m+1) mod 8 = 0..7, exact up to the sqrt(1/2) rounding
_COS_TABLE = (1.0, _SQRT_HALF, 0.0, -_SQRT_HALF, -1.0, -_SQRT_HALF, 0.0, _SQRT_HALF)
_SERIES_MAX_ARG = 6.0
_SERIES_MAX_TERMS = 400


def mean_density_series(lambda_x: float) -> float:
    """Mean rescaled density at lambda_x by its entire-series expansion

    2^(-1/4) pi^(-1/2) * sum_m (-2^(3/4)|lambda|)^m / m!
                               * cos((m+1) pi/4) * Gamma((m+3)/4).

    The series is entire but alternating; beyond |lambda| = 6 the leading
    terms outgrow the sum by ~10 digits, so larger arguments are refused.
    """
    x = abs(float(lambda_x))
    if not math.isfinite(x):
        raise ValueError("mean_density_series needs a finite argument")
    if x > _SERIES_MAX_ARG:
        raise ValueError(
            f"series cancellation is unstable beyond |lambda| = {_SERIES_MAX_ARG}"
        )
    z = -(2.0**0.75) * x
    total = 0.0
    term = 1.0  # z^m / m!
    quiet = 0
    for m in range(_SERIES_MAX_TERMS):
        bound = abs(term) * math.gamma((m + 3) / 4.0)
        total += term * _COS_TABLE[(m + 1) % 8] * math.gamma((m + 3) / 4.0)
        quiet = quiet + 1 if bound < 1e-17 else 0
        if quiet >= 4:
            break
        term *= z / (m + 1)
    else:
        raise ToleranceError("density series did not settle within term budget")
    return (2.0**-0.25 / math.sqrt(math.pi)) * total


# Branch points of A(y) sit at y = +-4/sqrt(3) (where A = 2 - sqrt(3)).
MGF_A_RADIUS = 4.0 / math.sqrt(3.0)

_NEWTON_ITERS = 50
_NEWTON_TOL = 1e-15
_BRANCH_JUMP = 0.25
_RESIDUAL_TOL = 1e-12


def _newton(y: complex, start: complex) -> complex | None:
    a = start
    for _ in range(_NEWTON_ITERS):
        one_plus = 1.0 + a
        num = 24.0 * a * (1.0 - a) - y * one_plus**3
        den = 24.0 - 48.0 * a - 3.0 * y * one_plus**2
        if den == 0:
            return None
        step = num / den
        a -= step
        if abs(step) < _NEWTON_TOL:
            return a
    return None


def solve_A(y: complex) -> complex:
    """Principal branch of 24 A (1 - A) = y (1 + A)^3 with A(0) = 0.

    Continues the root along the straight segment from 0 to y with Newton
    correction at each waypoint; steps halve whenever Newton stalls or the
    root moves further than the branch-jump guard allows.
    """
    y = complex(y)
    if y == 0:
        return 0j
    a = 0j
    s = 0.0
    step = 0.25
    halvings = 0
    while s < 1.0:
        target = min(1.0, s + step)
        trial = _newton(target * y, a)
        if trial is None or abs(trial - a) > _BRANCH_JUMP:
            step /= 2.0
            halvings += 1
            if halvings > 60:
                raise ToleranceError(f"branch tracking failed for y = {y}")
            continue
        a = trial
        s = target
        step = min(0.25, step * 2.0)
    residual = abs(a - (y / 24.0) * (1.0 + a) ** 3 / (1.0 - a))
    if residual > _RESIDUAL_TOL:
        raise ToleranceError(f"A(y) residual {residual:.3e} exceeds tolerance")
    return a


_RAY_UP = cmath.exp(1j * math.pi / 4.0)
_RAY_DOWN = cmath.exp(-1j * math.pi / 4.0)


@dataclass(frozen=True)
class ContourPoint:
    """One point of the two-ray contour through 1: v(t) and A(a / v^3)."""

    t_param: float
    v: complex
    A_value: complex


def contour_point(t_param: float, a: float = 0.0) -> ContourPoint:
    """Contour point at parameter t: the upper ray for t >= 0, lower below."""
    t = float(t_param)
    v = 1.0 + t * _RAY_UP if t >= 0 else 1.0 - t * _RAY_DOWN
    return ContourPoint(t, v, solve_A(a / v**3))


def mgf_L(x: float, a: float, cfg: QuadratureConfig | None = None) -> float:
    """Moment generating function of the density at a point, via the contour

    L(x, a) = 1 + 48 / (i sqrt(pi)) * integral_Gamma
              A e^(-2xv) / (1 + A e^(-2xv))^2 * v^5 e^(v^4) dv,

    with A = A(a / v^3) and Gamma the two rays through 1 at angles +-pi/4.
    Defined for x >= 0 and |a| < 4/sqrt(3); the imaginary residue of the
    symmetric contour must vanish to 1e-8 or a ToleranceError is raised.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    x = float(x)
    a = float(a)
    if x < 0:
        raise ValueError("mgf_L is defined for x >= 0 only")
    if abs(a) >= MGF_A_RADIUS:
        raise ValueError(f"mgf_L needs |a| < 4/sqrt(3) ~ {MGF_A_RADIUS:.6f}")
    if a == 0.0:
        return 1.0

    def f(v: complex) -> complex:
        big_a = solve_A(a / v**3)
        ae = big_a * cmath.exp(-2.0 * x * v)
        return ae / (1.0 + ae) ** 2 * v**5 * cmath.exp(v**4)

    def upper(t: float) -> complex:
        return f(1.0 + t * _RAY_UP) * _RAY_UP

    def lower(t: float) -> complex:
        return f(1.0 + t * _RAY_DOWN) * _RAY_DOWN

    span = cfg.truncation_length
    integral = complex(
        _quad(lambda t: upper(t).real, 0.0, span, cfg)
        - _quad(lambda t: lower(t).real, 0.0, span, cfg),
        _quad(lambda t: upper(t).imag, 0.0, span, cfg)
        - _quad(lambda t: lower(t).imag, 0.0, span, cfg),
    )
    value = 1.0 + 48.0 / (1j * math.sqrt(math.pi)) * integral
    if abs(value.imag) > 1e-8:
        raise ToleranceError(
            f"contour symmetry violated: imaginary residue {value.imag:.3e}"
        )
    return value.real
