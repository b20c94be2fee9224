"""Fixed-point subordination solver on the imaginary axis and its t -> 0 limits.

For symmetric laws mu1, mu2 (neither a point mass at 0) and t > 0 the
subordination values s1(t), s2(t) solve

    s1 = t + f2(t + f1(s1)),      s2 = t + f1(t + f2(s2)),

each with a unique solution in (t, inf).  Both equations are solved
independently (same scalar routine), which makes swapping the inputs swap
(s1, s2) bit-exactly; the sum rule s1 + s2 = t + 1/h then stays a genuine
cross-check instead of a construction.

The t -> 0 boundary splits into four cases decided by the lambda radii; the
finite/finite case is solved directly on the balance equation
p1(s) = p2(f1(s)) rather than by extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    ClassificationError,
    DomainError,
    SolverFailureError,
    UnsupportedMeasureError,
)

CASE_FINITE_FINITE = "FINITE_FINITE"
CASE_ZERO_INF = "ZERO_INF"
CASE_INF_ZERO = "INF_ZERO"
CASE_ZERO_ZERO = "ZERO_ZERO"

_RESIDUAL_SCALE = 1e-12
_MAX_ITER = 200


@dataclass(frozen=True)
class SubordinationPair:
    """Solution of the fixed-point system at one t, with solver diagnostics."""

    t: float
    s1: float
    s2: float
    h_conv: float
    iterations: int
    residual: float


@dataclass(frozen=True)
class BoundaryClassification:
    """Behaviour of s1(t), s2(t) as t -> 0."""

    case_id: str
    s1_0: float
    s2_0: float
    ratio_t_over_s1: float | None = None
    limit_t_times_s2: float | None = None
    ratio_t_over_s2: float | None = None
    limit_t_times_s1: float | None = None
    atom_dominated: bool = False


def _guard_measures(mu1, mu2):
    for mu in (mu1, mu2):
        if mu.mass_at_zero() >= 1.0 - 1e-12:
            raise UnsupportedMeasureError("measure is a point mass at zero")


def _solve_fixed_point(t, f_outer, f_inner):
    """Unique root of s = t + f_outer(t + f_inner(s)) on (t, inf).

    Damped fixed-point iteration inside a monotone bracket with bisection
    fallback; Newton steps (finite-difference slope) once the bracket is
    narrow.  The residual target is 1e-12 * max(1, s).
    """

    def residual(s):
        return s - t - f_outer(t + f_inner(s))

    lo = t
    # expand the upper end until the residual changes sign
    hi = t + f_outer(t) + 1.0
    r_hi = residual(hi)
    doublings = 0
    while r_hi < 0.0:
        doublings += 1
        if doublings > 60:
            raise SolverFailureError(
                "no sign change while expanding the bracket",
                bracket=(lo, hi),
                residuals=(None, r_hi),
            )
        hi = t + (hi - t) * 2.0
        r_hi = residual(hi)

    s = hi
    r = r_hi
    iterations = 0
    while abs(r) > _RESIDUAL_SCALE * max(1.0, abs(s)):
        iterations += 1
        if iterations > _MAX_ITER:
            raise SolverFailureError(
                "iteration cap reached", bracket=(lo, hi), residuals=(r,)
            )
        if r > 0.0:
            hi = s
        else:
            lo = s
        width = hi - lo
        candidate = t + f_outer(t + f_inner(s))  # plain fixed-point step
        if not (lo < candidate < hi):
            if width < 1e-3 * max(1.0, s):
                # Newton on the residual with a secant slope
                ds = max(1e-7 * max(1.0, s), width * 1e-3)
                slope = (residual(s + ds) - r) / ds
                candidate = s - r / slope if slope != 0 else 0.5 * (lo + hi)
            if not (lo < candidate < hi):
                candidate = 0.5 * (lo + hi)
        s = candidate
        r = residual(s)
        if hi - lo < 8e-17 * max(1.0, s):
            break
    return s, iterations, r


def solve_subordination(mu1, mu2, t) -> SubordinationPair:
    """Solve the fixed-point system at t > 0."""
    if not (isinstance(t, (int, float)) and math.isfinite(t) and t > 0):
        raise DomainError(f"t must be positive, got {t!r}")
    _guard_measures(mu1, mu2)
    s1, it1, r1 = _solve_fixed_point(t, mu2.f, mu1.f)
    s2, it2, r2 = _solve_fixed_point(t, mu1.f, mu2.f)
    h_conv = mu1.h(s1)
    return SubordinationPair(
        t=float(t),
        s1=s1,
        s2=s2,
        h_conv=h_conv,
        iterations=it1 + it2,
        residual=max(abs(r1), abs(r2)),
    )


def free_convolution_h(mu1, mu2, t):
    """h of the free convolution at t, evaluated through subordination."""
    pair = solve_subordination(mu1, mu2, t)
    return pair.h_conv


def _balance_gap(mu1, mu2, s):
    return mu1.p(s) - mu2.p(mu1.f(s))


def solve_balance(mu1, mu2):
    """Positive root s1(0) of p1(s) = p2(f1(s)) (finite/finite boundary case)."""
    scale = 1.0
    if math.isfinite(mu1.lambda2) and mu1.lambda2 > 0:
        scale = mu1.lambda2
    grid = scale * np.logspace(-9.0, 9.0, 241)
    prev_s = None
    prev_g = None
    for s in grid:
        try:
            g = _balance_gap(mu1, mu2, float(s))
        except (ArithmeticError, OverflowError):
            prev_s, prev_g = None, None
            continue
        if not math.isfinite(g):
            prev_s, prev_g = None, None
            continue
        if prev_g is not None and g == 0.0:
            return float(s)
        if prev_g is not None and (prev_g < 0.0 < g or g < 0.0 < prev_g):
            root = brentq(
                lambda x: _balance_gap(mu1, mu2, x),
                prev_s,
                float(s),
                xtol=1e-15,
                rtol=8.9e-16,
                maxiter=300,
            )
            return float(root)
        prev_s, prev_g = float(s), g
    raise ClassificationError("no positive root of the balance equation was bracketed")


def classify_boundary(mu1, mu2) -> BoundaryClassification:
    """Classify the t -> 0 limits of (s1, s2) from the lambda radii."""
    _guard_measures(mu1, mu2)
    l11, l21 = mu1.lambda1, mu1.lambda2
    l12, l22 = mu2.lambda1, mu2.lambda2
    zero_inf = l11 >= l22
    inf_zero = l12 >= l21
    if zero_inf and inf_zero:
        raise UnsupportedMeasureError(
            "degenerate tie: both one-sided dominance conditions hold "
            f"(lambda radii {l11}, {l21} vs {l12}, {l22})"
        )
    if zero_inf:
        gap = l11 * l11 - l22 * l22
        return BoundaryClassification(
            case_id=CASE_ZERO_INF,
            s1_0=0.0,
            s2_0=math.inf,
            ratio_t_over_s1=gap / (l11 * l11),
            limit_t_times_s2=gap,
        )
    if inf_zero:
        gap = l12 * l12 - l21 * l21
        return BoundaryClassification(
            case_id=CASE_INF_ZERO,
            s1_0=math.inf,
            s2_0=0.0,
            ratio_t_over_s2=gap / (l12 * l12),
            limit_t_times_s1=gap,
        )
    if l11 == 0.0 and l12 == 0.0:
        if mu1.mass_at_zero() + mu2.mass_at_zero() >= 1.0 - 1e-12:
            return BoundaryClassification(
                case_id=CASE_ZERO_ZERO, s1_0=0.0, s2_0=0.0, atom_dominated=True
            )
    s1_0 = solve_balance(mu1, mu2)
    s2_0 = mu1.f(s1_0)
    return BoundaryClassification(case_id=CASE_FINITE_FINITE, s1_0=s1_0, s2_0=s2_0)
