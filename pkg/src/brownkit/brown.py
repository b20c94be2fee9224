"""Brown-measure outputs for x0 + T: support set, determinants, densities, radii.

Every pointwise quantity runs through the same reduction: the symmetrized
modulus of x0 + T - lambda is the free convolution of mu1 (symmetrized
|x0 - lambda|, available through resolvent functionals) with mu2
(symmetrized |T|), so the subordination boundary values s1(0), s2(0) at that
lambda drive both the regularized determinant and the density.

The density has one general formula plus hard-coded specializations for the
Haar unitary, circular, and circular Cauchy families; both routes are kept
callable so they can oracle each other.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import AtomCandidateError, DomainError
from .gridio import GridSpec
from .measures import density_at_zero_of_convolution
from .operator_models import (
    Circular,
    CircularCauchy,
    CircularCauchyPower,
    HaarUnitary,
    ModulusSymmetrization,
    OperatorModel,
    RDiagonalSpec,
    SelfAdjointModel,
)
from .subordination import (
    CASE_FINITE_FINITE,
    CASE_ZERO_ZERO,
    classify_boundary,
    solve_balance,
    solve_subordination,
)

ATOM_MASS_TOL = 1e-12


@dataclass(frozen=True)
class DomainVerdict:
    """Membership test for the support superset Omega(T, x0)."""

    in_omega: bool
    margin_inner: float
    margin_outer: float
    atom_candidate: bool


@dataclass(frozen=True)
class RingRadii:
    """Inner/outer radii of the single ring of T1 + T2.

    ``inner_raw`` is the squared-scale value the source formula assigns to the
    inner radius (lambda1^2 - lambda2^2); ``r_inner`` is its square root, the
    geometric radius.  The discrepancy is deliberate, not resolved.
    """

    r_inner: float
    r_outer: float
    inner_raw: float


@dataclass(eq=False)
class BrownDensityGrid:
    """Density field on a rectangular lattice plus atom candidates."""

    spec: GridSpec
    values: np.ndarray
    in_omega: np.ndarray
    atom_candidate_cells: np.ndarray
    error_cells: np.ndarray
    atoms: list
    total_mass_estimate: float


def _mu_pair(T: RDiagonalSpec, x0: OperatorModel, lam):
    return ModulusSymmetrization(x0, lam), T.symmetrized_modulus()


def omega_membership(T: RDiagonalSpec, x0: OperatorModel, lam) -> DomainVerdict:
    """Evaluate the two norm margins and the atom-candidate flag at lambda."""
    lam = complex(lam)
    inv2 = x0.inv_norm_l2_sq(lam)  # phi(|x0-lambda|^-2)
    norm_x0 = math.sqrt(x0.norm_l2_sq(lam))
    norm_T = T.lambda2
    l1T = T.lambda1
    inv_norm_x0 = math.inf if math.isinf(inv2) else math.sqrt(inv2)
    inv_norm_T = math.inf if l1T == 0.0 else 1.0 / l1T
    margin_inner = (
        math.inf if math.isinf(inv_norm_x0) or math.isinf(norm_T)
        else inv_norm_x0 * norm_T - 1.0
    )
    margin_outer = (
        math.inf if math.isinf(inv_norm_T) or math.isinf(norm_x0)
        else norm_x0 * inv_norm_T - 1.0
    )
    candidate = T.mass_at_zero() + x0.mass_at(lam) >= 1.0 - ATOM_MASS_TOL
    return DomainVerdict(
        in_omega=bool(margin_inner > 0.0 and margin_outer > 0.0),
        margin_inner=margin_inner,
        margin_outer=margin_outer,
        atom_candidate=candidate,
    )


def atom_candidates(T: RDiagonalSpec, x0: OperatorModel):
    """All lambda with mu_|T|({0}) + mu_|x0-lambda|({0}) >= 1 (eigenvalues of x0)."""
    need = 1.0 - T.mass_at_zero() - ATOM_MASS_TOL
    if need > 1.0:
        return []
    return [z for z, m in x0.eigenvalues() if m >= need]


def fk_determinant(T: RDiagonalSpec, x0: OperatorModel, lam, t) -> float:
    """Regularized Fuglede-Kadison determinant Delta(|x0+T-lambda|^2 + t^2)^(1/2).

    t = 0 returns Delta(x0 + T - lambda) via the boundary case split.
    """
    lam = complex(lam)
    if t < 0 or not math.isfinite(t):
        raise DomainError(f"t must be >= 0, got {t!r}")
    if x0.mass_at(lam) >= 1.0 - ATOM_MASS_TOL:
        # x0 is the scalar lambda: x0 + T - lambda has the law of T
        logv = T.log_determinant(t) * 0.5 if t > 0.0 else T.log_det_modulus()
        return math.exp(logv) if logv > -math.inf else 0.0
    mu1, mu2 = _mu_pair(T, x0, lam)
    if t > 0.0:
        pair = solve_subordination(mu1, mu2, t)
        logv = 0.5 * (
            mu1.log_determinant(pair.s1) + mu2.log_determinant(pair.s2)
        ) - math.log(pair.s1 + pair.s2 - t)
        return math.exp(logv)
    l11, l21 = mu1.lambda1, mu1.lambda2
    l12, l22 = mu2.lambda1, mu2.lambda2
    if l11 >= l22:
        logv = 0.5 * mu1.log_determinant(0.0)  # Delta(x0 - lambda)
        return math.exp(logv) if logv > -math.inf else 0.0
    if l12 >= l21:
        logv = mu2.log_det_modulus()  # Delta(T)
        return math.exp(logv) if logv > -math.inf else 0.0
    if mu1.mass_at_zero() + mu2.mass_at_zero() >= 1.0 - ATOM_MASS_TOL:
        # atom-dominated boundary: h blows up, determinant reported as 0
        return 0.0
    s1 = solve_balance(mu1, mu2)
    s2 = mu1.f(s1)
    logv = 0.5 * (mu1.log_determinant(s1) + mu2.log_determinant(s2)) - math.log(s1 + s2)
    return math.exp(logv)


# ---------------------------------------------------------------------------
# Densities.


def _origin_density(T: RDiagonalSpec):
    """Density of the Brown measure of T at the origin (no atom there).

    Needed when x0 is exactly the scalar lambda, where the symmetrized modulus
    of x0 - lambda degenerates to a point mass at 0 and the convolution
    machinery does not apply; x0 + T - lambda then simply has the law of T.
    """
    if isinstance(T, HaarUnitary):
        return 0.0
    if isinstance(T, Circular):
        return 1.0 / (math.pi * T.variance)
    if isinstance(T, CircularCauchy):
        return 1.0 / (math.pi * T.a ** 2)
    if isinstance(T, CircularCauchyPower):
        return 1.0 / math.pi if T.n == 1 else math.inf
    if T.lambda1 > 0.0:
        return 0.0
    from .operator_models import radial_cdf

    delta = 1e-4
    return radial_cdf(T, delta) / (math.pi * delta * delta)


def _boundary_s1(mu1, T: RDiagonalSpec):
    """s1(0) for mu1 against the symmetrized modulus of T (closed forms first)."""
    if isinstance(T, CircularCauchy):
        return T.a
    if isinstance(T, Circular):
        # h1(s)/s = phi(h^-1) decreases in s; solve phi(h^-1) = 1/variance
        target = 1.0 / T.variance

        def gap(s):
            return mu1.h(s) / s - target

        lo, hi = 1e-9, 1.0
        while gap(hi) > 0.0:
            hi *= 2.0
            if hi > 1e150:
                raise DomainError("failed to bracket s1(0)")
        while gap(lo) < 0.0:
            lo /= 2.0
            if lo < 1e-300:
                raise DomainError("failed to bracket s1(0)")
        return brentq(gap, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=300)
    return solve_balance(mu1, T.symmetrized_modulus())


def _general_density(mu1, mu2, s1, fn):
    """Density from the subordination formula at s1 = s1(0), s2 = f1(s1)."""
    s2 = mu1.f(s1)
    dp2 = mu2.p_deriv(s2)
    term1 = s1 * s1 * fn.phi_hk
    q2 = abs(fn.phi_x_hinv2) ** 2
    bracket = (mu1.p(s1) * dp2) / s1 + (s1 - dp2) * mu1.p_deriv(s1)
    denom = fn.phi_hinv ** 2 * bracket
    num = 2.0 * s1 * (s1 - dp2) * q2
    term2 = 0.0 if num == 0.0 else num / denom
    return (term1 + term2) / math.pi


def brown_density(T: RDiagonalSpec, x0: OperatorModel, lam, method="auto") -> float:
    """Pointwise density of the Brown measure of x0 + T at lambda.

    ``method="auto"`` uses the closed-form specializations for the Haar,
    circular, and circular Cauchy families; ``method="general"`` forces the
    subordination formula (the two agree and oracle each other in the tests).
    Returns 0 outside Omega; raises AtomCandidateError on the candidate set.
    """
    lam = complex(lam)
    if method not in ("auto", "general"):
        raise DomainError(f"unknown method {method!r}")
    mu1, mu2 = _mu_pair(T, x0, lam)
    if T.mass_at_zero() + mu1.mass_at_zero() >= 1.0 - ATOM_MASS_TOL:
        raise AtomCandidateError(f"lambda {lam} is an atom candidate")
    l11, l21 = mu1.lambda1, mu1.lambda2
    if l11 >= mu2.lambda2 or mu2.lambda1 >= l21:
        return 0.0
    s1 = _boundary_s1(mu1, T)
    fn = x0.resolvent_functionals(lam, s1)
    if method == "general":
        return _general_density(mu1, mu2, s1, fn)
    if isinstance(T, HaarUnitary):
        spread = fn.phi_hinv2 - fn.phi_hinv ** 2
        term2 = 0.0 if spread <= 0.0 else abs(fn.phi_x_hinv2) ** 2 / spread
        return (s1 * s1 * fn.phi_hk + term2) / math.pi
    if isinstance(T, Circular):
        return (
            abs(fn.phi_x_hinv2) ** 2 / fn.phi_hinv2 + s1 * s1 * fn.phi_hk
        ) / math.pi
    if isinstance(T, CircularCauchy):
        return (T.a ** 2) * fn.phi_hk / math.pi
    return _general_density(mu1, mu2, s1, fn)


def circular_selfadjoint_density(x0: SelfAdjointModel, variance, lam) -> float:
    """Density of x0 + circular(variance) for selfadjoint x0, via the real-axis form.

    v(a) solves the Poisson-kernel equation int 1/((u-a)^2 + v^2) = 1/variance;
    the a-derivative of the shifted kernel is taken by centered differencing of
    the implicitly defined v.
    """
    if not getattr(x0, "selfadjoint", False):
        raise DomainError("requires a selfadjoint operator model")
    lam = complex(lam)
    a, b = lam.real, lam.imag
    m = x0.measure
    target = 1.0 / variance
    poisson_at_lam = m.poisson(a, abs(b)) if b != 0.0 else m.inv_square_about(a)
    if not poisson_at_lam > target:
        return 0.0

    def v_of(aa):
        # unique v with poisson(aa, v) = 1/variance; exists iff lambda in the domain
        hi = math.sqrt(variance) + abs(b) + 1.0
        while m.poisson(aa, hi) > target:
            hi *= 2.0
        lo = hi
        while m.poisson(aa, lo) < target:
            lo /= 2.0
            if lo < 1e-300:
                break
        return brentq(lambda v: m.poisson(aa, v) - target, lo, hi, xtol=1e-14)

    def shifted(aa):
        return m.shifted_kernel(aa, v_of(aa))

    step = 1e-5 * max(1.0, abs(a))
    deriv = (shifted(a + step) - shifted(a - step)) / (2.0 * step)
    # shifted_kernel integrates (u-a)/(...); with the Poisson integral pinned
    # at 1/variance, d/da int u/(...) = deriv + 1/variance
    return (0.5 - 0.5 * variance * deriv) / (math.pi * variance)


def ring_radii(T1: RDiagonalSpec, T2: RDiagonalSpec) -> RingRadii:
    """Inner and outer radii of the support of the Brown measure of T1 + T2."""
    l11, l21 = T1.lambda1, T1.lambda2
    l12, l22 = T2.lambda1, T2.lambda2
    if 0.0 < l22 <= l11:
        raw = l11 * l11 - l22 * l22
    elif 0.0 < l21 <= l12:
        raw = l12 * l12 - l21 * l21
    else:
        raw = 0.0
    outer_sq = l21 * l21 + l22 * l22
    return RingRadii(
        r_inner=math.sqrt(raw),
        r_outer=math.sqrt(outer_sq) if math.isfinite(outer_sq) else math.inf,
        inner_raw=raw,
    )


def ellipse_boundary_check(T: RDiagonalSpec, t, lam) -> bool:
    """Membership of lambda in Omega(T, g_t) for a semicircular x0 of variance t.

    Computed from the two norm margins directly (the printed semi-axes of the
    boundary ellipse are not used).
    """
    from .operator_models import semicircle_real_measure

    if not t > 0:
        raise DomainError("variance t must be positive")
    x0 = SelfAdjointModel(semicircle_real_measure(t))
    return omega_membership(T, x0, lam).in_omega


def density_grid(
    T: RDiagonalSpec,
    x0: OperatorModel,
    spec: GridSpec,
    method="auto",
    threads=None,
) -> BrownDensityGrid:
    """Evaluate the Brown density on a lattice; per-cell errors become flags."""
    xs, ys = spec.xs(), spec.ys()
    values = np.zeros((spec.ny, spec.nx))
    in_om = np.zeros((spec.ny, spec.nx), dtype=bool)
    cand = np.zeros((spec.ny, spec.nx), dtype=bool)
    err = np.zeros((spec.ny, spec.nx), dtype=bool)

    def eval_row(iy):
        y = ys[iy]
        for ix, x in enumerate(xs):
            lam = complex(x, y)
            try:
                verdict = omega_membership(T, x0, lam)
                in_om[iy, ix] = verdict.in_omega
                cand[iy, ix] = verdict.atom_candidate
                if verdict.atom_candidate:
                    continue
                # margins within a hair of 0 count as outside (open set)
                if verdict.margin_inner <= 1e-6 or verdict.margin_outer <= 1e-6:
                    continue
                values[iy, ix] = brown_density(T, x0, lam, method=method)
            except Exception:
                err[iy, ix] = True
                values[iy, ix] = 0.0

    nthreads = int(threads) if threads else 1
    if nthreads > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            list(pool.map(eval_row, range(spec.ny)))
    else:
        for iy in range(spec.ny):
            eval_row(iy)

    mass = float(values.sum() * spec.cell_area)
    if x0.is_zero():
        mass += T.mass_at_zero()
    atoms = [(z, True) for z in atom_candidates(T, x0)]
    return BrownDensityGrid(
        spec=spec,
        values=values,
        in_omega=in_om,
        atom_candidate_cells=cand,
        error_cells=err,
        atoms=atoms,
        total_mass_estimate=mass,
    )


def boundary_points(T: RDiagonalSpec, x0: OperatorModel, center=0j, n_rays=64,
                    r_max=None, tol=1e-8):
    """Points on the boundary of Omega located by sign change along radial rays.

    Returns a list of (point, margin) with margin = min of the two margins,
    |margin| < tol at the returned points.
    """
    center = complex(center)
    if r_max is None:
        l2 = T.lambda2
        r_max = 4.0 * (l2 if math.isfinite(l2) else 1.0) + 4.0

    def margin(lam):
        v = omega_membership(T, x0, lam)
        return min(v.margin_inner, v.margin_outer)

    points = []
    for k in range(n_rays):
        ang = 2.0 * math.pi * k / n_rays
        direction = complex(math.cos(ang), math.sin(ang))
        rs = np.linspace(1e-9, r_max, 200)
        vals = [margin(center + r * direction) for r in rs]
        for i in range(len(rs) - 1):
            a, b = vals[i], vals[i + 1]
            if not (math.isfinite(a) and math.isfinite(b)):
                continue
            if a == 0.0 or (a < 0.0 < b) or (b < 0.0 < a):
                r = brentq(
                    lambda rr: margin(center + rr * direction),
                    rs[i],
                    rs[i + 1],
                    xtol=tol * 1e-2,
                )
                lam = center + r * direction
                points.append((lam, margin(lam)))
    return points
