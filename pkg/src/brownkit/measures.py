"""Probability measures on the line and their imaginary-axis transforms.

Measures are stored as finite atom lists plus piecewise-linear densities on
explicit grids.  All transforms used downstream (h, f, p = s*f and its
s-derivative, the log-determinant integrals, and the lambda radii) reduce to
1-D integrals of rational or logarithmic kernels against a linear density,
which have closed forms per grid segment; quadrature is therefore exact for
the stored measure up to rounding.

Symmetric measures arise only by symmetrizing a measure on [0, inf).  Storage
keeps the half-line measure (the pushforward under |.|), which carries the
same information; every transform kernel here is even.

Heavy-tailed laws (infinite second moment) cannot be represented on a finite
grid and must carry a closed-form tag; the only tagged family is the
circular-Cauchy modulus, whose transforms are hard-coded.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DomainError,
    MalformedMeasureError,
    NumericalDegeneracyError,
    ClassificationError,
)

MASS_TOL = 1e-6

# Large-s switch: use the 1/s^2 series for n, n2 once s exceeds this multiple
# of the segment's outer endpoint (geometric ratio <= 1/9, ~16 terms suffice).
_SERIES_RATIO = 3.0
_SERIES_TERMS = 24


# ---------------------------------------------------------------------------
# Closed-form integrals of kernels against a linear density on one segment.
# w(u) = c0 + c1*u interpolates (a, v0) -> (b, v1).


def _coeffs(a, b, v0, v1):
    c1 = (v1 - v0) / (b - a)
    return v0 - c1 * a, c1


def _atan_diff(a, b, s):
    # atan(b/s) - atan(a/s), stable for s large or small
    return math.atan2(s * (b - a), s * s + a * b)


def _seg_mass(a, b, v0, v1):
    return 0.5 * (v0 + v1) * (b - a)


def _seg_moment(a, b, v0, v1, k):
    # integral of w(u) * u^k
    c0, c1 = _coeffs(a, b, v0, v1)
    return c0 * (b ** (k + 1) - a ** (k + 1)) / (k + 1) + c1 * (
        b ** (k + 2) - a ** (k + 2)
    ) / (k + 2)


def _seg_d(a, b, v0, v1, s):
    # integral of w(u) / (s^2 + u^2)
    c0, c1 = _coeffs(a, b, v0, v1)
    i0 = _atan_diff(a, b, s) / s
    i1 = 0.5 * math.log1p((b - a) * (b + a) / (s * s + a * a))
    return c0 * i0 + c1 * i1


def _seg_d2(a, b, v0, v1, s):
    # integral of w(u) / (s^2 + u^2)^2
    c0, c1 = _coeffs(a, b, v0, v1)
    da = s * s + a * a
    db = s * s + b * b
    j0 = (b - a) * (s * s - a * b) / (2.0 * s * s * da * db) + _atan_diff(
        a, b, s
    ) / (2.0 * s ** 3)
    j1 = (b - a) * (b + a) / (2.0 * da * db)
    return c0 * j0 + c1 * j1


def _seg_n(a, b, v0, v1, s):
    # integral of w(u) * u^2 / (s^2 + u^2); series for s >> b avoids the
    # cancellation in (b - a) - s * atan_diff
    top = max(abs(a), abs(b))
    if s >= _SERIES_RATIO * top and s > 0.0:
        acc = 0.0
        sign = 1.0
        s2 = s * s
        pw = s2
        for k in range(1, _SERIES_TERMS + 1):
            term = sign * _seg_moment(a, b, v0, v1, 2 * k) / pw
            acc += term
            if abs(term) < 1e-18 * (abs(acc) + 1e-300):
                break
            sign = -sign
            pw *= s2
        return acc
    c0, c1 = _coeffs(a, b, v0, v1)
    i0 = (b - a) - s * _atan_diff(a, b, s)
    i1 = 0.5 * (b * b - a * a) - 0.5 * s * s * math.log1p(
        (b - a) * (b + a) / (s * s + a * a)
    )
    return c0 * i0 + c1 * i1


def _seg_n2(a, b, v0, v1, s):
    # integral of w(u) * u^2 / (s^2 + u^2)^2
    top = max(abs(a), abs(b))
    if s >= _SERIES_RATIO * top and s > 0.0:
        acc = 0.0
        sign = 1.0
        s2 = s * s
        pw = s2 * s2
        for k in range(0, _SERIES_TERMS):
            term = sign * (k + 1) * _seg_moment(a, b, v0, v1, 2 * k + 2) / pw
            acc += term
            if abs(term) < 1e-18 * (abs(acc) + 1e-300):
                break
            sign = -sign
            pw *= s2
        return acc
    return _seg_d(a, b, v0, v1, s) - s * s * _seg_d2(a, b, v0, v1, s)


def _seg_log(a, b, v0, v1, s):
    # integral of w(u) * log(u^2 + s^2)
    c0, c1 = _coeffs(a, b, v0, v1)
    da = s * s + a * a
    db = s * s + b * b
    l0 = (
        b * math.log(db)
        - a * math.log(da)
        - 2.0 * (b - a)
        + 2.0 * s * _atan_diff(a, b, s)
    )
    l1 = 0.5 * (db * math.log(db) - da * math.log(da) - (b * b - a * a))
    return c0 * l0 + c1 * l1


def _seg_logabs(a, b, v0, v1):
    # integral of w(u) * log|u| on [a, b] with 0 <= a < b
    c0, c1 = _coeffs(a, b, v0, v1)

    def f0(u):
        return u * math.log(u) - u if u > 0.0 else 0.0

    def f1(u):
        return 0.5 * u * u * math.log(u) - 0.25 * u * u if u > 0.0 else 0.0

    return c0 * (f0(b) - f0(a)) + c1 * (f1(b) - f1(a))


def _seg_invsq(a, b, v0, v1):
    # integral of w(u) / u^2 on [a, b] with a > 0
    c0, c1 = _coeffs(a, b, v0, v1)
    return c0 * (1.0 / a - 1.0 / b) + c1 * math.log(b / a)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DensityPiece:
    """Density values sampled on a strictly increasing grid, linear in between."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)
        if g.ndim != 1 or g.size < 2 or g.shape != v.shape:
            raise MalformedMeasureError("piece needs matching 1-D grid/values, >= 2 points")
        if not np.all(np.diff(g) > 0):
            raise MalformedMeasureError("piece grid must be strictly increasing")
        if not np.all(np.isfinite(g)) or not np.all(np.isfinite(v)):
            raise MalformedMeasureError("piece grid/values must be finite")
        if np.any(v < 0):
            raise MalformedMeasureError("densities must be nonnegative")

    def mass(self):
        return float(np.trapezoid(self.values, self.grid))

    def segments(self):
        g, v = self.grid, self.values
        for i in range(g.size - 1):
            yield g[i], g[i + 1], v[i], v[i + 1]


def _sum_segments(pieces, fn):
    return sum(fn(a, b, v0, v1) for p in pieces for a, b, v0, v1 in p.segments())


@dataclass(frozen=True, eq=False)
class PositiveMeasure:
    """Probability measure on [0, inf): atoms + piecewise-linear density.

    ``tail`` is "none" or "cauchy-modulus"; the latter marks the standard
    circular-Cauchy modulus law, which has infinite second moment and is
    handled purely through closed forms (atoms and pieces must be empty).
    """

    atoms: tuple = ()
    pieces: tuple = ()
    tail: str = "none"

    def __post_init__(self):
        atoms = tuple((float(x), float(m)) for x, m in self.atoms)
        pieces = tuple(
            p if isinstance(p, DensityPiece) else DensityPiece(*p) for p in self.pieces
        )
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "pieces", pieces)
        if self.tail not in ("none", "cauchy-modulus"):
            raise MalformedMeasureError(f"unknown tail tag {self.tail!r}")
        if self.tail == "cauchy-modulus":
            if atoms or pieces:
                raise MalformedMeasureError("tagged heavy-tail measures carry no data")
            return
        locs = [x for x, _ in atoms]
        if any(x < 0 for x in locs):
            raise MalformedMeasureError("atom locations must be >= 0")
        if len(set(locs)) != len(locs):
            raise MalformedMeasureError("atom locations must be distinct")
        if any(not (0.0 < m <= 1.0) for _, m in atoms):
            raise MalformedMeasureError("atom masses must lie in (0, 1]")
        for p in pieces:
            if p.grid[0] < 0:
                raise MalformedMeasureError("density support must lie in [0, inf)")
        total = self.total_mass()
        if abs(total - 1.0) > MASS_TOL:
            raise MalformedMeasureError(f"total mass {total} deviates from 1")

    # -- basic functionals -------------------------------------------------

    def total_mass(self):
        if self.tail == "cauchy-modulus":
            return 1.0
        return sum(m for _, m in self.atoms) + sum(p.mass() for p in self.pieces)

    def mass_at(self, x, tol=1e-12):
        for loc, m in self.atoms:
            if abs(loc - x) <= tol:
                return m
        return 0.0

    def second_moment(self):
        if self.tail == "cauchy-modulus":
            return math.inf
        return sum(m * x * x for x, m in self.atoms) + _sum_segments(
            self.pieces, lambda a, b, v0, v1: _seg_moment(a, b, v0, v1, 2)
        )

    def inv_square_moment(self):
        """Integral of u^-2; infinite when mass touches 0."""
        if self.tail == "cauchy-modulus":
            return math.inf
        total = 0.0
        for x, m in self.atoms:
            if x == 0.0:
                return math.inf
            total += m / (x * x)
        for p in self.pieces:
            for a, b, v0, v1 in p.segments():
                if a <= 0.0:
                    if v0 > 0.0 or v1 > 0.0:
                        return math.inf
                    continue
                total += _seg_invsq(a, b, v0, v1)
        return total

    def quantile(self, q):
        """Inverse CDF; q in (0, 1)."""
        if not 0.0 < q < 1.0:
            raise DomainError("quantile needs q in (0, 1)")
        if self.tail == "cauchy-modulus":
            return math.tan(0.5 * math.pi * q)
        events = [("atom", x, m) for x, m in self.atoms]
        events += [("piece", p.grid[0], p) for p in self.pieces]
        events.sort(key=lambda e: e[1])
        acc = 0.0
        for kind, loc, payload in events:
            if kind == "atom":
                acc += payload
                if acc >= q:
                    return loc
            else:
                p = payload
                pm = p.mass()
                if acc + pm >= q:
                    rem = q - acc
                    cum = 0.0
                    for a, b, v0, v1 in p.segments():
                        sm = _seg_mass(a, b, v0, v1)
                        if cum + sm >= rem and sm > 0:
                            want = rem - cum
                            return brentq(
                                lambda u: _seg_mass(a, u, v0, v0 + (v1 - v0) * (u - a) / (b - a)) - want,
                                a,
                                b,
                                xtol=1e-14,
                            )
                        cum += sm
                acc += pm
        # rounding at the top end
        if events:
            return events[-1][2].grid[-1] if events[-1][0] == "piece" else events[-1][1]
        raise MalformedMeasureError("empty measure")

    # -- serialization -----------------------------------------------------

    def to_json_dict(self):
        return {
            "atoms": [{"x": x, "mass": m} for x, m in self.atoms],
            "pieces": [
                {"grid": p.grid.tolist(), "values": p.values.tolist()}
                for p in self.pieces
            ],
            "tail": self.tail,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d):
        return cls(
            atoms=tuple((a["x"], a["mass"]) for a in d.get("atoms", [])),
            pieces=tuple(
                DensityPiece(np.array(p["grid"], float), np.array(p["values"], float))
                for p in d.get("pieces", [])
            ),
            tail=d.get("tail", "none"),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Symmetric laws: the transform interface shared by grid-backed measures and
# the closed-form families.


class SymmetricDistribution:
    """Symmetric probability law on R seen through its imaginary-axis transforms.

    Concrete classes provide h(s) = integral of s/(s^2+u^2), its s-derivative,
    the mass at 0, the lambda radii, and the log-determinant integral
    log Delta(|T|^2 + w^2) = integral of log(u^2+w^2).  Everything else
    derives from those.
    """

    lambda1 = 0.0
    lambda2 = math.inf

    def h(self, s):
        raise NotImplementedError

    def h_deriv(self, s):
        raise NotImplementedError

    def mass_at_zero(self):
        return 0.0

    def f(self, s):
        _check_s(s)
        hv = self.h(s)
        if hv <= 0.0 or not math.isfinite(hv):
            raise NumericalDegeneracyError(f"h({s}) = {hv}")
        return 1.0 / hv - s

    def f_deriv(self, s):
        hv = self.h(s)
        return -self.h_deriv(s) / (hv * hv) - 1.0

    def p(self, s):
        _check_s(s)
        return s * self.f(s)

    def p_deriv(self, s):
        _check_s(s)
        hv = self.h(s)
        return 1.0 / hv - s * self.h_deriv(s) / (hv * hv) - 2.0 * s

    def log_determinant(self, w):
        raise NotImplementedError

    def log_det_modulus(self):
        """log of the Fuglede-Kadison determinant: integral of log|u|."""
        return 0.5 * self.log_determinant(0.0)


def _check_s(s):
    if not (isinstance(s, (int, float)) and math.isfinite(s) and s > 0):
        raise DomainError(f"transform needs s > 0, got {s!r}")


@dataclass(frozen=True, eq=False)
class SymmetricMeasure(SymmetricDistribution):
    """Symmetrization of a measure on [0, inf); construct via :func:`symmetrize`."""

    halfline: PositiveMeasure

    @property
    def _delegate(self):
        if self.halfline.tail == "cauchy-modulus":
            return CauchyDistribution(1.0)
        return None

    # mirrored atom list (for display / tests)
    def atoms_view(self):
        out = []
        for x, m in sorted(self.halfline.atoms):
            if x == 0.0:
                out.append((0.0, m))
            else:
                out.append((-x, 0.5 * m))
                out.append((x, 0.5 * m))
        return sorted(out)

    def mass_at_zero(self):
        return self.halfline.mass_at(0.0)

    # -- raw kernel integrals over the half-line ---------------------------

    def _d(self, s):
        dlg = self._delegate
        if dlg is not None:
            return dlg.h(s) / s
        total = sum(m / (s * s + x * x) for x, m in self.halfline.atoms)
        total += _sum_segments(self.halfline.pieces, lambda a, b, v0, v1: _seg_d(a, b, v0, v1, s))
        return total

    def _d2(self, s):
        dlg = self._delegate
        if dlg is not None:
            # d2 = -d'(s)/(2s) with d = h/s
            hv, hd = dlg.h(s), dlg.h_deriv(s)
            return -(hd / s - hv / (s * s)) / (2.0 * s)
        total = sum(m / (s * s + x * x) ** 2 for x, m in self.halfline.atoms)
        total += _sum_segments(self.halfline.pieces, lambda a, b, v0, v1: _seg_d2(a, b, v0, v1, s))
        return total

    def _n(self, s):
        dlg = self._delegate
        if dlg is not None:
            return 1.0 - s * dlg.h(s)
        total = sum(m * x * x / (s * s + x * x) for x, m in self.halfline.atoms)
        total += _sum_segments(self.halfline.pieces, lambda a, b, v0, v1: _seg_n(a, b, v0, v1, s))
        return total

    def _n2(self, s):
        dlg = self._delegate
        if dlg is not None:
            return self._d(s) - s * s * self._d2(s)
        total = sum(m * x * x / (s * s + x * x) ** 2 for x, m in self.halfline.atoms)
        total += _sum_segments(self.halfline.pieces, lambda a, b, v0, v1: _seg_n2(a, b, v0, v1, s))
        return total

    # -- transforms ---------------------------------------------------------

    def h(self, s):
        _check_s(s)
        dlg = self._delegate
        if dlg is not None:
            return dlg.h(s)
        return s * self._d(s)

    def h_deriv(self, s):
        _check_s(s)
        dlg = self._delegate
        if dlg is not None:
            return dlg.h_deriv(s)
        return self._d(s) - 2.0 * s * s * self._d2(s)

    def f(self, s):
        _check_s(s)
        dlg = self._delegate
        if dlg is not None:
            return dlg.f(s)
        d = self._d(s)
        if d <= 0.0 or not math.isfinite(d):
            raise NumericalDegeneracyError(f"h({s}) degenerate")
        return self._n(s) / (s * d)

    def p(self, s):
        _check_s(s)
        dlg = self._delegate
        if dlg is not None:
            return dlg.p(s)
        return self._n(s) / self._d(s)

    def p_deriv(self, s):
        # quotient rule on n/d with n' = -2s*n2, d' = -2s*d2
        _check_s(s)
        dlg = self._delegate
        if dlg is not None:
            return dlg.p_deriv(s)
        n, d = self._n(s), self._d(s)
        npr = -2.0 * s * self._n2(s)
        dpr = -2.0 * s * self._d2(s)
        return (npr * d - n * dpr) / (d * d)

    @property
    def lambda1(self):
        inv = self.halfline.inv_square_moment()
        return 0.0 if math.isinf(inv) else inv ** -0.5

    @property
    def lambda2(self):
        m2 = self.halfline.second_moment()
        return math.inf if math.isinf(m2) else math.sqrt(m2)

    def second_moment(self):
        return self.halfline.second_moment()

    def log_determinant(self, w):
        """Integral of log(u^2 + w^2); w = 0 falls back to 2*log|u|."""
        dlg = self._delegate
        if dlg is not None:
            return dlg.log_determinant(w)
        total = 0.0
        for x, m in self.halfline.atoms:
            if x == 0.0 and w == 0.0:
                return -math.inf
            total += m * (2.0 * math.log(w) if x == 0.0 else math.log(x * x + w * w))
        if w == 0.0:
            total += 2.0 * _sum_segments(self.halfline.pieces, _seg_logabs)
        else:
            total += _sum_segments(
                self.halfline.pieces, lambda a, b, v0, v1: _seg_log(a, b, v0, v1, w)
            )
        return total

    def to_json(self):
        return self.halfline.to_json()


# ---------------------------------------------------------------------------
# Closed-form symmetric families.


@dataclass(frozen=True)
class SemicircleDistribution(SymmetricDistribution):
    """Semicircle law; the symmetrized modulus of a circular operator."""

    variance: float = 1.0

    def __post_init__(self):
        if not self.variance > 0:
            raise DomainError("variance must be positive")

    def h(self, s):
        # rationalized form of (hypot(s, 2 sqrt(e)) - s) / (2e); exact for s large
        _check_s(s)
        return 2.0 / (s + math.hypot(s, 2.0 * math.sqrt(self.variance)))

    def h_deriv(self, s):
        r = math.hypot(s, 2.0 * math.sqrt(self.variance))
        return -2.0 / ((s + r) * r)

    def f(self, s):
        # 1/h - s simplifies: h solves e*h^2 + s*h - 1 = 0
        return self.variance * self.h(s)

    def p(self, s):
        return self.variance * s * self.h(s)

    def p_deriv(self, s):
        return self.variance * (self.h(s) + s * self.h_deriv(s))

    @property
    def lambda1(self):
        return 0.0

    @property
    def lambda2(self):
        return math.sqrt(self.variance)

    def second_moment(self):
        return self.variance

    def log_determinant(self, w):
        if w == 0.0:
            return math.log(self.variance) - 1.0
        hv = self.h(w)
        return -self.variance * hv * hv - 2.0 * math.log(hv)

    def quantile(self, q):
        # modulus law (quarter-circle); CDF has a closed form, invert by bracketing
        if not 0.0 < q < 1.0:
            raise DomainError("quantile needs q in (0, 1)")
        e = self.variance
        top = 2.0 * math.sqrt(e)

        def cdf(u):
            r = min(max(u / top, 0.0), 1.0)
            return (2.0 / math.pi) * (math.asin(r) + r * math.sqrt(1.0 - r * r)) - q
            # (integral of sqrt(4e-v^2)/(pi e) from 0 to u)

        return brentq(cdf, 0.0, top, xtol=1e-14)


@dataclass(frozen=True)
class CauchyDistribution(SymmetricDistribution):
    """Symmetric Cauchy law; the symmetrized modulus of a circular Cauchy operator."""

    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError("scale must be positive")

    def h(self, s):
        _check_s(s)
        return 1.0 / (s + self.scale)

    def h_deriv(self, s):
        return -1.0 / (s + self.scale) ** 2

    def f(self, s):
        return self.scale

    def p(self, s):
        return self.scale * s

    def p_deriv(self, s):
        return self.scale

    @property
    def lambda1(self):
        return 0.0

    @property
    def lambda2(self):
        return math.inf

    def second_moment(self):
        return math.inf

    def log_determinant(self, w):
        return 2.0 * math.log(w + self.scale)

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise DomainError("quantile needs q in (0, 1)")
        return self.scale * math.tan(0.5 * math.pi * q)


@dataclass(frozen=True)
class CauchyPowerDistribution(SymmetricDistribution):
    """Symmetrized modulus of the n-th power of a circular Cauchy operator."""

    n: int = 1

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise DomainError("power must be an integer >= 1")

    @property
    def _alpha(self):
        return (self.n - 1) / (self.n + 1)

    def h(self, s):
        _check_s(s)
        return 1.0 / (s + s ** self._alpha)

    def h_deriv(self, s):
        a = self._alpha
        return -(1.0 + a * s ** (a - 1.0)) / (s + s ** a) ** 2

    def f(self, s):
        return s ** self._alpha

    def p(self, s):
        return s ** (1.0 + self._alpha)

    def p_deriv(self, s):
        a = self._alpha
        return (1.0 + a) * s ** a

    @property
    def lambda1(self):
        return 0.0

    @property
    def lambda2(self):
        return math.inf

    def second_moment(self):
        return math.inf

    def log_determinant(self, w):
        # antiderivative of 2*h along the regularization parameter
        k = self.n
        if w == 0.0:
            return 0.0
        return (k + 1.0) * math.log1p(w ** (2.0 / (k + 1.0)))


# ---------------------------------------------------------------------------
# Spec-level operations.


@dataclass(frozen=True)
class LambdaBounds:
    """Inner/outer single-ring radii of a symmetric law."""

    lambda1: float
    lambda2: float


def symmetrize(nu: PositiveMeasure) -> SymmetricMeasure:
    """Symmetrize a measure on [0, inf): B -> (nu(B) + nu(-B)) / 2."""
    if not isinstance(nu, PositiveMeasure):
        raise MalformedMeasureError("symmetrize expects a PositiveMeasure")
    return SymmetricMeasure(halfline=nu)


def h_transform(mu, s):
    """Evaluate h(s) = integral of s / (s^2 + u^2)."""
    _check_s(s)
    return mu.h(s)


def f_transform(mu, s):
    """Evaluate f(s) = 1/h(s) - s."""
    _check_s(s)
    return mu.f(s)


def p_ratio(mu, s):
    """Evaluate p(s) = s*f(s) = n(s)/d(s)."""
    _check_s(s)
    return mu.p(s)


def p_ratio_deriv(mu, s):
    """Analytic s-derivative of p, via the differentiated kernel integrals."""
    _check_s(s)
    return mu.p_deriv(s)


def lambda_bounds(mu) -> LambdaBounds:
    """Radii lambda1 = (int u^-2)^(-1/2) (0 when divergent), lambda2 = (int u^2)^(1/2)."""
    return LambdaBounds(mu.lambda1, mu.lambda2)


def density_at_zero_of_convolution(s1_0, s2_0):
    """Density at 0 of the free convolution from finite boundary subordination values."""
    for v in (s1_0, s2_0):
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise ClassificationError(f"boundary value {v!r} not finite positive")
    return 1.0 / (math.pi * (s1_0 + s2_0))


# -- common construction helpers -------------------------------------------


def point_modulus(gamma):
    """mu_|T| of a scaled Haar unitary: a single atom at gamma."""
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    return PositiveMeasure(atoms=((gamma, 1.0),))


def bernoulli_symmetric(gamma) -> SymmetricMeasure:
    """The two-point law (delta_gamma + delta_-gamma)/2, stored as its modulus."""
    return symmetrize(point_modulus(gamma))


def semicircle_measure(variance=1.0, points=2001) -> SymmetricMeasure:
    """Grid-sampled semicircle law (for oracle tests; prefer SemicircleDistribution)."""
    top = 2.0 * math.sqrt(variance)
    grid = np.linspace(0.0, top, points)
    vals = np.sqrt(np.maximum(top * top - grid * grid, 0.0)) / (math.pi * variance)
    vals = vals / np.trapezoid(vals, grid)
    return symmetrize(PositiveMeasure(pieces=(DensityPiece(grid, vals),)))


def cauchy_modulus_measure() -> SymmetricMeasure:
    """The tagged standard circular-Cauchy modulus law."""
    return symmetrize(PositiveMeasure(tail="cauchy-modulus"))
