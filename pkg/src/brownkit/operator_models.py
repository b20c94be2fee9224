"""Operator models for x0 and R-diagonal specifications for T.

x0 enters every downstream formula only through trace functionals of the
resolvent h(lambda, s) = (lambda - x0)*(lambda - x0) + s^2 (and its twin k).
Three model variants expose those functionals:

* SelfAdjointModel  -- spectral measure on R (atoms + piecewise-linear density)
* NormalAtomicModel -- finitely many complex eigenvalues
* MatrixModel       -- explicit N x N matrix, phi = normalized trace

T is specified by mu_|T| plus tagged closed-form families (Haar unitary,
circular, circular Cauchy and its powers), each exposing the transforms of
its symmetrized modulus in closed form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, MalformedMeasureError, SingularityError
from .measures import (
    CauchyDistribution,
    CauchyPowerDistribution,
    DensityPiece,
    PositiveMeasure,
    SemicircleDistribution,
    SymmetricDistribution,
    SymmetricMeasure,
    _seg_d,
    _seg_d2,
    _seg_invsq,
    _seg_log,
    _seg_logabs,
    _seg_mass,
    _seg_moment,
    _seg_n,
    symmetrize,
)

MASS_TOL = 1e-6


# ---------------------------------------------------------------------------
# Spectral measures on the real line (for selfadjoint x0).


@dataclass(frozen=True, eq=False)
class RealMeasure:
    """Probability measure on R: atoms + piecewise-linear density pieces."""

    atoms: tuple = ()
    pieces: tuple = ()

    def __post_init__(self):
        atoms = tuple((float(x), float(m)) for x, m in self.atoms)
        pieces = tuple(
            p if isinstance(p, DensityPiece) else DensityPiece(*p) for p in self.pieces
        )
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "pieces", pieces)
        locs = [x for x, _ in atoms]
        if len(set(locs)) != len(locs):
            raise MalformedMeasureError("atom locations must be distinct")
        if any(not (0.0 < m <= 1.0) for _, m in atoms):
            raise MalformedMeasureError("atom masses must lie in (0, 1]")
        total = self.total_mass()
        if abs(total - 1.0) > MASS_TOL:
            raise MalformedMeasureError(f"total mass {total} deviates from 1")

    def total_mass(self):
        return sum(m for _, m in self.atoms) + sum(p.mass() for p in self.pieces)

    def mass_at(self, x, tol=1e-12):
        return sum(m for loc, m in self.atoms if abs(loc - x) <= tol)

    def mean(self):
        return sum(m * x for x, m in self.atoms) + sum(
            _seg_moment(a, b, v0, v1, 1)
            for p in self.pieces
            for a, b, v0, v1 in p.segments()
        )

    def second_moment(self):
        return sum(m * x * x for x, m in self.atoms) + sum(
            _seg_moment(a, b, v0, v1, 2)
            for p in self.pieces
            for a, b, v0, v1 in p.segments()
        )

    def variance(self):
        mu = self.mean()
        return self.second_moment() - mu * mu

    # resolvent-type integrals about center a with width w > 0
    def poisson(self, a, w):
        """Integral of 1 / ((u-a)^2 + w^2)."""
        total = sum(m / ((x - a) ** 2 + w * w) for x, m in self.atoms)
        total += sum(
            _seg_d(p0 - a, p1 - a, v0, v1, w)
            for p in self.pieces
            for p0, p1, v0, v1 in p.segments()
        )
        return total

    def poisson_sq(self, a, w):
        """Integral of 1 / ((u-a)^2 + w^2)^2."""
        total = sum(m / ((x - a) ** 2 + w * w) ** 2 for x, m in self.atoms)
        total += sum(
            _seg_d2(p0 - a, p1 - a, v0, v1, w)
            for p in self.pieces
            for p0, p1, v0, v1 in p.segments()
        )
        return total

    def shifted_kernel(self, a, w):
        """Integral of (u-a) / ((u-a)^2 + w^2)."""
        total = sum(m * (x - a) / ((x - a) ** 2 + w * w) for x, m in self.atoms)
        for p in self.pieces:
            for p0, p1, v0, v1 in p.segments():
                aa, bb = p0 - a, p1 - a
                c1 = (v1 - v0) / (bb - aa)
                c0 = v0 - c1 * aa
                i1 = 0.5 * math.log1p((bb - aa) * (bb + aa) / (w * w + aa * aa))
                i0 = math.atan2(w * (bb - aa), w * w + aa * bb) / w
                # integral of (c0 + c1 u) u/(w^2+u^2) = c0*i1 + c1*(length - w^2*i0)
                total += c0 * i1 + c1 * ((bb - aa) - w * w * i0)
        return total

    def shifted_kernel_sq(self, a, w):
        """Integral of (u-a) / ((u-a)^2 + w^2)^2."""
        total = sum(m * (x - a) / ((x - a) ** 2 + w * w) ** 2 for x, m in self.atoms)
        for p in self.pieces:
            for p0, p1, v0, v1 in p.segments():
                aa, bb = p0 - a, p1 - a
                c1 = (v1 - v0) / (bb - aa)
                c0 = v0 - c1 * aa
                da, db = w * w + aa * aa, w * w + bb * bb
                j1 = 0.5 * (bb - aa) * (bb + aa) / (da * db)
                # u^2/(w^2+u^2)^2 integrates to i0 - w^2 * j0
                i0 = math.atan2(w * (bb - aa), w * w + aa * bb) / w
                j0 = (bb - aa) * (w * w - aa * bb) / (2 * w * w * da * db) + (
                    math.atan2(w * (bb - aa), w * w + aa * bb)
                ) / (2 * w ** 3)
                total += c0 * j1 + c1 * (i0 - w * w * j0)
        return total

    def modulus_square_kernel(self, a, w):
        """Integral of (u-a)^2 / ((u-a)^2 + w^2)."""
        total = sum(
            m * (x - a) ** 2 / ((x - a) ** 2 + w * w) for x, m in self.atoms
        )
        total += sum(
            _seg_n(p0 - a, p1 - a, v0, v1, w)
            for p in self.pieces
            for p0, p1, v0, v1 in p.segments()
        )
        return total

    def inv_square_about(self, a):
        """Integral of 1/(u-a)^2 for real a; inf when mass touches a."""
        total = 0.0
        for x, m in self.atoms:
            if x == a:
                return math.inf
            total += m / (x - a) ** 2
        for p in self.pieces:
            for p0, p1, v0, v1 in p.segments():
                lo, hi = p0 - a, p1 - a
                if lo <= 0.0 <= hi:
                    # density touching the center: value there decides divergence
                    if v0 > 0.0 or v1 > 0.0:
                        return math.inf
                    continue
                if hi < 0.0:
                    lo, hi, v0, v1 = -hi, -lo, v1, v0
                total += _seg_invsq(lo, hi, v0, v1)
        return total

    def log_kernel(self, a, w):
        """Integral of log((u-a)^2 + w^2); w = 0 integrates 2 log|u-a|."""
        total = 0.0
        for x, m in self.atoms:
            if w == 0.0:
                if x == a:
                    return -math.inf
                total += 2.0 * m * math.log(abs(x - a))
            else:
                total += m * math.log((x - a) ** 2 + w * w)
        for p in self.pieces:
            for p0, p1, v0, v1 in p.segments():
                lo, hi = p0 - a, p1 - a
                if w > 0.0:
                    total += _seg_log(lo, hi, v0, v1, w)
                else:
                    if lo < 0.0 < hi:
                        vm = v0 + (v1 - v0) * (0.0 - lo) / (hi - lo)
                        total += 2.0 * _seg_logabs(0.0, -lo, vm, v0)
                        total += 2.0 * _seg_logabs(0.0, hi, vm, v1)
                    elif hi <= 0.0:
                        total += 2.0 * _seg_logabs(-hi, -lo, v1, v0)
                    else:
                        total += 2.0 * _seg_logabs(lo, hi, v0, v1)
        return total

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise DomainError("quantile needs q in (0, 1)")
        events = [("atom", x, m) for x, m in self.atoms]
        events += [("piece", p.grid[0], p) for p in self.pieces]
        events.sort(key=lambda e: e[1])
        acc = 0.0
        last = None
        for kind, loc, payload in events:
            if kind == "atom":
                acc += payload
                last = loc
                if acc >= q:
                    return loc
            else:
                p = payload
                for a, b, v0, v1 in p.segments():
                    sm = _seg_mass(a, b, v0, v1)
                    if acc + sm >= q and sm > 0:
                        want = q - acc
                        return brentq(
                            lambda u: _seg_mass(
                                a, u, v0, v0 + (v1 - v0) * (u - a) / (b - a)
                            )
                            - want,
                            a,
                            b,
                            xtol=1e-14,
                        )
                    acc += sm
                    last = b
        return last


def semicircle_real_measure(variance, points=4001):
    """Grid-sampled semicircle spectral measure on R (for selfadjoint x0)."""
    top = 2.0 * math.sqrt(variance)
    grid = np.linspace(-top, top, points)
    vals = np.sqrt(np.maximum(top * top - grid * grid, 0.0)) / (
        2.0 * math.pi * variance
    )
    vals = vals / np.trapezoid(vals, grid)
    return RealMeasure(pieces=(DensityPiece(grid, vals),))


# ---------------------------------------------------------------------------
# Resolvent functionals.


@dataclass(frozen=True)
class ResolventFunctionals:
    """Trace functionals of h = |x0 - lambda|^2 + s^2 and k = |x0* - conj(lambda)|^2 + s^2.

    phi_x_hinv  = phi((lambda - x0)^* h^-1)        (complex)
    phi_x_hinv2 = phi((lambda - x0) h^-2)          (complex)
    phi_m_hinv  = phi(|x0 - lambda|^2 h^-1)        (= 1 - s^2 phi_hinv, computed stably)
    """

    lam: complex
    s: float
    phi_hinv: float
    phi_hinv2: float
    phi_hk: float
    phi_x_hinv: complex
    phi_x_hinv2: complex
    phi_m_hinv: float

    @property
    def abs_phi_x_hinv(self):
        return abs(self.phi_x_hinv)

    @property
    def abs_phi_x_hinv2(self):
        return abs(self.phi_x_hinv2)


class OperatorModel:
    """Interface shared by the x0 model variants."""

    selfadjoint = False

    def resolvent_functionals(self, lam, s) -> ResolventFunctionals:
        raise NotImplementedError

    def modulus_distribution(self, lam) -> PositiveMeasure:
        raise NotImplementedError

    def norm_l2_sq(self, lam):
        """phi(|x0 - lambda|^2)."""
        raise NotImplementedError

    def inv_norm_l2_sq(self, lam):
        """phi(|x0 - lambda|^-2), possibly inf."""
        raise NotImplementedError

    def mass_at(self, lam):
        """Eigenvalue mass of x0 at lambda."""
        raise NotImplementedError

    def eigenvalues(self):
        """(eigenvalue, mass) pairs, for atom-candidate listing."""
        return []

    def log_determinant_shifted(self, lam, w):
        """log Delta(|x0 - lambda|^2 + w^2); w = 0 gives 2 log Delta(x0 - lambda)."""
        raise NotImplementedError

    def is_zero(self):
        return False

    def to_json_dict(self):
        raise NotImplementedError

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _check_w(lam, s, mass_at_lam):
    if s < 0 or not math.isfinite(s):
        raise DomainError(f"s must be >= 0, got {s!r}")
    if s == 0.0 and mass_at_lam > 0.0:
        raise SingularityError(f"resolvent singular: s = 0 at eigenvalue {lam}")


@dataclass(frozen=True, eq=False)
class SelfAdjointModel(OperatorModel):
    """Selfadjoint x0 given by its spectral measure on R."""

    measure: RealMeasure
    selfadjoint = True

    def resolvent_functionals(self, lam, s):
        lam = complex(lam)
        a, b = lam.real, lam.imag
        _check_w(lam, s, self.mass_at(lam))
        w = math.hypot(b, s)
        if w == 0.0:
            if not math.isfinite(self.measure.inv_square_about(a)):
                raise SingularityError(f"resolvent singular at {lam}")
        m = self.measure
        r1 = m.poisson(a, w)
        r2 = m.poisson_sq(a, w)
        c1 = m.shifted_kernel(a, w)
        c2 = m.shifted_kernel_sq(a, w)
        # (lambda - u)* = (a - u) - i b over the spectral variable u
        return ResolventFunctionals(
            lam=lam,
            s=float(s),
            phi_hinv=r1,
            phi_hinv2=r2,
            phi_hk=r2,
            phi_x_hinv=complex(-c1, -b * r1),
            phi_x_hinv2=complex(-c2, b * r2),
            phi_m_hinv=m.modulus_square_kernel(a, w) + b * b * r1,
        )

    def modulus_distribution(self, lam):
        lam = complex(lam)
        atoms = {}
        for x, mass in self.measure.atoms:
            key = abs(x - lam)
            atoms[key] = atoms.get(key, 0.0) + mass
        pieces = []
        for p in self.measure.pieces:
            pieces.extend(_pushforward_modulus_piece(p, lam))
        return PositiveMeasure(atoms=tuple(sorted(atoms.items())), pieces=tuple(pieces))

    def norm_l2_sq(self, lam):
        lam = complex(lam)
        var = self.measure.variance()
        mean = self.measure.mean()
        return var + abs(lam - mean) ** 2

    def inv_norm_l2_sq(self, lam):
        lam = complex(lam)
        if lam.imag != 0.0:
            return self.measure.poisson(lam.real, abs(lam.imag))
        return self.measure.inv_square_about(lam.real)

    def mass_at(self, lam):
        lam = complex(lam)
        if lam.imag != 0.0:
            return 0.0
        return self.measure.mass_at(lam.real)

    def eigenvalues(self):
        return [(complex(x), m) for x, m in self.measure.atoms]

    def log_determinant_shifted(self, lam, w):
        lam = complex(lam)
        weff = math.hypot(lam.imag, w)
        if lam.imag == 0.0:
            return self.measure.log_kernel(lam.real, w)
        return self.measure.log_kernel(lam.real, weff)

    def is_zero(self):
        return self.measure.atoms == ((0.0, 1.0),) and not self.measure.pieces

    def to_json_dict(self):
        return {
            "type": "selfadjoint",
            "atoms": [{"x": x, "mass": m} for x, m in self.measure.atoms],
            "pieces": [
                {"grid": p.grid.tolist(), "values": p.values.tolist()}
                for p in self.measure.pieces
            ],
        }


def _pushforward_modulus_piece(piece, lam, points_per_segment=8):
    """Sample the |u - lambda| pushforward of one linear-density piece."""
    a, b = lam.real, abs(lam.imag)
    lo, hi = piece.grid[0], piece.grid[-1]
    ys = []
    for g in piece.grid:
        ys.append(math.hypot(g - a, b))
    y_min = min(ys)
    if lo <= a <= hi:
        y_min = b
    y_max = max(ys)
    if y_max <= y_min:
        y_max = y_min + 1e-12
    grid = np.unique(
        np.concatenate(
            [
                np.linspace(y_min, y_max, points_per_segment * (piece.grid.size - 1)),
                np.array(ys),
            ]
        )
    )
    grid = grid[(grid >= y_min) & (grid <= y_max)]

    def density_x(u):
        if u < lo or u > hi:
            return 0.0
        return float(np.interp(u, piece.grid, piece.values))

    vals = np.zeros_like(grid)
    for i, y in enumerate(grid):
        if y <= b:
            continue
        root = math.sqrt(y * y - b * b)
        jac = y / root if root > 0 else 0.0
        vals[i] = (density_x(a + root) + density_x(a - root)) * jac
    # clip the integrable edge spike so the interpolant keeps the right mass
    target = piece.mass()
    got = float(np.trapezoid(vals, grid))
    if got > 0:
        vals *= target / got
    return [DensityPiece(grid, vals)]


@dataclass(frozen=True, eq=False)
class NormalAtomicModel(OperatorModel):
    """Normal x0 with finitely many eigenvalues."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((complex(z), float(m)) for z, m in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if abs(sum(m for _, m in atoms) - 1.0) > MASS_TOL:
            raise MalformedMeasureError("atom masses must sum to 1")
        if any(m <= 0 for _, m in atoms):
            raise MalformedMeasureError("atom masses must be positive")

    @property
    def selfadjoint(self):
        return all(z.imag == 0.0 for z, _ in self.atoms)

    def resolvent_functionals(self, lam, s):
        lam = complex(lam)
        _check_w(lam, s, self.mass_at(lam))
        r1 = r2 = 0.0
        c1 = 0j
        c2 = 0j
        mh = 0.0
        for z, m in self.atoms:
            den = abs(lam - z) ** 2 + s * s
            r1 += m / den
            r2 += m / den ** 2
            c1 += m * (lam - z).conjugate() / den
            c2 += m * (lam - z) / den ** 2
            mh += m * abs(lam - z) ** 2 / den
        return ResolventFunctionals(
            lam=lam,
            s=float(s),
            phi_hinv=r1,
            phi_hinv2=r2,
            phi_hk=r2,
            phi_x_hinv=c1,
            phi_x_hinv2=c2,
            phi_m_hinv=mh,
        )

    def modulus_distribution(self, lam):
        lam = complex(lam)
        atoms = {}
        for z, m in self.atoms:
            key = abs(z - lam)
            atoms[key] = atoms.get(key, 0.0) + m
        return PositiveMeasure(atoms=tuple(sorted(atoms.items())))

    def norm_l2_sq(self, lam):
        lam = complex(lam)
        return sum(m * abs(z - lam) ** 2 for z, m in self.atoms)

    def inv_norm_l2_sq(self, lam):
        lam = complex(lam)
        total = 0.0
        for z, m in self.atoms:
            d = abs(z - lam) ** 2
            if d == 0.0:
                return math.inf
            total += m / d
        return total

    def mass_at(self, lam):
        lam = complex(lam)
        return sum(m for z, m in self.atoms if abs(z - lam) <= 1e-12)

    def eigenvalues(self):
        return list(self.atoms)

    def log_determinant_shifted(self, lam, w):
        lam = complex(lam)
        total = 0.0
        for z, m in self.atoms:
            d = abs(z - lam) ** 2 + w * w
            if d == 0.0:
                return -math.inf
            total += m * math.log(d)
        return total

    def is_zero(self):
        return self.atoms == ((0j, 1.0),)

    def to_json_dict(self):
        return {
            "type": "normal",
            "atoms": [{"re": z.real, "im": z.imag, "mass": m} for z, m in self.atoms],
        }


def zero_operator():
    """x0 = 0."""
    return NormalAtomicModel(atoms=((0j, 1.0),))


@dataclass(frozen=True, eq=False)
class MatrixModel(OperatorModel):
    """Explicit N x N matrix with phi the normalized trace."""

    mat: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=complex)
        object.__setattr__(self, "mat", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise MalformedMeasureError("matrix model needs a square matrix, N >= 1")

    @property
    def n(self):
        return self.mat.shape[0]

    @property
    def selfadjoint(self):
        return bool(np.allclose(self.mat, self.mat.conj().T, atol=1e-13))

    def _shifted(self, lam):
        return complex(lam) * np.eye(self.n) - self.mat

    def resolvent_functionals(self, lam, s):
        lam = complex(lam)
        m = self._shifted(lam)
        h = m.conj().T @ m + (s * s) * np.eye(self.n)
        k = m @ m.conj().T + (s * s) * np.eye(self.n)
        try:
            hinv = np.linalg.inv(h)
            kinv = np.linalg.inv(k)
        except np.linalg.LinAlgError as exc:
            raise SingularityError(f"resolvent singular at {lam}, s={s}") from exc
        if s == 0.0 and np.linalg.cond(h) > 1e14:
            raise SingularityError(f"resolvent singular at {lam}, s=0")
        n = self.n
        hinv2 = hinv @ hinv
        return ResolventFunctionals(
            lam=lam,
            s=float(s),
            phi_hinv=float(np.trace(hinv).real) / n,
            phi_hinv2=float(np.trace(hinv2).real) / n,
            phi_hk=float(np.trace(hinv @ kinv).real) / n,
            phi_x_hinv=complex(np.trace(m.conj().T @ hinv)) / n,
            phi_x_hinv2=complex(np.trace(m @ hinv2)) / n,
            phi_m_hinv=float(np.trace(m.conj().T @ m @ hinv).real) / n,
        )

    def modulus_distribution(self, lam):
        svals = np.linalg.svd(self._shifted(lam), compute_uv=False)
        atoms = {}
        for sv in svals:
            key = round(float(sv), 12)
            atoms[key] = atoms.get(key, 0.0) + 1.0 / self.n
        return PositiveMeasure(atoms=tuple(sorted(atoms.items())))

    def norm_l2_sq(self, lam):
        m = self._shifted(lam)
        return float(np.sum(np.abs(m) ** 2)) / self.n

    def inv_norm_l2_sq(self, lam):
        svals = np.linalg.svd(self._shifted(lam), compute_uv=False)
        if np.any(svals < 1e-14 * max(1.0, float(svals.max(initial=0.0)))):
            return math.inf
        return float(np.sum(svals ** -2.0)) / self.n

    def mass_at(self, lam):
        evals = np.linalg.eigvals(self.mat)
        return float(np.sum(np.abs(evals - complex(lam)) <= 1e-9)) / self.n

    def eigenvalues(self):
        evals = np.linalg.eigvals(self.mat)
        out = {}
        for z in evals:
            key = (round(z.real, 9), round(z.imag, 9))
            out[key] = out.get(key, 0.0) + 1.0 / self.n
        return [(complex(re, im), m) for (re, im), m in sorted(out.items())]

    def log_determinant_shifted(self, lam, w):
        svals = np.linalg.svd(self._shifted(lam), compute_uv=False)
        vals = svals ** 2 + w * w
        if np.any(vals == 0.0):
            return -math.inf
        return float(np.mean(np.log(vals)))

    def is_zero(self):
        return bool(np.all(self.mat == 0))

    def to_json_dict(self):
        return {
            "type": "matrix",
            "n": self.n,
            "entries": [
                [[float(z.real), float(z.imag)] for z in row] for row in self.mat
            ],
        }


def operator_model_from_json_dict(d):
    kind = d.get("type")
    if kind == "selfadjoint":
        return SelfAdjointModel(
            RealMeasure(
                atoms=tuple((a["x"], a["mass"]) for a in d.get("atoms", [])),
                pieces=tuple(
                    DensityPiece(np.array(p["grid"], float), np.array(p["values"], float))
                    for p in d.get("pieces", [])
                ),
            )
        )
    if kind == "normal":
        return NormalAtomicModel(
            atoms=tuple((complex(a["re"], a["im"]), a["mass"]) for a in d.get("atoms", []))
        )
    if kind == "matrix":
        entries = np.array(
            [[complex(re, im) for re, im in row] for row in d["entries"]], dtype=complex
        )
        return MatrixModel(entries)
    raise MalformedMeasureError(f"unknown operator model type {kind!r}")


def resolvent_functionals(x0: OperatorModel, lam, s) -> ResolventFunctionals:
    """Evaluate the trace functionals of x0's resolvent at (lambda, s)."""
    return x0.resolvent_functionals(lam, s)


def modulus_distribution(x0: OperatorModel, lam) -> PositiveMeasure:
    """Distribution of |x0 - lambda|."""
    return x0.modulus_distribution(lam)


# ---------------------------------------------------------------------------
# The symmetrized modulus of x0 - lambda as a transform-level object.


class ModulusSymmetrization(SymmetricDistribution):
    """Symmetrized law of |x0 - lambda|, evaluated through resolvent functionals.

    Avoids building the pushforward measure per grid cell: with
    d(s) = phi(h^-1) one has h(s) = s d(s), p(s) = phi(|x0-l|^2 h^-1)/d(s),
    p'(s) = 2s (phi(h^-2)/d^2 - 1).
    """

    def __init__(self, x0: OperatorModel, lam):
        self.x0 = x0
        self.lam = complex(lam)

    def _fn(self, s):
        return self.x0.resolvent_functionals(self.lam, s)

    def h(self, s):
        return s * self._fn(s).phi_hinv

    def h_deriv(self, s):
        fn = self._fn(s)
        return fn.phi_hinv - 2.0 * s * s * fn.phi_hinv2

    def f(self, s):
        fn = self._fn(s)
        return fn.phi_m_hinv / (s * fn.phi_hinv)

    def p(self, s):
        fn = self._fn(s)
        return fn.phi_m_hinv / fn.phi_hinv

    def p_deriv(self, s):
        fn = self._fn(s)
        return 2.0 * s * (fn.phi_hinv2 / fn.phi_hinv ** 2 - 1.0)

    def mass_at_zero(self):
        return self.x0.mass_at(self.lam)

    @property
    def lambda1(self):
        inv = self.x0.inv_norm_l2_sq(self.lam)
        return 0.0 if math.isinf(inv) else inv ** -0.5

    @property
    def lambda2(self):
        return math.sqrt(self.x0.norm_l2_sq(self.lam))

    def second_moment(self):
        return self.x0.norm_l2_sq(self.lam)

    def log_determinant(self, w):
        return self.x0.log_determinant_shifted(self.lam, w)


# ---------------------------------------------------------------------------
# R-diagonal specifications.


class RDiagonalSpec:
    """Specification of an R-diagonal operator through mu_|T|."""

    def symmetrized_modulus(self) -> SymmetricDistribution:
        raise NotImplementedError

    @property
    def lambda1(self):
        return self.symmetrized_modulus().lambda1

    @property
    def lambda2(self):
        return self.symmetrized_modulus().lambda2

    def mass_at_zero(self):
        return self.symmetrized_modulus().mass_at_zero()

    def log_determinant(self, w):
        """log Delta(|T|^2 + w^2)."""
        return self.symmetrized_modulus().log_determinant(w)

    def log_det_modulus(self):
        """log Delta(T)."""
        return self.symmetrized_modulus().log_det_modulus()

    def quantile(self, q):
        raise NotImplementedError

    def spec_string(self):
        raise NotImplementedError


@dataclass(frozen=True)
class HaarUnitary(RDiagonalSpec):
    """T = gamma * (Haar unitary)."""

    gamma: float = 1.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError("gamma must be positive")

    def symmetrized_modulus(self):
        return symmetrize(PositiveMeasure(atoms=((self.gamma, 1.0),)))

    def quantile(self, q):
        return self.gamma

    def spec_string(self):
        return f"haar:{self.gamma}"


@dataclass(frozen=True)
class Circular(RDiagonalSpec):
    """Circular operator of variance epsilon."""

    variance: float = 1.0

    def __post_init__(self):
        if not self.variance > 0:
            raise DomainError("variance must be positive")

    def symmetrized_modulus(self):
        return SemicircleDistribution(self.variance)

    def quantile(self, q):
        return self.symmetrized_modulus().quantile(q)

    def spec_string(self):
        return f"circular:{self.variance}"


@dataclass(frozen=True)
class CircularCauchy(RDiagonalSpec):
    """Circular Cauchy operator x y^-1 scaled by a."""

    a: float = 1.0

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError("scale must be positive")

    def symmetrized_modulus(self):
        return CauchyDistribution(self.a)

    def quantile(self, q):
        return self.symmetrized_modulus().quantile(q)

    def spec_string(self):
        return f"cauchy:{self.a}"


@dataclass(frozen=True)
class CircularCauchyPower(RDiagonalSpec):
    """n-th power of the circular Cauchy operator."""

    n: int = 1

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise DomainError("power must be an integer >= 1")

    def symmetrized_modulus(self):
        return CauchyPowerDistribution(self.n)

    def spec_string(self):
        return f"cauchypow:{self.n}"


@dataclass(frozen=True, eq=False)
class GeneralRDiagonal(RDiagonalSpec):
    """R-diagonal operator with an explicit mu_|T|."""

    modulus: PositiveMeasure

    def symmetrized_modulus(self):
        return symmetrize(self.modulus)

    def quantile(self, q):
        return self.modulus.quantile(q)

    def spec_string(self):
        return "general"


def rdiag_symmetrized_modulus(spec: RDiagonalSpec) -> SymmetricDistribution:
    """Symmetrized modulus law of an R-diagonal specification."""
    return spec.symmetrized_modulus()


# ---------------------------------------------------------------------------
# Radial distribution of the single ring.


def s_transform_inverse(mu: SymmetricDistribution, w):
    """Inverse S-transform of mu_{T*T} evaluated at w > 0.

    Uses psi(-1/s^2) = s h(s) - 1 together with S(psi(-1/s^2)) = 1/(s f(s)):
    the equation S(z) = w becomes the monotone root problem s f(s) = 1/w,
    and the returned value is z = s h(s) - 1.
    """
    if not w > 0:
        raise DomainError("S-transform inversion needs w > 0")
    target = 1.0 / w
    lo_val = mu.lambda1 ** 2
    hi_val = mu.lambda2 ** 2 if math.isfinite(mu.lambda2) else math.inf
    if not (lo_val < target < hi_val):
        raise DomainError("target outside the range of s*f(s)")

    def gap(s):
        return mu.p(s) - target

    lo, hi = 1e-12, 1.0
    while gap(hi) < 0.0:
        hi *= 2.0
        if hi > 1e150:
            raise DomainError("failed to bracket the S-transform inversion")
    while gap(lo) > 0.0:
        lo /= 2.0
        if lo < 1e-300:
            raise DomainError("failed to bracket the S-transform inversion")
    s = brentq(gap, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=300)
    return s * mu.h(s) - 1.0


def radial_cdf(spec: RDiagonalSpec, r):
    """Mass of the Brown measure of T inside the closed disk of radius r."""
    if not (isinstance(r, (int, float)) and r > 0 and math.isfinite(r)):
        raise DomainError(f"radius must be positive, got {r!r}")
    if isinstance(spec, HaarUnitary):
        return 0.0 if r < spec.gamma else 1.0
    if isinstance(spec, Circular):
        return min(r * r / spec.variance, 1.0)
    if isinstance(spec, CircularCauchy):
        return r * r / (spec.a ** 2 + r * r)
    if isinstance(spec, CircularCauchyPower):
        q = r ** (2.0 / spec.n)
        return q / (1.0 + q)
    mu = spec.symmetrized_modulus()
    l1, l2 = mu.lambda1, mu.lambda2
    if r < l1:
        return 0.0
    if math.isfinite(l2) and r >= l2:
        return 1.0
    return 1.0 + s_transform_inverse(mu, r ** -2)
