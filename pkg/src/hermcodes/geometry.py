"""Incidence geometry of PG(2, q^2) and the Hermitian curve.

Projective points and curves are stored in canonical form: the last nonzero
homogeneous coordinate (or coefficient) equals one.  The curve is

    y^q z + y z^q = x^(q+1),

with affine model ``y^q + y = x^(q+1)`` and the single point at infinity
``P_inf = (0:1:0)``.  Affine rational points are ordered lexicographically by
``(x, y)`` index; that order fixes the coordinate order of every code built
by the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache

import numpy as np

from .gf import FieldError, FieldSpec, hermitian_field, prime_power, solve_trace_equation

MAX_Q = 16

Point = tuple[int, int, int]


def canonical(field: FieldSpec, v) -> tuple[int, ...]:
    """Scale a nonzero vector so that its last nonzero entry is one."""
    v = np.asarray(v, dtype=np.int64)
    nz = np.nonzero(v)[0]
    if nz.size == 0:
        raise ValueError("the zero vector has no projective class")
    s = field.inv(v[nz[-1]])
    return tuple(int(t) for t in field.mul(v, s))


@dataclass(frozen=True)
class Line:
    """The line ``A x + B y + C z = 0``."""

    coeffs: tuple[int, int, int]

    def contains(self, field: FieldSpec, P: Point) -> bool:
        A, B, C = self.coeffs
        s = field.add(field.add(field.mul(A, P[0]), field.mul(B, P[1])), field.mul(C, P[2]))
        return int(s) == 0


@dataclass(frozen=True)
class Conic:
    """``A x^2 + B y^2 + C z^2 + D xy + E xz + F yz = 0``."""

    coeffs: tuple[int, int, int, int, int, int]

    def evaluate(self, field: FieldSpec, x, y, z):
        A, B, C, D, E, F = self.coeffs
        m = field.mul
        terms = [
            m(A, m(x, x)),
            m(B, m(y, y)),
            m(C, m(z, z)),
            m(D, m(x, y)),
            m(E, m(x, z)),
            m(F, m(y, z)),
        ]
        out = terms[0]
        for t in terms[1:]:
            out = field.add(out, t)
        return out

    def discriminant(self, field: FieldSpec) -> int:
        """``4ABC + DEF - AF^2 - BE^2 - CD^2``; zero iff the conic is singular.

        This form of the discriminant is valid in every characteristic.
        """
        A, B, C, D, E, F = self.coeffs
        m, a, s = field.mul, field.add, field.sub
        four = field.from_int(4)
        t = a(m(four, m(A, m(B, C))), m(D, m(E, F)))
        t = s(t, m(A, m(F, F)))
        t = s(t, m(B, m(E, E)))
        t = s(t, m(C, m(D, D)))
        return int(t)

    def is_smooth(self, field: FieldSpec) -> bool:
        return self.discriminant(field) != 0


def parabola(field: FieldSpec, a: int, b: int, c: int) -> Conic:
    """Projective closure of ``y = a x^2 + b x + c``."""
    one = 1
    return Conic(canonical(field, [a, 0, c, 0, b, field.neg(one)]))


# ---------------------------------------------------------------------------
# Univariate polynomials over the field (coefficient arrays, t^0 first)
# ---------------------------------------------------------------------------


def poly_mul(field: FieldSpec, a, b, prec: int | None = None) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = len(a) + len(b) - 1
    if prec is not None:
        n = min(n, prec)
    out = np.zeros(max(n, 0), dtype=np.int64)
    for i, ai in enumerate(a[:n]):
        if ai:
            m = min(len(b), n - i)
            out[i : i + m] = field.add(out[i : i + m], field.mul(ai, b[:m]))
    return out


def poly_add(field: FieldSpec, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = max(len(a), len(b))
    A = np.zeros(n, dtype=np.int64)
    B = np.zeros(n, dtype=np.int64)
    A[: len(a)] = a
    B[: len(b)] = b
    return field.add(A, B)


def poly_pow(field: FieldSpec, a, e: int, prec: int | None = None) -> np.ndarray:
    out = np.array([1], dtype=np.int64)
    for _ in range(e):
        out = poly_mul(field, out, a, prec)
    return out


def order_at_zero(coeffs) -> int | None:
    """Index of the lowest nonzero coefficient, ``None`` for the zero polynomial."""
    nz = np.nonzero(np.asarray(coeffs))[0]
    return int(nz[0]) if nz.size else None


# ---------------------------------------------------------------------------
# The curve
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HermitianCurve:
    q: int
    field: FieldSpec
    affine_points: tuple[Point, ...]
    p_infinity: Point = (0, 1, 0)
    _index: dict = dc_field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.affine_points)

    @cached_property
    def xs(self) -> np.ndarray:
        return np.array([P[0] for P in self.affine_points], dtype=np.int64)

    @cached_property
    def ys(self) -> np.ndarray:
        return np.array([P[1] for P in self.affine_points], dtype=np.int64)

    @property
    def all_points(self) -> tuple[Point, ...]:
        """Affine points followed by ``P_inf``."""
        return self.affine_points + (self.p_infinity,)

    def index_of(self, P: Point) -> int:
        """Position of an affine point in the coordinate order."""
        return self._index[tuple(int(t) for t in P)]

    def contains(self, P: Point) -> bool:
        return int(self.form(*P)) == 0

    def form(self, x, y, z):
        """The homogeneous curve equation ``y^q z + y z^q - x^(q+1)``."""
        f, q = self.field, self.q
        lhs = f.add(f.mul(f.pow(y, q), z), f.mul(y, f.pow(z, q)))
        return f.sub(lhs, f.pow(x, q + 1))

    def gradient(self, P: Point) -> tuple[int, int, int]:
        # d/dx = -(q+1) x^q = -x^q, d/dy = z^q, d/dz = y^q in characteristic p
        f, q = self.field, self.q
        x, y, z = P
        return (int(f.neg(f.pow(x, q))), int(f.pow(z, q)), int(f.pow(y, q)))

    def restrict_to_line(self, P: Point, R: Point) -> np.ndarray:
        """Coefficients of ``F(P + t R)`` as a polynomial in ``t``."""
        f, q = self.field, self.q
        x = np.array([P[0], R[0]])
        y = np.array([P[1], R[1]])
        z = np.array([P[2], R[2]])
        t1 = poly_mul(f, poly_pow(f, y, q), z)
        t2 = poly_mul(f, y, poly_pow(f, z, q))
        t3 = poly_pow(f, x, q + 1)
        return f.sub(poly_add(f, t1, t2), t3)


@lru_cache(maxsize=None)
def build_curve(q: int) -> HermitianCurve:
    """All ``q^3 + 1`` rational points of the Hermitian curve over ``GF(q^2)``."""
    prime_power(q)
    if q > MAX_Q:
        raise FieldError(f"q={q} is above the supported maximum {MAX_Q}")
    field = hermitian_field(q)
    pts: list[Point] = []
    for x in range(field.order):
        c = int(field.norm(x))
        for y in solve_trace_equation(field, c):
            pts.append((x, int(y), 1))
    pts.sort()
    curve = HermitianCurve(q=q, field=field, affine_points=tuple(pts))
    curve._index.update({P: i for i, P in enumerate(pts)})
    return curve


def tangent_line(curve: HermitianCurve, P: Point) -> Line:
    if not curve.contains(P):
        raise ValueError(f"{P} is not on the curve")
    return Line(canonical(curve.field, curve.gradient(P)))


@lru_cache(maxsize=None)
def all_lines(field: FieldSpec) -> np.ndarray:
    """Every line of PG(2, Q) as a canonical ``(A, B, C)`` row, sorted."""
    Q = field.order
    el = np.arange(Q)
    a, b = np.meshgrid(el, el, indexing="ij")
    rows = [np.stack([a.ravel(), b.ravel(), np.ones(Q * Q, dtype=np.int64)], axis=1)]
    rows.append(np.stack([el, np.ones(Q, dtype=np.int64), np.zeros(Q, dtype=np.int64)], axis=1))
    rows.append(np.array([[1, 0, 0]]))
    L = np.concatenate(rows).astype(np.int64)
    order = np.lexsort((L[:, 2], L[:, 1], L[:, 0]))
    return L[order]


@lru_cache(maxsize=None)
def all_points(field: FieldSpec) -> np.ndarray:
    """Every point of PG(2, Q) in canonical form (same set as the lines)."""
    return all_lines(field)


def incidence(field: FieldSpec, lines: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Boolean matrix ``lines x points`` of incidence."""
    f = field
    s = f.mul(lines[:, None, 0], pts[None, :, 0])
    s = f.add(s, f.mul(lines[:, None, 1], pts[None, :, 1]))
    s = f.add(s, f.mul(lines[:, None, 2], pts[None, :, 2]))
    return s == 0


def contact_order(curve: HermitianCurve, line: Line, P: Point) -> int:
    """Intersection multiplicity of ``line`` and the curve at ``P``."""
    f = curve.field
    if not line.contains(f, P) or not curve.contains(P):
        return 0
    # a second point on the line, distinct from P
    A, B, C = line.coeffs
    cands = [(int(f.neg(B)), A, 0), (int(f.neg(C)), 0, A), (0, int(f.neg(C)), B)]
    for R in cands:
        if any(R) and canonical(f, R) != canonical(f, P):
            break
    else:  # pragma: no cover
        raise RuntimeError("could not parametrise line")
    order = order_at_zero(curve.restrict_to_line(P, R))
    if order is None:  # pragma: no cover
        raise RuntimeError("line contained in the curve")
    return order


@dataclass(frozen=True)
class LineClasses:
    """Partition of the lines of PG(2, q^2) relative to the curve.

    ``tangents`` is indexed like ``curve.all_points``; ``profiles`` maps every
    line to the indices (into ``curve.all_points``) of its rational points.
    """

    lines: np.ndarray
    tangents: tuple[int, ...]
    r_inf: tuple[int, ...]
    r: tuple[int, ...]
    profiles: tuple[tuple[int, ...], ...]

    def affine_points_on(self, line_idx: int, n_affine: int) -> tuple[int, ...]:
        return tuple(i for i in self.profiles[line_idx] if i < n_affine)


@lru_cache(maxsize=None)
def classify_lines(q: int) -> LineClasses:
    curve = build_curve(q)
    f = curve.field
    lines = all_lines(f)
    pts = np.array(curve.all_points, dtype=np.int64)
    inc = incidence(f, lines, pts)
    row = {tuple(int(t) for t in L): i for i, L in enumerate(lines)}
    tangents = tuple(row[tangent_line(curve, P).coeffs] for P in curve.all_points)
    tset = set(tangents)
    inf = len(curve.affine_points)
    r_inf, r = [], []
    for i in range(len(lines)):
        if i in tset:
            continue
        (r_inf if inc[i, inf] else r).append(i)
    profiles = tuple(tuple(int(j) for j in np.nonzero(inc[i])[0]) for i in range(len(lines)))
    return LineClasses(lines, tangents, tuple(r_inf), tuple(r), profiles)


@lru_cache(maxsize=None)
def line_incidence(q: int) -> np.ndarray:
    """``lines x affine points`` incidence (boolean), rows as in :func:`all_lines`."""
    curve = build_curve(q)
    lines = all_lines(curve.field)
    return incidence(curve.field, lines, np.array(curve.affine_points, dtype=np.int64))


# ---------------------------------------------------------------------------
# Parabolas y = a x^2 + b x + c
# ---------------------------------------------------------------------------


def _parabola_keys(curve: HermitianCurve) -> np.ndarray:
    """For every ``(a, b)`` with ``a != 0`` and every affine point, the ``c``
    making the parabola pass through that point.  Shape ``(Q-1, Q, n)``."""
    f = curve.field
    Q = f.order
    x, y = curve.xs, curve.ys
    x2 = f.mul(x, x)
    a = np.arange(1, Q)[:, None, None]
    b = np.arange(Q)[None, :, None]
    return f.sub(f.sub(y[None, None, :], f.mul(a, x2[None, None, :])), f.mul(b, x[None, None, :]))


@lru_cache(maxsize=None)
def parabola_counts(q: int) -> np.ndarray:
    """``h[a-1, b, c]`` = number of affine curve points on ``y = a x^2 + b x + c``."""
    curve = build_curve(q)
    Q = curve.field.order
    keys = _parabola_keys(curve)
    ab = (np.arange(Q - 1)[:, None, None] * Q + np.arange(Q)[None, :, None]) * Q
    flat = (ab + keys).ravel()
    return np.bincount(flat, minlength=(Q - 1) * Q * Q).reshape(Q - 1, Q, Q)


def parabola_census(q: int) -> dict[int, int]:
    """Histogram ``h -> number of parabolas meeting the affine curve in h points``."""
    counts = parabola_counts(q)
    hist = np.bincount(counts.ravel())
    return {int(h): int(c) for h, c in enumerate(hist) if c}


def parabola_supports(q: int, h: int) -> list[tuple[tuple[int, int, int], tuple[int, ...]]]:
    """Parabolas meeting the curve in exactly ``h`` affine points, with those points."""
    curve = build_curve(q)
    counts = parabola_counts(q)
    keys = _parabola_keys(curve)
    out = []
    for a1, b, c in zip(*np.nonzero(counts == h)):
        pts = tuple(int(i) for i in np.nonzero(keys[a1, b] == c)[0])
        out.append(((int(a1) + 1, int(b), int(c)), pts))
    return out
