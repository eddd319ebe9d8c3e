"""``h^0`` and ``h^1`` of ideal sheaves of ``Z = E + S`` in the plane.

``E = a P_inf`` is the curvilinear scheme of length ``a`` cut on the curve at
``P_inf``; ``S`` is a set of affine rational points (given as indices into the
curve's coordinate order).  ``h^0(I_Z(d))`` is computed as the dimension of
the degree-``d`` forms through ``S`` whose restriction to the branch at
``P_inf`` vanishes to order ``a``; then

    h^1 = h^0 - binom(d + 2, 2) + deg Z.

Intersection degrees of lines and conics with ``Z`` use the branch order at
``P_inf`` capped at ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Union

import numpy as np

from .codes import dual_words_supported_within
from .geometry import Conic, Line, all_lines, build_curve, canonical, order_at_zero, poly_mul, poly_pow
from .linalg import kernel, rank
from .onepoint import branch_conditions, branch_series, code_da, evaluate_forms, forms

Divisor = Union[Line, Conic]

# forms(2) order is x^2, xy, xz, y^2, yz, z^2; Conic order is x^2, y^2, z^2, xy, xz, yz
_CONIC_FROM_FORMS = [0, 3, 5, 1, 2, 4]


@dataclass(frozen=True)
class ZeroScheme:
    a: int
    S: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(sorted(set(int(s) for s in self.S))))
        if self.a < 0:
            raise ValueError("multiplicity at P_inf must be nonnegative")

    @property
    def degree(self) -> int:
        return self.a + len(self.S)


@dataclass(frozen=True)
class H1Report:
    d: int
    a: int
    S: tuple[int, ...]
    h0: int
    h1: int
    case: str | None = None
    witness: dict | None = dc_field(default=None, compare=False)

    def as_dict(self) -> dict:
        return {"d": self.d, "a": self.a, "S": list(self.S), "h0": self.h0, "h1": self.h1,
                "case": self.case, "witness": self.witness}


def _h0(q: int, d: int, Z: ZeroScheme) -> int:
    if d < 0:
        return 0
    curve = build_curve(q)
    f = curve.field
    nmon = comb(d + 2, 2)
    rows = []
    if Z.S:
        rows.append(evaluate_forms(q, d, [curve.affine_points[i] for i in Z.S]).T)
    if Z.a:
        rows.append(branch_conditions(q, d, Z.a))
    if not rows:
        return nmon
    return nmon - rank(f, np.concatenate(rows))


def h1_value(q: int, d: int, Z: ZeroScheme) -> int:
    """``h^1(I_Z(d))`` for any ``d >= -2`` (no range checks)."""
    return _h0(q, d, Z) - (comb(d + 2, 2) if d >= 0 else 0) + Z.degree


def h0_h1(q: int, d: int, Z: ZeroScheme, classify: bool = False) -> H1Report:
    if not 0 < d <= q:
        raise ValueError(f"need 0 < d <= q, got d={d}")
    if Z.a > q:
        raise ValueError(f"need a <= q, got a={Z.a}")
    h0 = _h0(q, d, Z)
    h1 = h0 - comb(d + 2, 2) + Z.degree
    case, witness = (None, None)
    if classify:
        case, witness = classify_h1_positive(q, d, Z)
    return H1Report(d, Z.a, Z.S, h0, h1, case, witness)


def kernel_and_h1(q: int, d: int, a: int, S: Iterable[int]) -> tuple[int, int]:
    """Dimension of the dual words supported in ``S``, and ``h^1(I_{E+S}(d)) - h^1(I_E(d))``.

    The correction term vanishes for ``a <= d``; for ``a > d`` the tangent at
    ``P_inf`` already makes ``E`` fail to impose independent conditions.
    """
    S = tuple(sorted(set(S)))
    C = code_da(q, d, a)
    kd = dual_words_supported_within(C, S).kernel_dim
    h1 = h0_h1(q, d, ZeroScheme(a, S)).h1 - h0_h1(q, d, ZeroScheme(a)).h1
    return kd, h1


def kernel_h1_identity(q: int, d: int, a: int, S: Iterable[int]) -> bool:
    kd, h1 = kernel_and_h1(q, d, a, S)
    return kd == h1


# ---------------------------------------------------------------------------
# Intersections with lines and conics
# ---------------------------------------------------------------------------


def _monomials(T: Divisor) -> list[tuple[int, tuple[int, int, int]]]:
    if isinstance(T, Line):
        exps = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    elif isinstance(T, Conic):
        exps = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
    else:
        raise TypeError(f"unsupported divisor {T!r}")
    if not any(T.coeffs):
        raise ValueError("zero divisor")
    return list(zip(T.coeffs, exps))


def branch_order(q: int, T: Divisor, prec: int | None = None) -> int:
    """Order of vanishing of ``T`` along the curve branch at ``P_inf``.

    Values ``>= prec`` (default ``2q + 3``) are reported as ``prec``.
    """
    prec = 2 * q + 3 if prec is None else prec
    f = build_curve(q).field
    z = branch_series(q, prec)
    total = np.zeros(prec, dtype=np.int64)
    for c, (i, _j, k) in _monomials(T):
        if not c or i >= prec:
            continue
        ser = np.zeros(prec, dtype=np.int64)
        ser[i] = 1
        ser = poly_mul(f, ser, poly_pow(f, z, k, prec), prec)
        total[: len(ser)] = f.add(total[: len(ser)], f.mul(c, ser))
    o = order_at_zero(total)
    return prec if o is None else o


def points_on(q: int, T: Divisor, S: Iterable[int]) -> tuple[int, ...]:
    curve = build_curve(q)
    f = curve.field
    out = []
    for i in S:
        P = curve.affine_points[i]
        if isinstance(T, Line):
            ok = T.contains(f, P)
        else:
            ok = int(T.evaluate(f, *P)) == 0
        if ok:
            out.append(int(i))
    return tuple(out)


def intersection_degree(q: int, T: Divisor, Z: ZeroScheme) -> int:
    """``deg(T cap Z) = |S cap T| + min(a, branch order of T at P_inf)``."""
    _monomials(T)  # rejects the zero divisor
    e = min(Z.a, branch_order(q, T, q + 1)) if Z.a else 0
    return len(points_on(q, T, Z.S)) + e


def residual(q: int, T: Divisor, Z: ZeroScheme) -> ZeroScheme:
    """``Res_T(Z)``: drop the points of ``S`` on ``T`` and lower ``a`` by the contact."""
    _monomials(T)
    e = min(Z.a, branch_order(q, T, q + 1)) if Z.a else 0
    on = set(points_on(q, T, Z.S))
    return ZeroScheme(Z.a - e, tuple(s for s in Z.S if s not in on))


# ---------------------------------------------------------------------------
# Vectorised incidence data used by the classifiers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def line_data(q: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(lines, incidence with affine points, branch order at P_inf)``.

    Orders are capped at ``q + 1``; for lines the order is 0 (``P_inf`` not on
    the line), 1 (transversal) or ``q + 1`` (the tangent ``z = 0``).
    """
    from .geometry import line_incidence

    lines = all_lines(build_curve(q).field)
    inc = line_incidence(q)
    orders = np.array([branch_order(q, Line(tuple(int(t) for t in L)), q + 1) for L in lines])
    return lines, inc, orders


def _line_dict(L) -> dict:
    return {"type": "line", "coeffs": [int(t) for t in L]}


def find_line(q: int, Z: ZeroScheme, threshold: int) -> tuple[int, ...] | None:
    """First line (canonical order) with ``deg(L cap Z) >= threshold``."""
    lines, inc, orders = line_data(q)
    deg = inc[:, list(Z.S)].sum(axis=1) + np.minimum(Z.a, orders)
    hit = np.nonzero(deg >= threshold)[0]
    return tuple(int(t) for t in lines[hit[0]]) if hit.size else None


def _conic_candidates(q: int, Z: ZeroScheme) -> list[Conic]:
    """Conics through degree-5 subschemes of ``Z`` with a unique solution.

    Every smooth conic meeting ``Z`` in degree >= 5 appears here; singular
    conics are handled separately as line pairs.
    """
    curve = build_curve(q)
    f = curve.field
    S = list(Z.S)
    ev = evaluate_forms(q, 2, [curve.affine_points[i] for i in S]).T if S else np.zeros((0, 6), dtype=np.int64)
    seen: dict[tuple, Conic] = {}
    for e in range(0, min(Z.a, 2) + 1):
        if 5 - e > len(S):
            continue
        br = branch_conditions(q, 2, e)
        for U in combinations(range(len(S)), 5 - e):
            M = np.concatenate([ev[list(U)], br]) if e else ev[list(U)]
            K = kernel(f, M)
            if K.shape[0] != 1:
                continue
            coeffs = canonical(f, K[0][_CONIC_FROM_FORMS])
            if coeffs not in seen:
                seen[coeffs] = Conic(coeffs)
    return [seen[k] for k in sorted(seen)]


def find_conic(q: int, Z: ZeroScheme, threshold: int) -> dict | None:
    """A conic (smooth, or a pair of lines) with ``deg(T cap Z) >= threshold``."""
    for T in _conic_candidates(q, Z):
        if intersection_degree(q, T, Z) >= threshold:
            return {"type": "conic", "coeffs": list(T.coeffs), "smooth": T.is_smooth(build_curve(q).field)}
    pair = find_line_pair(q, Z, threshold)
    if pair is not None:
        return {"type": "line_pair", "lines": [list(pair[0]), list(pair[1])]}
    return None


def find_line_pair(q: int, Z: ZeroScheme, threshold: int):
    """First pair ``L <= M`` (``L == M`` is a double line) with ``deg((L+M) cap Z) >= threshold``."""
    lines, inc, orders = line_data(q)
    I = inc[:, list(Z.S)].astype(np.int64)
    cnt = I.sum(axis=1)
    both = I @ I.T
    union = cnt[:, None] + cnt[None, :] - both
    np.fill_diagonal(union, cnt)
    deg = union + np.minimum(Z.a, orders[:, None] + orders[None, :])
    deg = np.triu(deg) - np.tril(np.full_like(deg, 1 << 30), -1)
    hit = np.argwhere(deg >= threshold)
    if not len(hit):
        return None
    i, j = hit[0]
    return tuple(int(t) for t in lines[i]), tuple(int(t) for t in lines[j])


def classify_h1_positive(q: int, d: int, Z: ZeroScheme) -> tuple[str, dict | None]:
    """Which object forces ``h^1(I_Z(d)) > 0``: ``none``, ``line``, ``conic`` or ``unresolved``.

    A line meeting ``Z`` in degree ``>= d + 2`` or a conic meeting it in
    degree ``>= 2d + 2`` always forces positivity; ``none`` is only returned
    in the degree ranges where their absence is known to imply ``h^1 = 0``.
    Cubic witnesses are not searched.
    """
    z = Z.degree
    if z <= d + 1:
        return "none", None
    L = find_line(q, Z, d + 2)
    if L is not None:
        return "line", _line_dict(L)
    if z <= 2 * d + 1:
        return "none", None
    if d >= 2:
        T = find_conic(q, Z, 2 * d + 2)
        if T is not None:
            return "conic", T
        if z <= 3 * d - 1:
            return "none", None
    return "unresolved", None
