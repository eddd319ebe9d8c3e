"""Hermitian one-point codes.

``C_m`` evaluates the functions with a pole of order at most ``m`` at
``P_inf`` (spanned by the monomials ``x^i y^j`` with ``j < q`` and
``i q + j (q + 1) <= m``) at the ``q^3`` affine rational points.  Writing
``m = d (q + 1) - a`` with ``0 <= a <= q`` gives the same code as the
evaluation of the plane forms of degree ``d`` vanishing to order ``a`` at
``P_inf`` along the curve; :func:`build_code_projective` builds that second
presentation independently from the first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .codes import LinearCode, puncture
from .geometry import build_curve, poly_mul, poly_pow
from .linalg import kernel, matmul

# ---------------------------------------------------------------------------
# Designations
# ---------------------------------------------------------------------------


def max_m(q: int) -> int:
    """Largest ``m`` giving a nontrivial dual: ``q^3 + q^2 - q - 2``."""
    return q**3 + q**2 - q - 2


def m_to_da(q: int, m: int) -> tuple[int, int]:
    if m <= 0:
        raise ValueError("m must be positive")
    d = -(-m // (q + 1))
    return d, d * (q + 1) - m


def da_to_m(q: int, d: int, a: int) -> int:
    return d * (q + 1) - a


def reduce_da(q: int, d: int, a: int) -> tuple[int, int]:
    """Lower the degree by one when the vanishing order exceeds it."""
    if not 0 <= a <= q:
        raise ValueError(f"a={a} outside [0, {q}]")
    if a > d:
        if d <= 1:
            raise ValueError("reduction needs d > 1 when a > d")
        return d - 1, 0
    return d, a


def dual_index(q: int, m: int) -> int:
    return max_m(q) - m


@dataclass(frozen=True)
class CodeSpec:
    """Either ``m`` or ``(d, a, H)``; ``H`` is a set of removed affine points."""

    q: int
    m: int | None = None
    d: int | None = None
    a: int | None = None
    H: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.m is None:
            if self.d is None or self.a is None:
                raise ValueError("give either m or both d and a")
            if self.d <= 0 or not 0 <= self.a <= self.q:
                raise ValueError(f"invalid (d, a) = ({self.d}, {self.a}) for q={self.q}")
        elif self.m < 0:
            raise ValueError("m must be nonnegative")

    @property
    def pole_order(self) -> int:
        return self.m if self.m is not None else da_to_m(self.q, self.d, self.a)

    @property
    def da(self) -> tuple[int, int]:
        if self.d is not None:
            return self.d, self.a
        return m_to_da(self.q, self.m)

    @classmethod
    def parse(cls, text: str) -> CodeSpec:
        """Parse ``"q=7 m=53"`` or ``"q=7 d=7 a=3 H=@file"``."""
        fields = dict(re.findall(r"(\w+)=(\S+)", text))
        if "q" not in fields:
            raise ValueError("spec string needs q=")
        q = int(fields["q"])
        H: frozenset[int] = frozenset()
        if "H" in fields:
            src = fields["H"]
            body = Path(src[1:]).read_text() if src.startswith("@") else src.replace(",", " ")
            H = frozenset(int(t) for t in body.split())
        if "m" in fields:
            return cls(q, m=int(fields["m"]), H=H)
        return cls(q, d=int(fields["d"]), a=int(fields["a"]), H=H)


def monomial_basis(q: int, m: int) -> list[tuple[int, int]]:
    """Exponent pairs ``(i, j)`` with ``j < q`` and ``i q + j (q + 1) <= m``."""
    return [(i, j) for j in range(q) for i in range(m // q + 1) if i * q + j * (q + 1) <= m]


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _code_m(q: int, m: int) -> LinearCode:
    curve = build_curve(q)
    f = curve.field
    basis = sorted(monomial_basis(q, m), key=lambda ij: (ij[0] * q + ij[1] * (q + 1), ij))
    rows = np.array([f.mul(f.pow(curve.xs, i), f.pow(curve.ys, j)) for i, j in basis], dtype=np.int64)
    labels = curve.affine_points
    if len(basis) <= curve.n and m < curve.n:
        return LinearCode(f, rows, labels)
    return LinearCode.from_rows(f, rows, labels)


def build_code(spec: CodeSpec | None = None, *, q: int | None = None, m: int | None = None) -> LinearCode:
    """Generator of ``C_m`` (or ``C(d, a, H)``) from the monomial basis."""
    if spec is None:
        spec = CodeSpec(q, m=m)
    C = _code_m(spec.q, spec.pole_order)
    if spec.H:
        if not set(spec.H).issubset(range(C.n)):
            raise ValueError("H must be a set of affine point indices")
        return puncture(C, spec.H)
    return C


def code_da(q: int, d: int, a: int, H=()) -> LinearCode:
    return build_code(CodeSpec(q, d=d, a=a, H=frozenset(H)))


def forms(d: int) -> list[tuple[int, int, int]]:
    """Exponents ``(i, j, k)`` of the degree-``d`` monomials ``x^i y^j z^k``."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


@lru_cache(maxsize=None)
def branch_series(q: int, prec: int) -> np.ndarray:
    """``z(t)`` modulo ``t^prec`` for the branch ``x = t, y = 1`` at ``P_inf``.

    The curve in the chart ``y = 1`` reads ``z + z^q = x^(q+1)``; iterate
    ``z <- t^(q+1) - z^q`` to a fixed point.
    """
    f = build_curve(q).field
    target = np.zeros(prec, dtype=np.int64)
    if q + 1 < prec:
        target[q + 1] = 1
    z = np.zeros(prec, dtype=np.int64)
    while True:
        zq = poly_pow(f, z, q, prec)
        nz = np.zeros(prec, dtype=np.int64)
        nz[: len(zq)] = zq
        new = f.sub(target, nz)
        if np.array_equal(new, z):
            return z
        z = new


def branch_conditions(q: int, d: int, a: int) -> np.ndarray:
    """Rows: coefficients of ``t^0 .. t^(a-1)`` of each degree-``d`` monomial
    restricted to the branch at ``P_inf``.  A form vanishes to order ``a``
    along the curve iff its coefficient vector is orthogonal to every row."""
    f = build_curve(q).field
    mons = forms(d)
    out = np.zeros((a, len(mons)), dtype=np.int64)
    if a == 0:
        return out
    z = branch_series(q, a)
    for c, (i, _j, k) in enumerate(mons):
        ser = np.zeros(a, dtype=np.int64)
        if i < a:
            ser[i] = 1
        ser = poly_mul(f, ser, poly_pow(f, z, k, a), a)
        out[: len(ser), c] = ser
    return out


def evaluate_forms(q: int, d: int, pts) -> np.ndarray:
    """``monomials x points`` evaluation matrix for degree-``d`` forms."""
    f = build_curve(q).field
    P = np.asarray(pts, dtype=np.int64).reshape(-1, 3)
    return np.array(
        [f.mul(f.mul(f.pow(P[:, 0], i), f.pow(P[:, 1], j)), f.pow(P[:, 2], k)) for i, j, k in forms(d)],
        dtype=np.int64,
    ).reshape(len(forms(d)), len(P))


def build_code_projective(q: int, d: int, a: int) -> LinearCode:
    """Evaluation code of the degree-``d`` forms vanishing to order ``a`` at ``P_inf``."""
    if not 0 < d <= q or not 0 <= a <= q:
        raise ValueError(f"need 0 < d <= q and 0 <= a <= q, got d={d}, a={a}")
    curve = build_curve(q)
    f = curve.field
    cond = branch_conditions(q, d, a)
    if a:
        basis = kernel(f, cond)
    else:
        basis = np.eye(len(forms(d)), dtype=np.int64)
    ev = evaluate_forms(q, d, curve.affine_points)
    return LinearCode.from_rows(f, matmul(f, basis, ev), curve.affine_points)


# ---------------------------------------------------------------------------
# Table of minimum distances
# ---------------------------------------------------------------------------


def phase(q: int, m: int) -> int:
    if not 0 < m <= max_m(q):
        raise ValueError(f"m={m} outside (0, {max_m(q)}]")
    if m < q * q - q:
        return 1
    if m < q**3 - q * q:
        return 2
    if m < q**3:
        r = m - (q**3 - q * q)
        a, b = divmod(r, q)
        return 3 if a < b else 4
    return 5


def designed_distance(q: int, m: int) -> int:
    """Minimum distance of ``C_m`` for ``0 < m <= q^3 + q^2 - q - 2``."""
    ph = phase(q, m)
    if ph == 1:
        alpha, beta = divmod(m, q)
        if m < q or alpha <= beta:
            return q**3 - alpha * (q + 1)
        return q**3 - beta - alpha * q
    if ph in (2, 3):
        return q**3 - m
    if ph == 4:
        b = (m - (q**3 - q * q)) % q
        return q**3 - m + b
    mp = dual_index(q, m)
    alpha, beta = divmod(mp, q)
    if mp < q or alpha <= beta:
        return alpha + 2
    return alpha + 1


def code_params(q: int, m: int) -> dict:
    C = build_code(q=q, m=m)
    d, a = m_to_da(q, m)
    return {
        "q": q,
        "m": m,
        "d": d,
        "a": a,
        "n": C.n,
        "k": C.k,
        "phase": phase(q, m),
        "designed_distance": designed_distance(q, m),
        "dual_index": dual_index(q, m),
        "dual_designed_distance": designed_distance(q, dual_index(q, m)) if dual_index(q, m) > 0 else None,
    }
