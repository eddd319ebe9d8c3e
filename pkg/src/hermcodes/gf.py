"""Finite field arithmetic over GF(p^k).

Elements are plain integers in ``[0, p^k)``: the base-``p`` digits of an
element, least significant first, are the coefficients of its residue
polynomial modulo the field's defining polynomial.  All bulk operations
accept numpy integer arrays and broadcast, so the linear algebra and the
geometry code never loop over individual elements.

For the quadratic extension ``GF(q^2)`` the maps used by the Hermitian curve
(Frobenius ``x -> x^q``, trace ``x^q + x`` and norm ``x^(q+1)``) are provided
as well.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

MAX_ORDER = 1 << 20
# Full addition/multiplication tables are kept for fields up to this size.
_TABLE_LIMIT = 1024


class FieldError(ValueError):
    """Invalid field construction or an illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(n: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``n = p**e``, or raise if ``n`` is not a prime power."""
    if n < 2:
        raise FieldError(f"{n} is not a prime power")
    p = 2
    while n % p:
        p += 1
    e, m = 0, n
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise FieldError(f"{n} is not a prime power")
    return p, e


# ---------------------------------------------------------------------------
# Polynomials over F_p (coefficient lists, constant term first)
# ---------------------------------------------------------------------------


def _poly_trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _poly_trim(a)
    return a


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """Exhaustive irreducibility test: no monic factor of degree <= deg/2."""
    coeffs = _poly_trim(coeffs)
    k = len(coeffs) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for low in product(range(p), repeat=deg):
            if not _poly_mod(coeffs, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree ``k``.

    Candidates are compared on their coefficient lists read from the constant
    term upwards.
    """
    if k == 1:
        return [0, 1]
    for low in product(range(p), repeat=k):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Field
# ---------------------------------------------------------------------------


class FieldSpec:
    """The finite field ``GF(p^k)`` with a fixed defining polynomial.

    Instances are immutable and cached by :func:`build_field`; equality is
    identity of ``(p, k, modulus)``.
    """

    def __init__(self, p: int, k: int, modulus: list[int]):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p**k

        Q = self.order
        self._pw = p ** np.arange(k, dtype=np.int64)
        digits = np.zeros((Q, k), dtype=np.int64)
        rest = np.arange(Q, dtype=np.int64)
        for i in range(k):
            digits[:, i] = rest % p
            rest //= p
        self._digits = digits

        neg = ((-digits) % p) @ self._pw
        self._neg = neg.astype(np.int64)

        g = self._find_primitive()
        exp = np.zeros(2 * Q, dtype=np.int64)
        log = np.zeros(Q, dtype=np.int64)
        val = 1
        for i in range(Q - 1):
            exp[i] = val
            log[val] = i
            val = self._raw_mul(val, g)
        exp[Q - 1 : 2 * (Q - 1)] = exp[: Q - 1]
        self._exp = exp
        self._log = log
        self.primitive = g

        inv = np.zeros(Q, dtype=np.int64)
        if Q > 1:
            inv[1:] = exp[(Q - 1 - log[1:]) % (Q - 1)]
        self._inv = inv

        self._add_table = None
        self._mul_table = None
        if Q <= _TABLE_LIMIT:
            idx = np.arange(Q)
            self._add_table = self._add_generic(idx[:, None], idx[None, :])
            self._mul_table = self._mul_generic(idx[:, None], idx[None, :])
            self._sub_table = self._add_table[:, self._neg]

    # -- construction helpers -------------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da = [(a // p**i) % p for i in range(k)]
        db = [(b // p**i) % p for i in range(k)]
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _poly_mod(prod, list(self.modulus), p)
        return sum(c * p**i for i, c in enumerate(red))

    def _raw_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return result

    def _find_primitive(self) -> int:
        Q = self.order
        if Q == 2:
            return 1
        n = Q - 1
        factors, m, f = [], n, 2
        while f * f <= m:
            if m % f == 0:
                factors.append(f)
                while m % f == 0:
                    m //= f
            f += 1
        if m > 1:
            factors.append(m)
        for g in range(2, Q):
            if all(self._raw_pow(g, n // r) != 1 for r in factors):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def _add_generic(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._pw

    def _mul_generic(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        Q = self.order
        out = self._exp[(self._log[a] + self._log[b]) % (Q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- vectorised arithmetic ------------------------------------------------

    def add(self, a, b):
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._add_generic(a, b)

    def sub(self, a, b):
        if self._add_table is not None:
            return self._sub_table[a, b]
        return self._add_generic(a, self._neg[b])

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._mul_generic(a, b)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        """Elementwise ``a**e`` for an integer exponent (``0**0 == 1``)."""
        a = np.asarray(a, dtype=np.int64)
        Q = self.order
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            a = self.inv(a)
            e = -e
        out = self._exp[(self._log[a] * e) % (Q - 1)]
        return np.where(a == 0, 0, out)

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under ``Z -> F_p -> GF(p^k)``."""
        return int(n % self.p)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def __call__(self, index: int) -> FieldElement:
        return FieldElement(self, index)

    # -- the F_q subfield of a quadratic extension ---------------------------

    @property
    def sub_order(self) -> int:
        """``q`` when this field is ``GF(q^2)``."""
        if self.k % 2:
            raise FieldError(f"GF({self.p}^{self.k}) is not a square extension")
        return self.p ** (self.k // 2)

    def frobenius(self, a):
        return self.pow(a, self.sub_order)

    def trace(self, a):
        return self.add(self.frobenius(a), a)

    def norm(self, a):
        return self.pow(a, self.sub_order + 1)

    def subfield(self) -> np.ndarray:
        """The ``q`` elements fixed by Frobenius, sorted by index."""
        el = self.elements()
        return el[self.frobenius(el) == el]

    # -- identity ---------------------------------------------------------------

    def key(self) -> tuple:
        return (self.p, self.k, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __reduce__(self):
        return (build_field, (self.p, self.k))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def build_field(p: int, k: int) -> FieldSpec:
    """Construct ``GF(p^k)`` using the lexicographically smallest modulus."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be positive")
    if p**k > MAX_ORDER:
        raise FieldError(f"field of order {p}^{k} exceeds the supported size {MAX_ORDER}")
    return FieldSpec(p, k, smallest_irreducible(p, k))


def hermitian_field(q: int) -> FieldSpec:
    """``GF(q^2)`` for a prime power ``q``."""
    p, e = prime_power(q)
    return build_field(p, 2 * e)


class FieldElement:
    """A single field element with operator overloading.

    Convenience wrapper for interactive use and tests; the library itself
    works on integer arrays.
    """

    __slots__ = ("field", "index")

    def __init__(self, field: FieldSpec, index: int):
        index = int(index)
        if not 0 <= index < field.order:
            raise FieldError(f"index {index} outside GF({field.order})")
        self.field = field
        self.index = index

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands belong to different fields")
            return other.index
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def _wrap(self, v) -> FieldElement:
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        return self._wrap(self.field.add(self.index, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.index, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.index))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b == 0:
            raise ZeroDivisionError("division by zero in finite field")
        return self._wrap(self.field.div(self.index, b))

    def __pow__(self, e: int):
        if self.index == 0 and e < 0:
            raise ZeroDivisionError("negative power of zero")
        return self._wrap(self.field.pow(self.index, e))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.index))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.index == other.index
        if isinstance(other, (int, np.integer)):
            return self.index == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.key(), self.index))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"GF({self.field.order})[{self.index}]"


def arith(a: FieldElement, b, op: str) -> FieldElement:
    """Apply one of ``add, sub, mul, div, pow`` to ``a`` and ``b``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {op!r}")


def frobenius_trace_norm(x: FieldElement) -> tuple[FieldElement, FieldElement, FieldElement]:
    """``(x^q, x^q + x, x^(q+1))`` for ``x`` in ``GF(q^2)``."""
    f = x.field
    v = x.index
    return f(int(f.frobenius(v))), f(int(f.trace(v))), f(int(f.norm(v)))


def solve_trace_equation(field: FieldSpec, c: int) -> list[int]:
    """All ``y`` in ``GF(q^2)`` with ``y^q + y = c``; ``c`` must lie in ``GF(q)``."""
    c = int(c)
    if int(field.frobenius(c)) != c:
        raise FieldError(f"{c} is not in the subfield GF({field.sub_order})")
    return [int(y) for y in _trace_fibres(field)[c]]


@lru_cache(maxsize=None)
def _trace_fibres(field: FieldSpec) -> dict[int, np.ndarray]:
    el = field.elements()
    tr = field.trace(el)
    return {int(c): el[tr == c] for c in field.subfield()}
