from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermcodes.gf import (
    FieldError,
    arith,
    build_field,
    frobenius_trace_norm,
    hermitian_field,
    is_irreducible,
    smallest_irreducible,
    solve_trace_equation,
)


def _brute_irreducibles(p, k):
    """Monic degree-k polynomials with no factor of degree <= k/2, by trial multiplication."""

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    reducible = set()
    for da in range(1, k // 2 + 1):
        for ca in itertools.product(range(p), repeat=da):
            for cb in itertools.product(range(p), repeat=k - da):
                reducible.add(tuple(mul(list(ca) + [1], list(cb) + [1])))
    return [list(c) + [1] for c in itertools.product(range(p), repeat=k) if tuple(list(c) + [1]) not in reducible]


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2)])
def test_irreducibility_matches_trial_factorisation(p, k):
    brute = _brute_irreducibles(p, k)
    fast = [list(c) + [1] for c in itertools.product(range(p), repeat=k) if is_irreducible(list(c) + [1], p)]
    assert fast == brute
    # itertools.product already walks coefficient lists low-degree-first
    assert smallest_irreducible(p, k) == brute[0]


def test_small_fields():
    F2 = build_field(2, 1)
    assert F2.order == 2 and list(F2.modulus) == [0, 1]
    F4 = build_field(2, 2)
    assert list(F4.modulus) == [1, 1, 1]
    assert build_field(3, 2).order == 9


def test_bad_fields():
    with pytest.raises(FieldError):
        build_field(4, 1)
    with pytest.raises(FieldError):
        build_field(2, 21)


def test_f4_omega_squared():
    F4 = build_field(2, 2)
    w = F4(2)
    assert (w * w).index == 3  # omega + 1
    assert arith(w, w, "mul") == F4(3)


def test_f4_trace_of_omega():
    F4 = hermitian_field(2)
    frob, tr, nm = frobenius_trace_norm(F4(2))
    assert tr.index == 1
    assert frob.index == 3 and nm.index == 1


def test_trace_norm_of_zero_and_one():
    for q in (2, 3, 4, 5):
        F = hermitian_field(q)
        assert [e.index for e in frobenius_trace_norm(F(0))] == [0, 0, 0]
        frob, tr, nm = frobenius_trace_norm(F(1))
        assert frob.index == 1 and nm.index == 1
        assert tr.index == F.from_int(2)


def test_mixed_fields_and_zero_division():
    a, b = build_field(2, 2)(1), build_field(3, 2)(1)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ZeroDivisionError):
        a / build_field(2, 2)(0)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 4), (5, 2), (7, 2)])
def test_field_axioms_exhaustive(p, k):
    F = build_field(p, k)
    el = F.elements()
    x, y = np.meshgrid(el, el, indexing="ij")
    assert np.array_equal(F.add(x, 0 * y), x)
    nz = el[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.array_equal(F.mul(x, y), F.mul(y, x))
    z = el[:, None, None]
    assert np.array_equal(F.mul(z, F.add(x, y)[None]), F.add(F.mul(z, x[None]), F.mul(z, y[None])))
    assert np.all(F.pow(nz, 0) == 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_prime_field_multiplication_is_repeated_addition(p):
    F = build_field(p, 1)
    for a in range(p):
        acc = 0
        for b in range(p):
            assert F.mul(a, b) == acc
            acc = int(F.add(acc, a))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_frobenius_is_a_field_automorphism(q):
    F = hermitian_field(q)
    el = F.elements()
    x, y = np.meshgrid(el, el, indexing="ij")
    fr = F.frobenius
    assert np.array_equal(fr(F.add(x, y)), F.add(fr(x), fr(y)))
    assert np.array_equal(fr(F.mul(x, y)), F.mul(fr(x), fr(y)))
    for v in (F.trace(el), F.norm(el)):
        assert np.array_equal(F.pow(v, q), v)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_trace_fibres_partition(q):
    F = hermitian_field(q)
    seen = []
    for c in F.subfield():
        ys = solve_trace_equation(F, int(c))
        assert len(ys) == q
        seen.extend(ys)
    assert sorted(seen) == list(range(F.order))


def test_trace_kernel_in_f4():
    F = hermitian_field(2)
    brute = sorted(y for y in range(4) if F.add(F.pow(y, 2), y) == 0)
    assert solve_trace_equation(F, 0) == brute == [0, 1]


def test_trace_equation_rejects_non_subfield():
    F = hermitian_field(2)
    with pytest.raises(FieldError):
        solve_trace_equation(F, 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (2, 4), (5, 2)]), st.data())
def test_division_inverts_multiplication(pk, data):
    F = build_field(*pk)
    a = data.draw(st.integers(0, F.order - 1))
    b = data.draw(st.integers(1, F.order - 1))
    assert F.div(F.mul(a, b), b) == a
    e = data.draw(st.integers(0, 3 * F.order))
    expect = 1
    for _ in range(e):
        expect = int(F.mul(expect, a))
    assert int(F.pow(a, e)) == expect
