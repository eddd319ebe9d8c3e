from __future__ import annotations

import itertools

import numpy as np
import pytest

from hermcodes.codes import dual_words_supported_within
from hermcodes.cohomology import (
    ZeroScheme,
    branch_order,
    classify_h1_positive,
    find_conic,
    h0_h1,
    h1_value,
    intersection_degree,
    kernel_and_h1,
    kernel_h1_identity,
    residual,
)
from hermcodes.geometry import Conic, Line, all_lines, build_curve, canonical, classify_lines, parabola, parabola_supports
from hermcodes.onepoint import code_da


def _line(lc, i) -> Line:
    return Line(tuple(int(t) for t in lc.lines[i]))


def _affine_on(q, i):
    return list(classify_lines(q).affine_points_on(i, q**3))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_E_alone_imposes_independent_conditions(q):
    for d in range(1, q + 1):
        for a in range(0, d + 1):
            rep = h0_h1(q, d, ZeroScheme(a))
            assert rep.h1 == 0 and rep.h0 == (d + 1) * (d + 2) // 2 - a


def test_E_beyond_d_fails_to_impose():
    # with a > d the tangent z = 0 vanishes to order q + 1 > d at P_inf
    assert h0_h1(3, 1, ZeroScheme(3)).h1 > 0


def test_collinear_examples_q3():
    lc = classify_lines(3)
    pts = _affine_on(3, lc.r[0])
    assert len(pts) == 4
    assert h0_h1(3, 2, ZeroScheme(0, pts[:3])).h1 == 0
    rep = h0_h1(3, 2, ZeroScheme(0, pts), classify=True)
    assert rep.h1 == 1 and rep.case == "line"
    assert rep.as_dict()["S"] == sorted(pts)


def test_range_errors():
    with pytest.raises(ValueError):
        h0_h1(3, 0, ZeroScheme(0))
    with pytest.raises(ValueError):
        h0_h1(3, 4, ZeroScheme(0))
    with pytest.raises(ValueError):
        h0_h1(3, 2, ZeroScheme(4))
    with pytest.raises(ValueError):
        ZeroScheme(-1)


@pytest.mark.parametrize("q", [2, 3])
def test_collinear_closed_form(q):
    """For S on a line L and a <= d, h1 = max(0, deg(E cap L) + |S| - d - 1)."""
    lc = classify_lines(q)
    for i in range(len(lc.lines)):
        L = _line(lc, i)
        on = _affine_on(q, i)
        order = branch_order(q, L, q + 1)
        for d in range(1, q + 1):
            for a in range(0, d + 1):
                for s in range(len(on) + 1):
                    S = on[:s]
                    want = max(0, min(a, order) + s - d - 1)
                    assert h1_value(q, d, ZeroScheme(a, S)) == want, (i, d, a, s)


def test_branch_orders_of_lines():
    q = 3
    lc = classify_lines(q)
    assert branch_order(q, Line((0, 0, 1)), q + 1) == q + 1
    for i in lc.r_inf:
        assert branch_order(q, _line(lc, i)) == 1
    for i in lc.r[:10]:
        assert branch_order(q, _line(lc, i)) == 0


def test_intersection_degree_examples():
    q = 3
    lc = classify_lines(q)
    f = build_curve(q).field
    S = tuple(range(0, 27, 2))
    # tangent at P_inf meets no affine point
    assert intersection_degree(q, Line((0, 0, 1)), ZeroScheme(3, S)) == 3
    for i in lc.r_inf:
        L = _line(lc, i)
        on = set(_affine_on(q, i))
        assert intersection_degree(q, L, ZeroScheme(3, S)) == 1 + len(on & set(S))
    T = parabola(f, 1, 2, 3)
    assert branch_order(q, T) >= 2
    on = [j for j, P in enumerate(build_curve(q).affine_points) if T.evaluate(f, *P) == 0]
    assert intersection_degree(q, T, ZeroScheme(2, S)) == 2 + len(set(on) & set(S))
    with pytest.raises(ValueError):
        intersection_degree(q, Line((0, 0, 0)), ZeroScheme(0))


def test_residual_degrees():
    q = 3
    lc = classify_lines(q)
    L = _line(lc, lc.r_inf[0])
    Z = ZeroScheme(2, tuple(range(8)))
    R = residual(q, L, Z)
    assert R.degree == Z.degree - intersection_degree(q, L, Z)
    assert R.a == 1


@pytest.mark.parametrize("q", [2, 3])
def test_monotonicity(q):
    rng = np.random.default_rng(11 + q)
    n = q**3
    for _ in range(40):
        d = int(rng.integers(1, q + 1))
        a = int(rng.integers(0, d + 1))
        S = [int(s) for s in rng.choice(n, int(rng.integers(0, 3 * d + 2)), replace=False)]
        extra = next(int(p) for p in rng.permutation(n) if p not in S)
        h = h1_value(q, d, ZeroScheme(a, S))
        h_plus = h1_value(q, d, ZeroScheme(a, S + [extra]))
        assert h >= 0 and h <= h_plus <= h + 1
        if S:
            assert h1_value(q, d, ZeroScheme(a, S[:-1])) <= h


def test_kernel_identity_examples():
    assert kernel_and_h1(3, 2, 1, []) == (0, 0)
    lc = classify_lines(2)
    on = _affine_on(2, lc.r[0])
    assert len(on) == 3
    extra = next(j for j in range(8) if j not in on)
    for S in (on, on + [extra]):
        kd, h1 = kernel_and_h1(2, 1, 0, S)
        assert kd == h1 >= 1
        assert kernel_h1_identity(2, 1, 0, S)


def test_kernel_identity_when_E_has_h1():
    # a > d: the dual-word count equals h1(E + S) - h1(E)
    rng = np.random.default_rng(4)
    for _ in range(30):
        S = [int(s) for s in rng.choice(27, int(rng.integers(0, 7)), replace=False)]
        assert kernel_h1_identity(3, 1, 3, S)
        assert kernel_h1_identity(3, 2, 3, S)


@pytest.mark.parametrize("q", [2, 3])
def test_kernel_identity_random(q):
    rng = np.random.default_rng(100 + q)
    for _ in range(60):
        d = int(rng.integers(1, q + 1))
        a = int(rng.integers(0, d + 1))
        S = rng.choice(q**3, int(rng.integers(0, min(q**3, 3 * d + 3) + 1)), replace=False)
        kd, h1 = kernel_and_h1(q, d, a, S)
        assert kd == h1


def test_residual_containment():
    """If Res_T(Z) imposes independent conditions in degree d - 1, dual words on S live on S cap T."""
    q = 3
    lc = classify_lines(q)
    rng = np.random.default_rng(8)
    checked = 0
    for _ in range(80):
        d = int(rng.integers(1, q + 1))
        a = int(rng.integers(0, d + 1))
        i = int(rng.integers(len(lc.lines)))
        on = _affine_on(q, i)
        if not on:
            continue
        base = list(rng.choice(on, int(rng.integers(1, len(on) + 1)), replace=False))
        rest = [j for j in range(27) if j not in on]
        S = sorted(int(s) for s in base + list(rng.choice(rest, int(rng.integers(0, 3)), replace=False)))
        L = _line(lc, i)
        Z = ZeroScheme(a, S)
        if h1_value(q, d - 1, residual(q, L, Z)) != 0:
            continue
        C = code_da(q, d, a)
        inside = [s for s in S if s in on]
        assert dual_words_supported_within(C, S).kernel_dim == dual_words_supported_within(C, inside).kernel_dim
        checked += 1
    assert checked > 20


def _all_conics(f):
    seen = set()
    for v in itertools.product(range(f.order), repeat=6):
        if any(v):
            c = canonical(f, v)
            if c not in seen:
                seen.add(c)
                yield Conic(c)


def test_conic_search_matches_brute_force_q2():
    q = 2
    f = build_curve(q).field
    conics = list(_all_conics(f))
    rng = np.random.default_rng(2)
    for _ in range(25):
        a = int(rng.integers(0, 3))
        S = tuple(int(s) for s in rng.choice(8, int(rng.integers(3, 7)), replace=False))
        Z = ZeroScheme(a, S)
        best = max(intersection_degree(q, T, Z) for T in conics)
        for threshold in (best, best + 1):
            assert (find_conic(q, Z, threshold) is not None) == (best >= threshold)


def test_classifier_examples():
    q = 3
    f = build_curve(q).field
    lc = classify_lines(q)
    assert classify_h1_positive(q, 2, ZeroScheme(1, (0, 1))) == ("none", None)
    pts = _affine_on(q, lc.r[0])
    assert classify_h1_positive(q, 2, ZeroScheme(0, pts))[0] == "line"
    # a parabola with 2q = 6 affine points: degree 2d + 2 for d = 2
    (coef, six), = parabola_supports(q, 6)[:1]
    case, wit = classify_h1_positive(q, 2, ZeroScheme(0, six))
    assert case == "conic" and wit["type"] == "conic" and wit["smooth"]
    assert h1_value(q, 2, ZeroScheme(0, six)) > 0
    # two R lines meeting off the affine part: 8 points, degree 2d + 2 for d = 3
    for i, j in itertools.combinations(lc.r, 2):
        A, B = set(_affine_on(q, i)), set(_affine_on(q, j))
        if not A & B:
            break
    S = sorted(A | B)
    case, wit = classify_h1_positive(q, 3, ZeroScheme(0, S))
    assert case == "conic" and h1_value(q, 3, ZeroScheme(0, S)) > 0


@pytest.mark.parametrize("q", [2, 3])
def test_classifier_consistency(q):
    rng = np.random.default_rng(7 + q)
    lc = classify_lines(q)
    counts = {}
    for _ in range(120):
        d = int(rng.integers(1, q + 1))
        a = int(rng.integers(0, d + 1))
        # bias towards structured sets so every case shows up
        if rng.random() < 0.5:
            S = _affine_on(q, int(rng.choice(lc.r_inf + lc.r)))
            S = S + [int(s) for s in rng.choice(q**3, int(rng.integers(0, d + 2)), replace=False)]
        else:
            S = [int(s) for s in rng.choice(q**3, int(rng.integers(0, 3 * d)), replace=False)]
        Z = ZeroScheme(a, S)
        case, _ = classify_h1_positive(q, d, Z)
        counts[case] = counts.get(case, 0) + 1
        h1 = h1_value(q, d, Z)
        if case == "none":
            assert h1 == 0
        elif case in ("line", "conic"):
            assert h1 > 0
    assert counts.get("none") and counts.get("line")
