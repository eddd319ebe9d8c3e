from __future__ import annotations

import pytest

from hermcodes.codes import dual_words_supported_within
from hermcodes.geometry import classify_lines
from hermcodes.onepoint import code_da
from hermcodes.smallwords import classify_support, in_range, line_candidate_sets, soundness_sweep


def _on(q, i):
    return list(classify_lines(q).affine_points_on(i, q**3))


def _genuine(q, d, a, S):
    return dual_words_supported_within(code_da(q, d, a), S).has_full_support_word


def test_case_a_q4():
    lc = classify_lines(4)
    S = _on(4, lc.r_inf[0])[:3]
    assert classify_support(4, 2, 1, S).tag == "a"
    assert _genuine(4, 2, 1, S)


def test_case_b_q4():
    lc = classify_lines(4)
    S = _on(4, lc.r[0])
    assert len(S) == 5
    t = classify_support(4, 3, 0, S)
    assert t.tag == "b" and t.witness["line"] == [int(v) for v in lc.lines[lc.r[0]]]
    assert _genuine(4, 3, 0, S)


def test_case_d_q4():
    lc = classify_lines(4)
    S = _on(4, lc.r_inf[0])[:3] + _on(4, lc.r_inf[1])[:3]
    t = classify_support(4, 3, 2, S)
    assert t.tag == "d" and len(t.witness["lines"]) == 2
    assert _genuine(4, 3, 2, S)


def test_two_full_vertical_lines_q4():
    # 8 points on two lines through P_inf with a = 0: a genuine support of
    # weight 2d + 2 that the literal weight bullets of case d do not list
    lc = classify_lines(4)
    S = _on(4, lc.r_inf[0]) + _on(4, lc.r_inf[1])
    assert _genuine(4, 3, 0, S)
    t = classify_support(4, 3, 0, S)
    assert t.tag == "unclassified"
    assert set(t.witness) == {"relaxed_d"}


def test_outside_range_and_errors():
    assert classify_support(3, 2, 0, [0, 1]).tag == "outside_range"
    assert not in_range(2, 0, 6) and in_range(2, 0, 5) and in_range(1, 1, 2)
    with pytest.raises(ValueError):
        classify_support(3, 3, 0, [0])
    with pytest.raises(ValueError):
        classify_support(3, 1, 2, [0])
    with pytest.raises(ValueError):
        classify_support(3, 2, 0, [27])


def test_line_candidates():
    # q = 3, d = 2: R_inf lines give C(3,3) sets each, R lines C(4,4)
    c = line_candidate_sets(3, 2, 1, 3)
    assert len(c) == 9 and all(t == "a" for t, _ in c)
    c = line_candidate_sets(3, 2, 0, 4)
    assert len(c) == 54 and {t for t, _ in c} == {"b"}


def test_sweep_d2_a0_weight4_all_b():
    rep = soundness_sweep(3, 2, 0, [4])
    assert rep["ok"] and rep["histogram"] == {"b": 54}


def test_sweep_d2_a1():
    rep = soundness_sweep(3, 2, 1, [3, 4])
    assert rep["ok"]
    assert rep["per_weight"]["3"]["tags"] == {"a": 9}
    assert not rep["unclassified"] and rep["converse"]["checked"] > 0


@pytest.mark.parametrize("d,a", [(1, 0), (1, 1)])
def test_sweep_q3_degree1(d, a):
    rep = soundness_sweep(3, d, a)
    assert rep["ok"], rep["unclassified"][:3]


@pytest.mark.parametrize("d,a", [(1, 0), (1, 1)])
def test_sweep_q2(d, a):
    rep = soundness_sweep(2, d, a)
    assert rep["ok"]
    assert sum(v["genuine"] for v in rep["per_weight"].values()) > 0
