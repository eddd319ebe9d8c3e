from __future__ import annotations

import numpy as np
import pytest

from hermcodes.codes import dual_words_supported_within
from hermcodes.improve import (
    heavy_lines,
    improved_report,
    is_improving,
    minimal_improving_set,
    rinf_blocks,
)
from hermcodes.onepoint import code_da


def test_blocks_partition_affine_points():
    for q in (2, 3, 4, 5):
        blocks = rinf_blocks(q)
        assert len(blocks) == q * q and all(len(b) == q for b in blocks)
        assert sorted(p for b in blocks for p in b) == list(range(q**3))


def test_examples():
    assert is_improving(3, 2, 1, range(27))
    assert not is_improving(3, 2, 1, [])
    H = [b[0] for b in rinf_blocks(3)]
    assert len(H) == 9 and is_improving(3, 2, 1, H)


def test_range_errors():
    with pytest.raises(ValueError, match="a >= 1"):
        is_improving(3, 2, 0, [])
    with pytest.raises(ValueError):
        minimal_improving_set(3, 3, 1)
    with pytest.raises(ValueError):
        is_improving(3, 2, 1, [27])
    with pytest.raises(ValueError):
        minimal_improving_set(3, 2, 1, strategy="random")


@pytest.mark.parametrize("q,d,size", [(5, 2, 75), (3, 2, 9), (2, 1, 4), (4, 3, 16), (5, 4, 25)])
def test_minimal_sizes(q, d, size):
    S = minimal_improving_set(q, d, 1)
    assert len(S.H) == size == q * q * (q - d)
    assert q**3 - len(S.H) == q * q * d
    assert is_improving(q, d, 1, S.H)
    assert all(len(v) == q - d for v in S.per_line_removal.values())
    assert S.as_dict()["H"] == sorted(S.H)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_minimality(q):
    for d in range(1, q):
        H = minimal_improving_set(q, d, 1).H
        for h in H:
            assert not is_improving(q, d, 1, H - {h})


def test_report_q3_minimal():
    H = minimal_improving_set(3, 2, 1).H
    rep = improved_report(3, 2, 1, H)
    assert rep["ok"] and rep["H_size"] == 9 and rep["new_length"] == 18
    assert rep["dual_distance_bound"] == 4 and not rep["dual_distance_exact"]


def test_report_q3_empty_H():
    rep = improved_report(3, 2, 1, [])
    assert rep["ok"] and rep["dual_distance_bound"] == 3 and rep["dual_distance_exact"]
    assert rep["checks"]["collinear_witness_is_support"]


def test_report_q2():
    assert improved_report(2, 1, 1, [])["dual_distance_bound"] == 2
    H = minimal_improving_set(2, 1, 1).H
    rep = improved_report(2, 1, 1, H)
    assert rep["ok"] and rep["new_length"] == 4 and rep["dual_distance_bound"] == 3


def test_report_q5():
    H = minimal_improving_set(5, 2, 1).H
    rep = improved_report(5, 2, 1, H)
    assert rep["ok"] and rep["new_length"] == 50 and rep["dual_distance_bound"] == 4


def test_random_H_both_directions():
    rng = np.random.default_rng(6)
    seen = set()
    for _ in range(25):
        H = [int(h) for h in rng.choice(27, int(rng.integers(0, 14)), replace=False)]
        rep = improved_report(3, 2, 1, H)
        assert rep["ok"], rep
        seen.add(rep["is_improving"])
        # any heavy line contributes d + 1 collinear points carrying a dual word
        C = code_da(3, 2, 1, H)
        kept = [p for p in range(27) if p not in set(H)]
        for line in heavy_lines(3, 2, H):
            pos = [kept.index(p) for p in line[:3]]
            assert dual_words_supported_within(C, pos).has_full_support_word
    assert seen == {True, False}
