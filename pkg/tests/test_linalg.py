from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermcodes.gf import build_field
from hermcodes.linalg import (
    DimensionError,
    batch_kernel_profile,
    batch_rref,
    format_matrix,
    kernel,
    matmul,
    parse_matrix,
    rank,
    read_matrix,
    rref,
    rref_rank_kernel,
    row_space_equal,
    write_matrix,
)

F4 = build_field(2, 2)
F9 = build_field(3, 2)


def test_identity_and_zero():
    R, r, K = rref_rank_kernel(F9, np.eye(4, dtype=np.int64))
    assert r == 4 and K.shape == (0, 4)
    R, r, K = rref_rank_kernel(F9, np.zeros((3, 5), dtype=np.int64))
    assert r == 0 and row_space_equal(F9, K, np.eye(5, dtype=np.int64))


def test_proportional_rows_over_f4():
    w = 2
    M = np.array([[1, w], [w, int(F4.mul(w, w))]])
    _, r, K = rref_rank_kernel(F4, M)
    assert r == 1 and K.shape[0] == 1
    assert not matmul(F4, M, K.T).any()


def test_empty_columns_rejected():
    with pytest.raises(DimensionError):
        rref_rank_kernel(F4, np.zeros((2, 0), dtype=np.int64))


def test_row_space_examples():
    A = np.array([[1, 2, 0], [0, 1, 1]])
    assert row_space_equal(F9, A, A[::-1])
    B = A.copy()
    B[0] = F9.mul(B[0], 5)
    assert row_space_equal(F9, A, B)
    assert not row_space_equal(F9, np.array([[1, 0]]), np.array([[0, 1]]))


def _random(F, rng, r, c, density=0.7):
    M = rng.integers(0, F.order, size=(r, c))
    M[rng.random((r, c)) > density] = 0
    return M


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from([(2, 2), (3, 2), (2, 4), (5, 2)]))
def test_rref_properties(seed, pk):
    F = build_field(*pk)
    rng = np.random.default_rng(seed)
    M = _random(F, rng, int(rng.integers(1, 7)), int(rng.integers(1, 9)))
    R, piv = rref(F, M)
    r = len(piv)
    assert piv == sorted(piv) and len(set(piv)) == r
    assert rank(F, R) == r == rank(F, M.T)
    K = kernel(F, M)
    assert r + K.shape[0] == M.shape[1]
    assert not matmul(F, M, K.T).any()
    assert K.shape[0] == 0 or rank(F, K) == K.shape[0]
    # pivot columns of R are unit vectors
    for i, j in enumerate(piv):
        col = np.zeros(R.shape[0], dtype=np.int64)
        col[i] = 1
        assert np.array_equal(R[:, j], col)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31))
def test_batch_matches_single(seed):
    rng = np.random.default_rng(seed)
    F = F9
    mats = np.stack([_random(F, rng, 4, 5, 0.5) for _ in range(25)])
    R, rk, _ = batch_rref(F, mats)
    kd, cov = batch_kernel_profile(F, mats)
    for i, M in enumerate(mats):
        Rs, piv = rref(F, M)
        assert rk[i] == len(piv)
        assert np.array_equal(R[i], Rs)
        K = kernel(F, M)
        assert kd[i] == K.shape[0]
        assert np.array_equal(cov[i], (K != 0).any(axis=0))


def test_text_round_trip(tmp_path):
    M = np.array([[0, 1, 15], [3, 4, 5]])
    text = format_matrix(build_field(2, 4), M)
    assert text.splitlines()[0] == "2 3 2 4"
    F, M2 = parse_matrix(text)
    assert F.order == 16 and np.array_equal(M, M2)
    path = tmp_path / "m.txt"
    write_matrix(path, F, M)
    assert path.read_text() == text
    assert np.array_equal(read_matrix(path)[1], M)
