"""Dense exact linear algebra over a :class:`~hermcodes.gf.FieldSpec`.

Matrices are 2-D numpy integer arrays of element indices; the field is always
passed alongside.  Because the arithmetic is exact there are no tolerances
anywhere in this module.

:func:`batch_rref` reduces a whole stack of small matrices at once and is the
workhorse of every subset scan in the package.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .gf import FieldSpec, build_field


class DimensionError(ValueError):
    pass


def as_matrix(M, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1 and rows == 0:
        A = A.reshape(0, cols or 0)
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {A.shape}")
    return A


def rref(field: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns.

    Pivots are chosen as the first nonzero entry at or below the current row,
    scanning columns left to right.
    """
    R = as_matrix(M).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for j in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, j])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = field.mul(R[r], field.inv(R[r, j]))
        f = R[:, j].copy()
        f[r] = 0
        nzr = np.nonzero(f)[0]
        if nzr.size:
            R[nzr] = field.sub(R[nzr], field.mul(f[nzr, None], R[r][None, :]))
        pivots.append(j)
        r += 1
    return R, pivots


def rank(field: FieldSpec, M) -> int:
    return len(rref(field, M)[1])


def kernel_from_rref(field: FieldSpec, R: np.ndarray, pivots: list[int]) -> np.ndarray:
    cols = R.shape[1]
    free = [j for j in range(cols) if j not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, pc in enumerate(pivots):
            K[t, pc] = field.neg(R[i, f])
    return K


def rref_rank_kernel(field: FieldSpec, M) -> tuple[np.ndarray, int, np.ndarray]:
    """``(R, rank, K)`` where the rows of ``K`` span ``{v : M v^T = 0}``."""
    A = as_matrix(M)
    if A.shape[1] == 0:
        raise DimensionError("matrix has no columns")
    R, piv = rref(field, A)
    return R, len(piv), kernel_from_rref(field, R, piv)


def kernel(field: FieldSpec, M) -> np.ndarray:
    A = as_matrix(M)
    R, piv = rref(field, A)
    return kernel_from_rref(field, R, piv)


def row_basis(field: FieldSpec, M) -> np.ndarray:
    """The nonzero rows of ``rref(M)``."""
    R, piv = rref(field, M)
    return R[: len(piv)]


def matmul(field: FieldSpec, A, B) -> np.ndarray:
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        out = field.add(out, field.mul(A[:, t, None], B[None, t, :]))
    return out


def row_space_equal(field: FieldSpec, A, B) -> bool:
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape[1] != B.shape[1]:
        raise DimensionError("row spaces live in different ambient dimensions")
    RA = row_basis(field, A)
    RB = row_basis(field, B)
    return RA.shape == RB.shape and bool(np.array_equal(RA, RB))


# ---------------------------------------------------------------------------
# Batched elimination
# ---------------------------------------------------------------------------


def batch_rref(field: FieldSpec, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row-reduce a stack of matrices of shape ``(N, r, c)``.

    Returns ``(R, rank, pivot_row)`` where ``pivot_row[n, j]`` is the row
    holding the pivot of column ``j`` in matrix ``n`` (``-1`` for free columns).
    Uses the same pivoting rule as :func:`rref`, so ``R[n]`` equals
    ``rref(mats[n])`` exactly.
    """
    A = np.array(mats, dtype=np.int64, copy=True)
    N, r, c = A.shape
    rank = np.zeros(N, dtype=np.int64)
    pivot_row = np.full((N, c), -1, dtype=np.int64)
    if r == 0 or N == 0:
        return A, rank, pivot_row
    rows = np.arange(r)
    for j in range(c):
        col = A[:, :, j]
        cand = (col != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        piv = cand[idx].argmax(axis=1)
        rk = rank[idx]
        swap = piv != rk
        if swap.any():
            si, sp, sr = idx[swap], piv[swap], rk[swap]
            tmp = A[si, sp].copy()
            A[si, sp] = A[si, sr]
            A[si, sr] = tmp
        sub = A[idx]
        prow = sub[np.arange(idx.size), rk]
        prow = field.mul(prow, field.inv(prow[:, j])[:, None])
        f = sub[:, :, j].copy()
        f[np.arange(idx.size), rk] = 0
        sub = field.sub(sub, field.mul(f[:, :, None], prow[:, None, :]))
        sub[np.arange(idx.size), rk] = prow
        A[idx] = sub
        pivot_row[idx, j] = rk
        rank[idx] += 1
    return A, rank, pivot_row


def batch_rank(field: FieldSpec, mats: np.ndarray) -> np.ndarray:
    return batch_rref(field, mats)[1]


def batch_kernel_profile(field: FieldSpec, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Kernel dimension and per-column kernel coverage for a matrix stack.

    ``covered[n, j]`` is true iff some kernel vector of ``mats[n]`` is nonzero
    at coordinate ``j``.
    """
    R, rk, prow = batch_rref(field, mats)
    N, r, c = R.shape
    free = prow < 0
    if r == 0:
        return np.full(N, c, dtype=np.int64), free
    nz_free = ((R != 0) & free[:, None, :]).any(axis=2)
    safe = np.where(free, 0, prow)
    covered = free | np.take_along_axis(nz_free, safe, axis=1)
    return c - rk, covered


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def format_matrix(field: FieldSpec, M) -> str:
    A = as_matrix(M)
    lines = [f"{A.shape[0]} {A.shape[1]} {field.p} {field.k}"]
    lines += [" ".join(str(int(v)) for v in row) for row in A]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple[FieldSpec, np.ndarray]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    rows, cols, p, k = (int(t) for t in lines[0].split())
    field = build_field(p, k)
    body = lines[1 : 1 + rows]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    M = np.zeros((rows, cols), dtype=np.int64)
    for i, ln in enumerate(body):
        vals = [int(t) for t in ln.split()]
        if len(vals) != cols:
            raise ValueError(f"row {i} has {len(vals)} entries, expected {cols}")
        M[i] = vals
    if M.size and (M.min() < 0 or M.max() >= field.order):
        raise ValueError("matrix entry outside the field")
    return field, M


def write_matrix(path: str | Path, field: FieldSpec, M) -> None:
    Path(path).write_text(format_matrix(field, M))


def read_matrix(path: str | Path) -> tuple[FieldSpec, np.ndarray]:
    return parse_matrix(Path(path).read_text())
