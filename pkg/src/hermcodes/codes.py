"""Linear codes over a finite field.

A :class:`LinearCode` is a full-rank generator matrix plus one label (a
projective point) per coordinate.  Besides the usual operations (dual,
puncturing, column scaling) the module answers *support* questions: which
codewords live on a given coordinate set, and whether one of them has
exactly that support.  Subset scans over coordinate sets run a compiled
depth-first elimination (falling back to batched numpy elimination) and can
be spread over worker processes; results never depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .gf import FieldSpec
from .linalg import (
    batch_kernel_profile,
    batch_rank,
    format_matrix,
    kernel,
    parse_matrix,
    rank,
    row_basis,
)

DEFAULT_MAX_CODEWORDS = 1 << 24
DEFAULT_MAX_SUBSETS = 1 << 26
_CHUNK = 20000


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured work budget."""


@dataclass(frozen=True)
class Budgets:
    max_codewords: int = DEFAULT_MAX_CODEWORDS
    max_subsets: int = DEFAULT_MAX_SUBSETS
    workers: int = 1

    @classmethod
    def from_env(cls, **overrides) -> Budgets:
        vals = {
            "max_codewords": int(os.environ.get("HERMCODES_MAX_CODEWORDS", DEFAULT_MAX_CODEWORDS)),
            "max_subsets": int(os.environ.get("HERMCODES_MAX_SUBSETS", DEFAULT_MAX_SUBSETS)),
            "workers": int(os.environ.get("HERMCODES_WORKERS", 1)),
        }
        vals.update({k: v for k, v in overrides.items() if v is not None})
        if min(vals.values()) < 1:
            raise ValueError("budgets and worker count must be positive")
        return cls(**vals)


DEFAULT_BUDGETS = Budgets()


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: FieldSpec
    generator: np.ndarray
    labels: tuple = dc_field(default=())

    def __post_init__(self):
        G = np.asarray(self.generator, dtype=np.int64)
        if G.ndim != 2:
            raise ValueError("generator must be a 2-D matrix")
        object.__setattr__(self, "generator", G)
        if self.labels:
            if len(self.labels) != G.shape[1]:
                raise ValueError("one label per coordinate required")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("coordinate labels must be distinct")
        if G.shape[0] and rank(self.field, G) != G.shape[0]:
            raise ValueError("generator matrix is not of full row rank")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, labels=()) -> LinearCode:
        """Code spanned by ``rows``; dependent rows are discarded."""
        rows = np.asarray(rows, dtype=np.int64)
        return cls(field, row_basis(field, rows), tuple(labels))

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @cached_property
    def parity_check(self) -> np.ndarray:
        """Generator matrix of the dual code."""
        if self.k == 0:
            return np.eye(self.n, dtype=np.int64)
        return kernel(self.field, self.generator)


def dual(C: LinearCode) -> LinearCode:
    D = LinearCode(C.field, C.parity_check, C.labels)
    D.__dict__["parity_check"] = C.generator
    return D


def puncture(C: LinearCode, H: Iterable[int]) -> LinearCode:
    """Delete the coordinates in ``H``."""
    H = set(int(h) for h in H)
    if not H.issubset(range(C.n)):
        raise ValueError("puncturing set contains invalid coordinates")
    keep = [j for j in range(C.n) if j not in H]
    if not keep:
        raise ValueError("cannot puncture every coordinate")
    labels = tuple(C.labels[j] for j in keep) if C.labels else ()
    return LinearCode.from_rows(C.field, C.generator[:, keep], labels)


def scale_columns(C: LinearCode, v: Sequence[int]) -> LinearCode:
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (C.n,):
        raise ValueError("scaling vector has the wrong length")
    if np.any(v == 0):
        raise ValueError("scaling vector must have nonzero entries")
    return LinearCode.from_rows(C.field, C.field.mul(C.generator, v[None, :]), C.labels)


# ---------------------------------------------------------------------------
# Supports
# ---------------------------------------------------------------------------


def full_support_combination(field: FieldSpec, K: np.ndarray, max_enum: int = 1 << 20) -> np.ndarray | None:
    """A vector in the row span of ``K`` with no zero entry, or ``None``.

    Greedy first: fold in basis rows one coordinate at a time, choosing a
    scalar that keeps every previously nonzero entry nonzero.  If that gets
    stuck (only possible when the field is not larger than the support) the
    span is scanned exhaustively.
    """
    K = np.asarray(K, dtype=np.int64)
    t, s = K.shape
    if t == 0:
        return None if s else np.zeros(0, dtype=np.int64)
    if not np.all((K != 0).any(axis=0)):
        return None
    Q = field.order
    v = K[0].copy()
    stuck = False
    for j in range(s):
        if v[j]:
            continue
        b = K[np.nonzero(K[:, j])[0][0]]
        both = (v != 0) & (b != 0)
        bad = set(int(c) for c in field.neg(field.div(v[both], b[both])))
        c = next((c for c in range(1, Q) if c not in bad), None)
        if c is None:
            stuck = True
            break
        v = field.add(v, field.mul(c, b))
    if not stuck:
        return v
    if Q**t > max_enum:
        raise BudgetExceeded(f"full-support search over a {t}-dimensional kernel in GF({Q})")
    for lead in range(t):
        rest = t - lead - 1
        for coeffs in product(range(Q), repeat=rest):
            w = K[lead].copy()
            for c, row in zip(coeffs, K[lead + 1 :]):
                if c:
                    w = field.add(w, field.mul(c, row))
            if np.all(w != 0):
                return w
    return None


@dataclass(frozen=True)
class SupportReport:
    support: tuple[int, ...]
    kernel_dim: int
    has_full_support_word: bool
    basis: np.ndarray = dc_field(repr=False, compare=False)
    witness: np.ndarray | None = dc_field(default=None, repr=False, compare=False)

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def dimension(self) -> int:
        return self.kernel_dim

    def as_dict(self) -> dict:
        return {
            "support": list(self.support),
            "weight": self.weight,
            "kernel_dim": self.kernel_dim,
            "has_full_support_word": self.has_full_support_word,
        }


def _support_report(field: FieldSpec, H: np.ndarray, S: tuple[int, ...], n: int) -> SupportReport:
    if not S:
        return SupportReport((), 0, False, np.zeros((0, n), dtype=np.int64))
    K = kernel(field, H[:, list(S)]) if H.shape[0] else np.eye(len(S), dtype=np.int64)
    basis = np.zeros((K.shape[0], n), dtype=np.int64)
    basis[:, list(S)] = K
    w = full_support_combination(field, K) if K.shape[0] else None
    witness = None
    if w is not None:
        witness = np.zeros(n, dtype=np.int64)
        witness[list(S)] = w
    return SupportReport(S, K.shape[0], witness is not None, basis, witness)


def words_supported_within(C: LinearCode, S: Iterable[int]) -> SupportReport:
    """The subcode of ``C`` of words vanishing outside ``S``."""
    S = tuple(sorted(set(int(s) for s in S)))
    if S and (S[0] < 0 or S[-1] >= C.n):
        raise ValueError("support outside the coordinate range")
    return _support_report(C.field, C.parity_check, S, C.n)


def dual_words_supported_within(C: LinearCode, S: Iterable[int]) -> SupportReport:
    """``words_supported_within(dual(C), S)`` computed from ``C`` directly."""
    S = tuple(sorted(set(int(s) for s in S)))
    return _support_report(C.field, C.generator, S, C.n)


# ---------------------------------------------------------------------------
# Subset scans
# ---------------------------------------------------------------------------


def _prefix_subsets(n: int, w: int, first: int) -> np.ndarray:
    rest = list(combinations(range(first + 1, n), w - 1))
    out = np.empty((len(rest), w), dtype=np.int64)
    out[:, 0] = first
    if w > 1 and rest:
        out[:, 1:] = np.array(rest, dtype=np.int64)
    return out


def _scan_prefix_numpy(args) -> np.ndarray:
    field, H, w, lo, hi, first_only = args
    n = H.shape[1]
    hits = []
    for first in range(lo, hi):
        subs = _prefix_subsets(n, w, first)
        for start in range(0, len(subs), _CHUNK):
            block = subs[start : start + _CHUNK]
            keep = batch_rank(field, np.transpose(H[:, block], (1, 0, 2))) < w
            hits.append(block[keep])
            if first_only and keep.any():
                return np.concatenate(hits)[:1]
    return np.concatenate(hits) if hits else np.zeros((0, w), dtype=np.int64)


def _scan_prefix_compiled(args) -> np.ndarray:
    from ._kernels import dependent_subsets_dfs

    field, H, w, lo, hi, first_only = args
    tables = (field._add_table, field._mul_table, field._inv, field._neg)
    cap = 1 if first_only else 4096
    while True:
        out = np.zeros((cap, w), dtype=np.int64)
        cnt = dependent_subsets_dfs(np.ascontiguousarray(H), w, *tables, lo, hi, first_only, out)
        if cnt <= cap:
            return out[:cnt]
        cap = cnt


def _compiled_available(field: FieldSpec) -> bool:
    if field._add_table is None:
        return False
    try:
        from . import _kernels  # noqa: F401
    except ImportError:  # pragma: no cover
        return False
    return True


@lru_cache(maxsize=4)
def _pool(workers: int) -> ProcessPoolExecutor:
    return ProcessPoolExecutor(max_workers=workers)


def map_ordered(func, jobs: list, workers: int = 1) -> list:
    """``list(map(func, jobs))``, optionally spread over worker processes."""
    if workers <= 1 or len(jobs) <= 1:
        return [func(j) for j in jobs]
    return list(_pool(workers).map(func, jobs))


def _split(n_first: int, workers: int) -> list[tuple[int, int]]:
    if workers <= 1:
        return [(0, n_first)]
    # interleaving would break lexicographic order, so use contiguous ranges
    # weighted towards small first indices, which own most subsets
    parts = min(n_first, 4 * workers)
    bounds = sorted(set(int(round(n_first * (1 - (1 - t / parts) ** 2))) for t in range(parts + 1)))
    return list(zip(bounds[:-1], bounds[1:]))


def scan_subsets(
    field: FieldSpec,
    H: np.ndarray,
    w: int,
    points: Sequence[int] | None = None,
    mode: str = "dependent",
    budgets: Budgets = DEFAULT_BUDGETS,
    first_only: bool = False,
    engine: str = "auto",
) -> np.ndarray:
    """All ``w``-subsets ``S`` of ``points`` whose columns ``H[:, S]`` are dependent.

    With ``mode="covered"`` only subsets whose kernel is nonzero at every
    coordinate are returned (necessary for a full-support word, and
    sufficient whenever the kernel is one-dimensional).  Rows of the result
    are sorted column indices in lexicographic order.  ``first_only`` stops
    at the first dependent subset.  ``engine`` selects the compiled
    depth-first scan or the vectorised numpy elimination.
    """
    H = np.asarray(H, dtype=np.int64)
    pts = np.arange(H.shape[1]) if points is None else np.asarray(points, dtype=np.int64)
    n = len(pts)
    if w < 1 or w > n:
        return np.zeros((0, max(w, 0)), dtype=np.int64)
    if comb(n, w) > budgets.max_subsets:
        raise BudgetExceeded(f"C({n},{w}) = {comb(n, w)} subsets exceeds budget {budgets.max_subsets}")
    Hp = H[:, pts] if H.shape[0] else np.zeros((0, n), dtype=np.int64)
    if engine == "auto":
        engine = "compiled" if _compiled_available(field) else "numpy"
    func = _scan_prefix_compiled if engine == "compiled" else _scan_prefix_numpy
    jobs = [(field, Hp, w, lo, hi, first_only) for lo, hi in _split(n - w + 1, budgets.workers)]
    if first_only:
        # run the ranges in waves so a hit in an early range ends the scan
        parts = []
        for start in range(0, len(jobs), budgets.workers):
            parts.extend(map_ordered(func, jobs[start : start + budgets.workers], budgets.workers))
            if any(len(p) for p in parts):
                break
    else:
        parts = map_ordered(func, jobs, budgets.workers)
    found = np.concatenate(parts) if parts else np.zeros((0, w), dtype=np.int64)
    if first_only:
        found = found[:1]
    if mode == "covered" and len(found):
        keep = []
        for start in range(0, len(found), _CHUNK):
            block = found[start : start + _CHUNK]
            kd, cov = batch_kernel_profile(field, np.transpose(Hp[:, block], (1, 0, 2)))
            keep.append((kd > 0) & cov.all(axis=1))
        found = found[np.concatenate(keep)]
    return pts[found]


def genuine_supports(
    C: LinearCode, w: int, points: Sequence[int] | None = None, budgets: Budgets = DEFAULT_BUDGETS
) -> list[tuple[int, ...]]:
    """All ``w``-subsets that are the exact support of some word of ``dual(C)``."""
    cands = scan_subsets(C.field, C.generator, w, points, mode="covered", budgets=budgets)
    out = []
    for S in cands:
        rep = dual_words_supported_within(C, S)
        if rep.has_full_support_word:
            out.append(tuple(int(s) for s in S))
    return out


# ---------------------------------------------------------------------------
# Distance and weights
# ---------------------------------------------------------------------------


def _projective_words(C: LinearCode, inner_limit: int = 1 << 15):
    """Yield blocks of codewords, one per projective point of the message space."""
    f, G, k = C.field, C.generator, C.k
    Q = f.order
    el = np.arange(Q, dtype=np.int64)
    for lead in range(k):
        pos = list(range(lead + 1, k))
        n_inner = 0
        size = 1
        while n_inner < len(pos) and size * Q <= inner_limit:
            size *= Q
            n_inner += 1
        outer, inner = pos[: len(pos) - n_inner], pos[len(pos) - n_inner :]
        base_inner = np.zeros((1, C.n), dtype=np.int64)
        for t in inner:
            base_inner = f.add(base_inner[:, None, :], f.mul(el[None, :, None], G[t][None, None, :])).reshape(-1, C.n)
        for coeffs in product(range(Q), repeat=len(outer)):
            v = G[lead].copy()
            for c, t in zip(coeffs, outer):
                if c:
                    v = f.add(v, f.mul(c, G[t]))
            yield f.add(base_inner, v[None, :])


def codeword_count(C: LinearCode) -> int:
    return C.field.order ** C.k


def weight_distribution(C: LinearCode, budgets: Budgets = DEFAULT_BUDGETS) -> list[int]:
    """``[A_0, ..., A_n]`` by exhaustive enumeration."""
    if codeword_count(C) > budgets.max_codewords:
        raise BudgetExceeded(f"{codeword_count(C)} codewords exceeds budget {budgets.max_codewords}")
    A = np.zeros(C.n + 1, dtype=np.int64)
    A[0] = 1
    for block in _projective_words(C):
        A += np.bincount((block != 0).sum(axis=1), minlength=C.n + 1) * (C.field.order - 1)
    return [int(a) for a in A]


@dataclass(frozen=True)
class DistanceReport:
    n: int
    k: int
    d: int | None
    strategy: str
    bound: int

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d if self.d is not None else f">{self.bound}",
                "strategy": self.strategy, "bound": self.bound}


def min_distance(
    C: LinearCode,
    strategy: str = "exhaustive",
    bound: int | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> DistanceReport:
    """Minimum distance of ``C``.

    ``exhaustive`` enumerates every codeword (up to scalars).  ``support_search``
    looks for the smallest dependent set of columns of the parity-check
    matrix, ascending in size and stopping at the first hit.  ``d`` is
    ``None`` when the distance exceeds ``bound`` (or the code is zero).
    """
    bound = C.n if bound is None else bound
    if C.k == 0:
        return DistanceReport(C.n, 0, None, strategy, bound)
    if strategy == "exhaustive":
        if codeword_count(C) > budgets.max_codewords:
            raise BudgetExceeded(f"{codeword_count(C)} codewords exceeds budget {budgets.max_codewords}")
        best = C.n
        for block in _projective_words(C):
            best = min(best, int((block != 0).sum(axis=1).min()))
        d = best if best <= bound else None
        return DistanceReport(C.n, C.k, d, strategy, bound)
    if strategy == "support_search":
        H = C.parity_check
        total = sum(comb(C.n, w) for w in range(1, min(bound, C.n) + 1))
        if total > budgets.max_subsets:
            raise BudgetExceeded(f"{total} subsets up to weight {bound} exceeds budget {budgets.max_subsets}")
        for w in range(1, min(bound, C.n) + 1):
            if len(scan_subsets(C.field, H, w, budgets=budgets, first_only=True)):
                return DistanceReport(C.n, C.k, w, strategy, bound)
        return DistanceReport(C.n, C.k, None, strategy, bound)
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def format_code(C: LinearCode) -> str:
    text = format_matrix(C.field, C.generator)
    if C.labels:
        text += f"labels {len(C.labels)}\n"
        text += "".join(" ".join(str(int(c)) for c in P) + "\n" for P in C.labels)
    return text


def parse_code(text: str) -> LinearCode:
    lines = text.splitlines()
    rows = int(lines[0].split()[0])
    field, G = parse_matrix("\n".join(lines[: rows + 1]))
    labels: tuple = ()
    rest = [ln for ln in lines[rows + 1 :] if ln.strip()]
    if rest:
        head = rest[0].split()
        if head[0] != "labels":
            raise ValueError("expected a label block")
        labels = tuple(tuple(int(t) for t in ln.split()) for ln in rest[1 : 1 + int(head[1])])
    return LinearCode(field, G, labels)


def write_code(path: str | Path, C: LinearCode) -> None:
    Path(path).write_text(format_code(C))


def read_code(path: str | Path) -> LinearCode:
    return parse_code(Path(path).read_text())
