"""Improving subsets for ``C(d, a)^perp``.

Removing a set ``H`` of evaluation points lifts the dual distance above
``d + 1`` exactly when no line through ``P_inf`` keeps ``d + 1`` points of
``B \\ H``.  Those lines partition ``B`` into ``q^2`` blocks of ``q`` points,
so the smallest such ``H`` drops ``q - d`` points from every block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .codes import DEFAULT_BUDGETS, Budgets, dual_words_supported_within, scan_subsets
from .geometry import classify_lines
from .onepoint import code_da


def _check(q: int, d: int, a: int) -> None:
    if not 0 < d < q:
        raise ValueError(f"need 0 < d < q, got d={d}")
    if a == 0:
        raise ValueError("improvement needs a >= 1; a = 0 is not covered")
    if not 1 <= a <= d:
        raise ValueError(f"need 1 <= a <= d, got a={a}")


def rinf_blocks(q: int) -> list[tuple[int, ...]]:
    """Affine points on each line through ``P_inf`` other than the tangent."""
    lc = classify_lines(q)
    return [lc.affine_points_on(i, q**3) for i in lc.r_inf]


@dataclass(frozen=True)
class ImprovingSet:
    q: int
    d: int
    a: int
    H: frozenset[int]
    per_line_removal: dict

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "a": self.a,
            "H": sorted(self.H),
            "per_line_removal": {str(k): list(v) for k, v in sorted(self.per_line_removal.items())},
        }


def _as_set(q: int, H: Iterable[int]) -> frozenset[int]:
    H = frozenset(int(h) for h in H)
    if any(not 0 <= h < q**3 for h in H):
        raise ValueError("H must consist of affine point indices")
    return H


def heavy_lines(q: int, d: int, H: Iterable[int]) -> list[tuple[int, ...]]:
    """For each line through ``P_inf`` keeping ``>= d + 1`` points of ``B \\ H``, those points."""
    H = frozenset(H)
    out = []
    for block in rinf_blocks(q):
        kept = tuple(p for p in block if p not in H)
        if len(kept) >= d + 1:
            out.append(kept)
    return out


def is_improving(q: int, d: int, a: int, H: Iterable[int]) -> bool:
    _check(q, d, a)
    return not heavy_lines(q, d, _as_set(q, H))


def minimal_improving_set(q: int, d: int, a: int, strategy: str = "lex") -> ImprovingSet:
    _check(q, d, a)
    if strategy != "lex":
        raise ValueError(f"unknown strategy {strategy!r}")
    lc = classify_lines(q)
    removal = {}
    for i in lc.r_inf:
        removal[i] = tuple(sorted(lc.affine_points_on(i, q**3)))[: q - d]
    H = frozenset(p for pts in removal.values() for p in pts)
    return ImprovingSet(q, d, a, H, removal)


def improved_report(q: int, d: int, a: int, H: Iterable[int], budgets: Budgets = DEFAULT_BUDGETS) -> dict:
    """Dual distance of ``C(d, a, H)`` by support search up to weight ``d + 1``.

    ``dual_distance`` is exact when a word of weight ``<= d + 1`` exists;
    otherwise only the bound ``>= d + 2`` is established.
    """
    _check(q, d, a)
    H = _as_set(q, H)
    improving = is_improving(q, d, a, H)
    C = code_da(q, d, a, H)
    kept = [p for p in range(q**3) if p not in H]
    found = None
    for w in range(1, d + 2):
        hit = scan_subsets(C.field, C.generator, w, budgets=budgets, first_only=True)
        if len(hit):
            found = (w, [kept[int(i)] for i in hit[0]])
            break
    exact = found is not None
    bound = found[0] if exact else d + 2
    checks = {"at_least_d_plus_1": bound >= d + 1, "d_plus_1_iff_not_improving": (bound == d + 1) == (not improving)}
    witness = None
    if not improving:
        # the collinear points on a heavy line must carry a dual word of weight d + 1
        pts = heavy_lines(q, d, H)[0][: d + 1]
        pos = {p: i for i, p in enumerate(kept)}
        rep = dual_words_supported_within(C, [pos[p] for p in pts])
        witness = list(pts)
        checks["collinear_witness_is_support"] = rep.has_full_support_word
    return {
        "q": q,
        "d": d,
        "a": a,
        "H_size": len(H),
        "new_length": C.n,
        "dimension": C.k,
        "is_improving": improving,
        "dual_distance_bound": bound,
        "dual_distance_exact": exact,
        "lightest_support": found[1] if exact else None,
        "collinear_witness": witness,
        "checks": checks,
        "ok": all(checks.values()),
    }
