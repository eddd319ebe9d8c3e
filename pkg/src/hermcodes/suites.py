"""Verification suites shared by the command line and the test-suite.

Every suite returns a JSON-ready dict with an ``ok`` flag.  Reports never
mention the worker count, so reruns with different parallelism compare
byte for byte.
"""

from __future__ import annotations

import numpy as np

from .codes import DEFAULT_BUDGETS, Budgets, BudgetExceeded, dual, map_ordered, min_distance
from .cohomology import ZeroScheme, classify_h1_positive, h1_value, kernel_and_h1
from .geometry import build_curve, classify_lines, contact_order, Line, parabola_census
from .linalg import row_space_equal
from .onepoint import build_code, build_code_projective, designed_distance, dual_index, m_to_da, max_m, phase


def table1(q: int, budgets: Budgets = DEFAULT_BUDGETS, ms=None) -> dict:
    """Computed minimum distance of ``C_m`` against the designed value."""
    rows = []
    for m in ms if ms is not None else range(1, max_m(q) + 1):
        C = build_code(q=q, m=m)
        want = designed_distance(q, m)
        row = {"m": m, "phase": phase(q, m), "k": C.k, "designed": want}
        try:
            if C.field.order ** C.k <= budgets.max_codewords:
                rep = min_distance(C, "exhaustive", budgets=budgets)
            else:
                rep = min_distance(C, "support_search", bound=want, budgets=budgets)
            row.update(strategy=rep.strategy, computed=rep.d, status="match" if rep.d == want else "mismatch")
        except BudgetExceeded:
            row.update(strategy=None, computed=None, status="budget")
        rows.append(row)
    covered = sorted({r["phase"] for r in rows if r["status"] == "match"})
    return {
        "suite": "table1",
        "q": q,
        "rows": rows,
        "phases_covered": covered,
        "budget_limited": [r["m"] for r in rows if r["status"] == "budget"],
        "ok": all(r["status"] != "mismatch" for r in rows),
    }


def lines(q: int) -> dict:
    """Every line is a tangent (one rational point, contact ``q + 1``) or meets the curve in ``q + 1`` points."""
    curve = build_curve(q)
    lc = classify_lines(q)
    tangents = set(lc.tangents)
    bad = []
    profile = {}
    for i, pts in enumerate(lc.profiles):
        profile[len(pts)] = profile.get(len(pts), 0) + 1
        if i in tangents:
            P = curve.all_points[pts[0]] if len(pts) == 1 else None
            if P is None or contact_order(curve, Line(tuple(int(t) for t in lc.lines[i])), P) != q + 1:
                bad.append(i)
        elif len(pts) != q + 1:
            bad.append(i)
    counts = {"lines": len(lc.lines), "tangent": len(tangents), "r_inf": len(lc.r_inf), "r": len(lc.r)}
    expected = {"lines": q**4 + q**2 + 1, "tangent": q**3 + 1, "r_inf": q**2, "r": q**4 - q**3}
    return {
        "suite": "lines",
        "q": q,
        "counts": counts,
        "expected": expected,
        "points_per_line": {str(k): v for k, v in sorted(profile.items())},
        "bad_lines": [[int(t) for t in lc.lines[i]] for i in bad[:10]],
        "ok": not bad and counts == expected,
    }


def parabolas(q: int) -> dict:
    census = parabola_census(q)
    top = 2 * q if q % 2 else 2 * q - 1
    over = {h: c for h, c in census.items() if h > top}
    report = {
        "suite": "parabolas",
        "q": q,
        "census": {str(h): c for h, c in sorted(census.items())},
        "max_points": top,
        "ok": not over and sum(census.values()) == (q * q - 1) * q**4,
    }
    if q % 2:
        expected = q * q * (q + 1) * (q - 1) // 2
        report["expected_at_2q"] = expected
        report["ok"] = report["ok"] and census.get(2 * q, 0) == expected
    return report


def duality(q: int) -> dict:
    bad = []
    for m in range(1, max_m(q) + 1):
        C = build_code(q=q, m=m)
        if not row_space_equal(C.field, dual(C).generator, build_code(q=q, m=dual_index(q, m)).generator):
            bad.append(m)
    return {"suite": "duality", "q": q, "checked": max_m(q), "mismatches": bad, "ok": not bad}


def isometry(q: int) -> dict:
    bad = []
    for m in range(1, q * (q + 1) + 1):
        d, a = m_to_da(q, m)
        C = build_code(q=q, m=m)
        P = build_code_projective(q, d, a)
        if not row_space_equal(C.field, C.generator, P.generator):
            bad.append(m)
    return {"suite": "isometry", "q": q, "checked": q * (q + 1), "mismatches": bad, "ok": not bad}


def oracle_draws(q: int, samples: int, seed: int) -> list[tuple[int, int, tuple[int, ...]]]:
    """Seed-fixed ``(d, a, S)`` draws with ``1 <= d <= q`` and ``0 <= a <= d``."""
    rng = np.random.default_rng([seed, q])
    n = q**3
    out = []
    for _ in range(samples):
        d = int(rng.integers(1, q + 1))
        a = int(rng.integers(0, d + 1))
        w = int(rng.integers(0, min(n, 3 * d + 3) + 1))
        out.append((d, a, tuple(sorted(int(s) for s in rng.choice(n, w, replace=False)))))
    return out


def _oracle_job(args):
    q, draws = args
    out = []
    for d, a, S in draws:
        kd, h1 = kernel_and_h1(q, d, a, S)
        Z = ZeroScheme(a, S)
        case, _ = classify_h1_positive(q, d, Z)
        h1z = h1_value(q, d, Z)
        consistent = case == "unresolved" or ((case == "none") == (h1z == 0))
        out.append({"d": d, "a": a, "S": list(S), "kernel_dim": kd, "h1": h1, "case": case, "consistent": consistent})
    return out


def oracle(q: int, samples: int = 200, seed: int = 0, budgets: Budgets = DEFAULT_BUDGETS) -> dict:
    draws = oracle_draws(q, samples, seed)
    step = max(1, -(-len(draws) // max(1, budgets.workers)))
    jobs = [(q, draws[i : i + step]) for i in range(0, len(draws), step)]
    rows = [r for part in map_ordered(_oracle_job, jobs, budgets.workers) for r in part]
    mism = [r for r in rows if r["kernel_dim"] != r["h1"]]
    incons = [r for r in rows if not r["consistent"]]
    cases = {}
    for r in rows:
        cases[r["case"]] = cases.get(r["case"], 0) + 1
    return {
        "suite": "oracle",
        "q": q,
        "seed": seed,
        "samples": samples,
        "h1_positive": sum(r["h1"] > 0 for r in rows),
        "classifier_cases": dict(sorted(cases.items())),
        "mismatches": mism[:10],
        "classifier_inconsistent": incons[:10],
        "ok": not mism and not incons,
    }


SUITES = ("table1", "lines", "parabolas", "duality", "isometry", "oracle", "erratum")
