"""Compiled depth-first subset scan.

Walks the ``w``-subsets of the columns of ``H`` in lexicographic order while
keeping the echelon form of the current prefix, so each subset costs one
column reduction instead of a full elimination.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def dependent_subsets_dfs(H, w, addt, mult, invt, negt, lo, hi, first_only, out):
    """Fill ``out`` with the ``w``-subsets (first index in ``[lo, hi)``) whose
    columns are linearly dependent; return how many exist (may exceed
    ``len(out)``, in which case only the first ones are stored)."""
    r, n = H.shape
    count = 0
    cap = out.shape[0]
    vec = np.zeros((w, r), dtype=np.int64)
    piv = np.zeros(w, dtype=np.int64)
    dep = np.zeros(w, dtype=np.bool_)
    idx = np.zeros(w, dtype=np.int64)
    v = np.zeros(r, dtype=np.int64)
    level = 0
    idx[0] = lo - 1
    while level >= 0:
        idx[level] += 1
        if idx[level] > n - (w - level) or (level == 0 and idx[0] >= hi):
            level -= 1
            continue
        c = idx[level]
        if level > 0 and dep[level - 1]:
            dependent = True
        else:
            for i in range(r):
                v[i] = H[i, c]
            for b in range(level):
                coef = v[piv[b]]
                if coef != 0:
                    nc = negt[coef]
                    for i in range(r):
                        if vec[b, i] != 0:
                            v[i] = addt[v[i], mult[nc, vec[b, i]]]
            p = -1
            for i in range(r):
                if v[i] != 0:
                    p = i
                    break
            if p < 0:
                dependent = True
            else:
                dependent = False
                s = invt[v[p]]
                for i in range(r):
                    vec[level, i] = mult[s, v[i]]
                piv[level] = p
        dep[level] = dependent
        if level == w - 1:
            if dependent:
                if count < cap:
                    for t in range(w):
                        out[count, t] = idx[t]
                count += 1
                if first_only:
                    return count
        else:
            level += 1
            idx[level] = idx[level - 1]
    return count
