"""Slow, independent reference computations used by the tests.

Nothing here calls into kneadkit beyond the Word and SignedGraph containers,
so agreement with the package is a genuine cross-check.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cmp_to_key

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import eigs


def naive_cmp(x, y, signs):
    """-1/0/1 for two equal-length letter tuples by walking the sign product."""
    s = 1
    for a, b in zip(x, y):
        if a != b:
            return -1 if s * (a - b) < 0 else 1
        s *= signs[a]
    return 0


def naive_compare_periodic(u, v, signs):
    """u^inf vs v^inf over 4 * lcm letters, far beyond the Fine-Wilf bound."""
    n = 4 * math.lcm(len(u), len(v))
    return naive_cmp((u * n)[:n], (v * n)[:n], signs)


def brute_is_extremal(w):
    g = w.graph
    L = tuple(w.letters)
    if not L or L[0] != g.top:
        return False
    for a, b in zip(L, L[1:] + L[:1]):
        if (a, b) not in g.edges:
            return False
    return all(naive_compare_periodic(L[k:] + L[:k], L, g.signs) <= 0 for k in range(1, len(L)))


def brute_periodic_words(g, n):
    """All periodic words of length n, sorted by naive comparison of letter tuples."""
    out = []
    for tail in itertools.product(range(g.vertex_count), repeat=n - 1):
        L = (g.top,) + tail
        if all((a, b) in g.edges for a, b in zip(L, L[1:] + L[:1])):
            out.append(L)
    return sorted(out, key=cmp_to_key(lambda x, y: naive_cmp(x, y, g.signs)))


def brute_min_sequence(g, length=12):
    """Smallest path of the given length, by listing every path."""
    paths = [(v,) for v in range(g.vertex_count)]
    for _ in range(length - 1):
        paths = [p + (c,) for p in paths for c in range(g.vertex_count) if (p[-1], c) in g.edges]
    best = paths[0]
    for p in paths[1:]:
        if naive_cmp(p, best, g.signs) < 0:
            best = p
    return best


def faddeev_leverrier(m):
    """Characteristic polynomial (ascending coefficients) with exact rationals."""
    n = len(m)
    A = [[Fraction(int(x)) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = [[sum(A[i][t] * Mk[t][j] for t in range(n)) + (c if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    assert all(x.denominator == 1 for x in coeffs)
    return [int(x) for x in coeffs]


def _radius(A):
    k, lab = connected_components(A, directed=True, connection="strong")
    best = 0.0
    for comp in range(k):
        ii = np.flatnonzero(lab == comp)
        sub = A[ii][:, ii]
        if ii.size == 1:
            best = max(best, float(sub[0, 0]))
        elif ii.size <= 400:
            best = max(best, float(np.abs(np.linalg.eigvals(sub.toarray())).max()))
        else:
            vals = eigs(sub.astype(float), k=1, which="LM", tol=1e-14, return_eigenvectors=False)
            best = max(best, float(np.abs(vals).max()))
    return best


def block_growth_radius(w, n=14):
    """Growth rate of the n-block shift for sequences all of whose shifts sit below w^inf.

    Blocks are paths of length n none of whose suffixes exceeds the same-length
    prefix of w^inf; the radius of the overlap graph on (n-1)-blocks is the
    growth rate.  Exact once n exceeds twice the period.
    """
    g = w.graph
    signs = g.signs
    a = (tuple(w.letters) * (n // len(w) + 2))[:n]

    def fresh_ok(block):
        # only suffixes ending at the new letter need checking
        for s in range(len(block)):
            t = block[s:]
            if naive_cmp(t, a[: len(t)], signs) > 0:
                return False
        return True

    blocks = [(v,) for v in range(g.vertex_count) if fresh_ok((v,))]
    for _ in range(n - 1):
        blocks = [b + (c,) for b in blocks for c in g.succ[b[-1]] if fresh_ok(b + (c,))]
    idx = {}
    rows, cols = [], []
    for b in blocks:
        rows.append(idx.setdefault(b[:-1], len(idx)))
        cols.append(idx.setdefault(b[1:], len(idx)))
    A = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(idx), len(idx))).tocsr()
    return _radius(A)
