"""Vectorised numpy versions of the hot kernels.

Every function here has a loop-style twin in ``_kernels_numba`` with the
same signature and semantics; ``_backend`` picks one of the two.
"""
import numpy as np


def _prefix_signs(word, sgn):
    # ps[i] = product of signs of word[:i]
    ps = np.ones(len(word) + 1, dtype=np.int64)
    ps[1:] = np.cumprod(sgn[word])
    return ps


def shift_witness(word, sgn):
    """Smallest k in [1, n) with rotation k of ``word`` strictly above it, else -1."""
    n = word.shape[0]
    if n < 2:
        return -1
    idx = (np.arange(1, n)[:, None] + np.arange(n)[None, :]) % n
    rot = word[idx]
    diff = rot != word[None, :]
    has = diff.any(axis=1)
    first = diff.argmax(axis=1)
    ps = _prefix_signs(word, sgn)
    rows = np.arange(n - 1)
    delta = rot[rows, first] - word[first]
    greater = has & (ps[first] * delta > 0)
    hits = np.flatnonzero(greater)
    return int(hits[0]) + 1 if hits.size else -1


def dominance_witness(word, sgn, top):
    """Smallest k in [2, n] with Suff_k(word+top) not strictly below Pre_k(word), else -1."""
    n = word.shape[0]
    if n < 2:
        return -1
    x = np.empty(n + 1, dtype=np.int64)
    x[:n] = word
    x[n] = top
    ks = np.arange(2, n + 1)
    cols = np.arange(n)
    starts = n + 1 - ks
    pos = starts[:, None] + cols[None, :]
    mask = cols[None, :] < ks[:, None]
    suf = x[np.minimum(pos, n)]
    diff = (suf != word[None, :]) & mask
    has = diff.any(axis=1)
    first = diff.argmax(axis=1)
    ps = _prefix_signs(word, sgn)
    rows = np.arange(ks.size)
    delta = suf[rows, first] - word[first]
    less = has & (ps[first] * delta < 0)
    bad = np.flatnonzero(~less)
    return int(ks[bad[0]]) if bad.size else -1


def charpoly_mod(a, p):
    """Characteristic polynomial of ``a`` modulo prime ``p`` (ascending coefficients).

    Hessenberg reduction by modular similarity transforms followed by the
    usual three-term-free Hessenberg recurrence.
    """
    n = a.shape[0]
    h = np.mod(a.astype(np.int64), p)
    for m in range(1, n - 1):
        col = h[m:, m - 1]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = m + int(nz[0])
        if piv != m:
            h[[piv, m], :] = h[[m, piv], :]
            h[:, [piv, m]] = h[:, [m, piv]]
        inv = pow(int(h[m, m - 1]), p - 2, p)
        for i in range(m + 1, n):
            u = (int(h[i, m - 1]) * inv) % p
            if u == 0:
                continue
            h[i, :] = (h[i, :] - u * h[m, :]) % p
            h[:, m] = (h[:, m] + u * h[:, i]) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - (h[k - 1, k - 1] * prev) % p) % p
        prod = 1
        for i in range(1, k):
            prod = (prod * int(h[k - i, k - i - 1])) % p
            if prod == 0:
                break
            coef = (int(h[k - i - 1, k - 1]) * prod) % p
            if coef:
                cur = (cur - (coef * polys[k - i - 1]) % p) % p
        polys[k] = cur
    return polys[n]


def _horner(coeffs, z):
    d = coeffs.shape[0] - 1
    pv = np.full(z.shape, coeffs[d], dtype=np.complex128)
    dv = np.zeros(z.shape, dtype=np.complex128)
    for k in range(d - 1, -1, -1):
        dv = dv * z + pv
        pv = pv * z + coeffs[k]
    return pv, dv


def aberth(coeffs, z0, maxiter, tol):
    """Aberth-Ehrlich simultaneous iteration (Jacobi sweep).

    Returns the root estimates and the number of sweeps used; a sweep count
    equal to ``maxiter`` means the stopping rule was never met.
    """
    z = z0.astype(np.complex128).copy()
    d = z.shape[0]
    done = np.zeros(d, dtype=bool)
    eye = np.eye(d, dtype=bool)
    for it in range(maxiter):
        pv, dv = _horner(coeffs, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dv != 0, pv / dv, 0.0)
            diffs = z[:, None] - z[None, :]
            diffs[eye] = 1.0
            s = (1.0 / diffs).sum(axis=1) - 1.0
        corr = ratio / (1.0 - ratio * s)
        corr[done | ~np.isfinite(corr)] = 0.0
        z = z - corr
        small = np.abs(corr) <= tol * np.maximum(np.abs(z), 1.0)
        done |= small
        if done.all():
            return z, it + 1
    return z, maxiter


def cw_radius(indptr, indices, data, shift, maxiter, rtol):
    """Collatz-Wielandt bracket of the Perron root of a nonnegative CSR matrix plus ``shift*I``.

    Returns ``(lo, hi, iterations)`` for the shifted matrix.
    """
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n), np.diff(indptr))
    x = np.ones(n)
    lo, hi = 0.0, np.inf
    for it in range(maxiter):
        y = np.bincount(rows, weights=data * x[indices], minlength=n) + shift * x
        r = y / x
        lo, hi = float(r.min()), float(r.max())
        if hi - lo <= rtol * hi:
            return lo, hi, it + 1
        x = y / y.max()
    return lo, hi, maxiter
