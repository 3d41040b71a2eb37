"""Loop-style kernels compiled with numba; semantics mirror ``_kernels_numpy``."""
import numpy as np
from numba import njit


@njit(cache=True)
def shift_witness(word, sgn):
    n = word.shape[0]
    for k in range(1, n):
        s = 1
        for i in range(n):
            a = word[(k + i) % n]
            b = word[i]
            if a != b:
                if s * (a - b) > 0:
                    return k
                break
            s *= sgn[b]
    return -1


@njit(cache=True)
def dominance_witness(word, sgn, top):
    n = word.shape[0]
    for k in range(2, n + 1):
        start = n + 1 - k
        s = 1
        less = False
        for i in range(k):
            j = start + i
            a = top if j == n else word[j]
            b = word[i]
            if a != b:
                less = s * (a - b) < 0
                break
            s *= sgn[b]
        if not less:
            return k
    return -1


@njit(cache=True)
def charpoly_mod(a, p):
    n = a.shape[0]
    h = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            h[i, j] = a[i, j] % p
    for m in range(1, n - 1):
        piv = -1
        for i in range(m, n):
            if h[i, m - 1] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != m:
            for j in range(n):
                t = h[piv, j]
                h[piv, j] = h[m, j]
                h[m, j] = t
            for i in range(n):
                t = h[i, piv]
                h[i, piv] = h[i, m]
                h[i, m] = t
        # modular inverse by Fermat
        base = h[m, m - 1]
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for i in range(m + 1, n):
            u = (h[i, m - 1] * inv) % p
            if u == 0:
                continue
            for j in range(n):
                h[i, j] = (h[i, j] - u * h[m, j]) % p
            for j in range(n):
                h[j, m] = (h[j, m] + u * h[j, i]) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        hk = h[k - 1, k - 1]
        for c in range(n + 1):
            v = -(hk * polys[k - 1, c]) % p
            if c > 0:
                v += polys[k - 1, c - 1]
            polys[k, c] = v % p
        prod = 1
        for i in range(1, k):
            prod = (prod * h[k - i, k - i - 1]) % p
            if prod == 0:
                break
            coef = (h[k - i - 1, k - 1] * prod) % p
            if coef == 0:
                continue
            for c in range(n + 1):
                polys[k, c] = (polys[k, c] - coef * polys[k - i - 1, c]) % p
    return polys[n].copy()


@njit(cache=True)
def aberth(coeffs, z0, maxiter, tol):
    d = z0.shape[0]
    deg = coeffs.shape[0] - 1
    z = z0.copy()
    done = np.zeros(d, dtype=np.bool_)
    corr = np.zeros(d, dtype=np.complex128)
    for it in range(maxiter):
        for i in range(d):
            if done[i]:
                corr[i] = 0.0
                continue
            zi = z[i]
            pv = coeffs[deg] + 0j
            dv = 0j
            for k in range(deg - 1, -1, -1):
                dv = dv * zi + pv
                pv = pv * zi + coeffs[k]
            if dv == 0:
                corr[i] = 0.0
                continue
            ratio = pv / dv
            s = 0j
            for j in range(d):
                if j != i:
                    s += 1.0 / (zi - z[j])
            c = ratio / (1.0 - ratio * s)
            if not (np.isfinite(c.real) and np.isfinite(c.imag)):
                c = 0j
            corr[i] = c
        alldone = True
        for i in range(d):
            z[i] = z[i] - corr[i]
            if not done[i]:
                if abs(corr[i]) <= tol * max(abs(z[i]), 1.0):
                    done[i] = True
                else:
                    alldone = False
        if alldone:
            return z, it + 1
    return z, maxiter


@njit(cache=True)
def cw_radius(indptr, indices, data, shift, maxiter, rtol):
    n = indptr.shape[0] - 1
    x = np.ones(n)
    y = np.empty(n)
    lo = 0.0
    hi = np.inf
    for it in range(maxiter):
        for i in range(n):
            acc = shift * x[i]
            for q in range(indptr[i], indptr[i + 1]):
                acc += data[q] * x[indices[q]]
            y[i] = acc
        lo = np.inf
        hi = 0.0
        ymax = 0.0
        for i in range(n):
            r = y[i] / x[i]
            if r < lo:
                lo = r
            if r > hi:
                hi = r
            if y[i] > ymax:
                ymax = y[i]
        if hi - lo <= rtol * hi:
            return lo, hi, it + 1
        for i in range(n):
            x[i] = y[i] / ymax
    return lo, hi, maxiter
