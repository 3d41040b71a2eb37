"""Markov decomposition below a kneading sequence, and its spectral data.

Sequences are handled as exact eventually periodic descriptors (``EPSeq``);
no floating point enters the partition or the incidence matrix.  The
characteristic polynomial is exact (multi-modular Hessenberg + CRT), and
eigenvalues are roots of its square-free factors found by Aberth iteration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import _backend as K
from .classify import is_admissible_word, is_extremal, is_periodic
from .errors import ConvergenceFailure, DegenerateKernel, KneadError, NotAdmissible, NotExtremal, NotPeriodic
from .polys import IntPoly
from .words import EPSeq, signed_key


# ---------------------------------------------------------------------------
# greedy extreme sequences


def _greedy(graph, start, want_max, stop_at_top=None):
    """Follow the extreme completion from ``(start, want_max)``.

    State is (vertex, whether the remaining tail should be maximal).  With
    ``stop_at_top`` set, reaching state (N, max) appends that sequence and stops.
    """
    signs = graph.signs
    seen = {}
    path = []
    state = (start, want_max)
    while True:
        if stop_at_top is not None and state == (graph.top, True):
            return EPSeq(tuple(path) + stop_at_top.pre, stop_at_top.per)
        if state in seen:
            k = seen[state]
            return EPSeq(tuple(path[:k]), tuple(path[k:]))
        seen[state] = len(path)
        v, mx = state
        path.append(v)
        if signs[v] < 0:
            mx = not mx
        succ = graph.succ[v]
        state = (succ[-1] if mx else succ[0], mx)


def minimal_sequence(graph, maximize=False):
    """Smallest (or largest) sequence of the full path space, as an EPSeq."""
    first = graph.top if maximize else 0
    return _canon(_greedy(graph, first, maximize))


def _canon(x):
    """Shortest preperiod and primitive period, so equal sequences compare equal as tuples."""
    per = x.per
    n = len(per)
    for d in range(1, n + 1):
        if n % d == 0 and per[:d] * (n // d) == per:
            per = per[:d]
            break
    pre = x.pre
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1:] + per[:-1]
    return EPSeq(pre, per)


class _Ranker:
    """Total preorder on a finite pool of EPSeqs via one shared signed-key window."""

    def __init__(self, signs, seqs):
        self.signs = signs
        pool = {}
        for s in seqs:
            c = _canon(s)
            pool[(c.pre, c.per)] = c
        self._pool = list(pool.values())
        self._rank = None

    def add(self, s):
        c = _canon(s)
        self._pool.append(c)
        self._rank = None
        return c

    def rank(self, s):
        if self._rank is None:
            self._build()
        c = _canon(s)
        return self._rank[(c.pre, c.per)]

    def _build(self):
        uniq = {(c.pre, c.per): c for c in self._pool}
        mp = max(len(c.pre) for c in uniq.values())
        mq = max(len(c.per) for c in uniq.values())
        n = mp + 2 * mq
        keys = sorted((signed_key(c.head(n), self.signs), k) for k, c in uniq.items())
        self._rank = {}
        r = -1
        last = None
        for key, k in keys:
            if key != last:
                r += 1
                last = key
            self._rank[k] = r


# ---------------------------------------------------------------------------
# Markov partition


@dataclass
class Piece:
    interval: int
    vertex: int
    lo: EPSeq
    hi: EPSeq

    def label(self):
        return f"[{self.lo}, {self.hi}] in I_{self.vertex}"


@dataclass
class MarkovPartition:
    word: object
    orbit_points: list
    pieces: list
    dropped: list = field(default_factory=list)
    _ranker: object = field(default=None, repr=False)

    def to_json(self):
        return {
            "word": str(self.word),
            "orbit_points": [str(p) for p in self.orbit_points],
            "pieces": [
                {"interval": p.interval, "vertex": p.vertex, "lo": str(p.lo), "hi": str(p.hi)}
                for p in self.pieces
            ],
            "dropped": [{"interval": i, "vertex": j} for i, j in self.dropped],
        }


def _cylinder_extremes(w):
    """(m, M): least and greatest sequence below w^inf in each cylinder I_j.

    The set below an extremal w^inf is forward invariant, so the greedy walk
    that keeps every tail extreme stays inside it; hitting (N, max) means
    the tail is w^inf itself.
    """
    g = w.graph
    a = EPSeq((), w.letters)
    lo, hi = [], []
    for j in range(g.vertex_count):
        lo.append(_canon(_greedy(g, j, False, stop_at_top=a)))
        hi.append(a if j == g.top else _canon(_greedy(g, j, True, stop_at_top=a)))
    return lo, hi


def markov_partition(w):
    if not is_extremal(w):
        raise NotExtremal(f"{w} is not extremal")
    g = w.graph
    signs = g.signs
    n = len(w)
    rots = {}
    for k in range(n):
        r = _canon(EPSeq((), w.letters[k:] + w.letters[:k]))
        rots[(r.pre, r.per)] = r
    floor = minimal_sequence(g)
    m_ext, M_ext = _cylinder_extremes(w)
    pool = list(rots.values()) + [floor] + m_ext + M_ext
    ranker = _Ranker(signs, pool)
    pts = sorted(rots.values(), key=ranker.rank, reverse=True)
    if ranker.rank(floor) != ranker.rank(pts[-1]):
        pts.append(floor)
    pieces, dropped = [], []
    for i in range(len(pts) - 1):
        top, bot = pts[i], pts[i + 1]
        for j in range(g.vertex_count):
            lo = max(bot, m_ext[j], key=ranker.rank)
            hi = min(top, M_ext[j], key=ranker.rank)
            rl, rh = ranker.rank(lo), ranker.rank(hi)
            if rl < rh:
                pieces.append(Piece(i, j, lo, hi))
            elif rl == rh and lo.first == j and hi.first == j:
                dropped.append((i, j))
    return MarkovPartition(w, pts, pieces, dropped, ranker)


@dataclass
class IncidenceMatrix:
    entries: np.ndarray
    labels: list

    @property
    def size(self):
        return self.entries.shape[0]

    def to_json(self):
        return {"size": self.size, "labels": self.labels, "entries": self.entries.tolist()}


def incidence_matrix(part):
    """0/1 matrix with (P, Q) = 1 when the shift image of P covers Q.

    The image of a piece in I_j is the interval between the shifted
    endpoints, flipped when j has sign -1.  Raises KneadError if some image
    cuts through a piece, which would mean the partition is not Markov.
    """
    g = part.word.graph
    ranker = part._ranker
    pieces = part.pieces
    images = []
    for p in pieces:
        a, b = ranker.add(p.lo.shift()), ranker.add(p.hi.shift())
        images.append((a, b) if g.signs[p.vertex] > 0 else (b, a))
    rk = ranker.rank
    bounds = [(rk(p.lo), rk(p.hi)) for p in pieces]
    img = [(rk(a), rk(b)) for a, b in images]
    size = len(pieces)
    m = np.zeros((size, size), dtype=np.int64)
    for s, p in enumerate(pieces):
        ilo, ihi = img[s]
        for t, q in enumerate(pieces):
            if not g.has_edge(p.vertex, q.vertex):
                continue
            qlo, qhi = bounds[t]
            if ilo <= qlo and qhi <= ihi:
                m[s, t] = 1
            elif not (qhi <= ilo or qlo >= ihi):
                raise KneadError(f"image of {p.label()} cuts {q.label()}")
    return IncidenceMatrix(m, [p.label() for p in pieces])


def incidence_for(w):
    return incidence_matrix(markov_partition(w))


def core_indices(part, M=None):
    """Pieces between the lowest orbit point and w^inf.

    Below the lowest orbit point sit pieces such as the one around the
    fixed point 0^inf in the unimodal system, which nothing else maps onto.
    They are dropped only when the remaining pieces are forward invariant;
    otherwise every piece is kept.
    """
    a = _entries(M if M is not None else incidence_matrix(part))
    everything = list(range(len(part.pieces)))
    if len(part.orbit_points) == len(_rotation_keys(part.word)):
        # the minimum of the path space is itself an orbit point
        return everything
    last = len(part.orbit_points) - 2
    core = [i for i, p in enumerate(part.pieces) if p.interval < last]
    rest = [i for i, p in enumerate(part.pieces) if p.interval >= last]
    if not core or (rest and a[np.ix_(core, rest)].any()):
        return everything
    return core


def _rotation_keys(w):
    L = w.letters
    keys = set()
    for k in range(len(L)):
        c = _canon(EPSeq((), L[k:] + L[:k]))
        keys.add((c.pre, c.per))
    return keys


def core_matrix(part, M=None):
    a = _entries(M if M is not None else incidence_matrix(part))
    idx = core_indices(part, a)
    return a[np.ix_(idx, idx)]


def is_core_irreducible(w):
    """Irreducibility of the incidence matrix restricted to its core pieces."""
    part = markov_partition(w)
    return is_irreducible_matrix(core_matrix(part, incidence_matrix(part)))


def _entries(M):
    return M.entries if isinstance(M, IncidenceMatrix) else np.asarray(M, dtype=np.int64)


def is_irreducible_matrix(M):
    a = _entries(M)
    if a.shape[0] == 0:
        return False
    if a.shape[0] == 1:
        return a[0, 0] > 0
    k, _ = connected_components(csr_matrix(a != 0), directed=True, connection="strong")
    return k == 1


# ---------------------------------------------------------------------------
# exact characteristic polynomial


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):  # deterministic below 3.2e9
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(start, count):
    out = []
    p = start
    while len(out) < count:
        p -= 1
        if _is_prime(p):
            out.append(p)
    return out


# products of two residues must fit in int64
_PRIME_CEILING = 1 << 31


def char_poly(M):
    """det(xI - M) over Z.

    Residues come from Hessenberg reduction modulo several primes; the
    number of primes is set by Hadamard's bound on the coefficients.
    """
    a = _entries(M)
    n = a.shape[0]
    if n == 0:
        return IntPoly.const(1)
    # every coefficient is bounded by prod_i (1 + ||row_i||)
    bits = sum(math.log2(1.0 + math.sqrt(float((a[i].astype(float) ** 2).sum()))) for i in range(n)) + 2
    count = max(1, math.ceil(bits / 30.0))
    primes = _primes_below(_PRIME_CEILING, count)
    acc = [0] * (n + 1)
    mod = 1
    for p in primes:
        r = K.charpoly_mod(a.astype(np.int64), p)
        if mod == 1:
            acc = [int(x) for x in r]
        else:
            inv = pow(mod, -1, p)
            acc = [x + mod * (((int(y) - x) * inv) % p) for x, y in zip(acc, r)]
        mod *= p
    half = mod // 2
    return IntPoly(x - mod if x > half else x for x in acc)


def zeta_denominator(M):
    """det(I - tM) = t^n charpoly(1/t)."""
    n = _entries(M).shape[0]
    return char_poly(M).reversed(n)


# ---------------------------------------------------------------------------
# roots


def _float_coeffs(p):
    big = max(abs(c) for c in p.coeffs)
    s = max(0, big.bit_length() - 1000)
    return np.array([c / (1 << s) if s else float(c) for c in p.coeffs], dtype=np.float64)


def _newton_init(c):
    """Starting points on circles whose radii come from the Newton polygon."""
    d = c.shape[0] - 1
    with np.errstate(divide="ignore"):
        lg = np.log(np.abs(c))
    idx = [k for k in range(d + 1) if np.isfinite(lg[k])]
    hull = []
    for k in idx:
        while len(hull) >= 2:
            k1, k2 = hull[-2], hull[-1]
            if (lg[k2] - lg[k1]) * (k - k1) <= (lg[k] - lg[k1]) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append(k)
    z = []
    for k1, k2 in zip(hull, hull[1:]):
        m = k2 - k1
        r = math.exp((lg[k1] - lg[k2]) / m)
        off = 2 * math.pi * k1 / d + 0.4
        z.extend(r * np.exp(1j * (2 * math.pi * np.arange(m) / m + off)))
    return np.array(z, dtype=np.complex128)


def _backward_error(c, z):
    pv = np.polyval(c[::-1], z)
    scale = np.polyval(np.abs(c[::-1]), np.abs(z))
    return np.abs(pv) / np.where(scale > 0, scale, 1.0)


ROOT_RESIDUAL = 1e-10


def _squarefree_roots(p, maxiter=2000):
    d = p.degree
    if d == 1:
        return np.array([complex(-p.coeffs[0] / p.coeffs[1])])
    c = _float_coeffs(p)
    z0 = _newton_init(c)
    z, iters = K.aberth(c, z0, maxiter, 1e-15)
    res = _backward_error(c, z)
    worst = float(res.max()) if res.size else 0.0
    if not np.all(np.isfinite(z)) or worst >= ROOT_RESIDUAL:
        raise ConvergenceFailure(
            f"root iteration on a degree-{d} factor did not converge", iterations=iters, residual=worst
        )
    return _symmetrize(z)


def _symmetrize(z):
    """Make the non-real roots of a real polynomial exact conjugate pairs."""
    z = np.where(np.abs(z.imag) < 1e-14 * np.maximum(1.0, np.abs(z)), z.real + 0j, z)
    up, lo = np.flatnonzero(z.imag > 0), np.flatnonzero(z.imag < 0)
    if up.size == 0 or up.size != lo.size:
        return z
    r, c = linear_sum_assignment(np.abs(z[up][:, None] - np.conj(z[lo])[None, :]))
    out = z.copy()
    for i, j in zip(up[r], lo[c]):
        m = 0.5 * (z[i] + np.conj(z[j]))
        out[i], out[j] = m, np.conj(m)
    return out


def poly_roots(p):
    """All complex roots of an IntPoly with multiplicity."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    core, zeros = p.strip_zero_roots()
    out = [0j] * zeros
    for f, mult in core.square_free():
        for z in _squarefree_roots(f):
            out.extend([complex(z)] * mult)
    return _sorted(np.array(out, dtype=np.complex128))


def _sorted(z):
    z = np.asarray(z, dtype=np.complex128)
    # snap tiny imaginary parts produced by real roots, then sort by (re, im)
    z = np.where(np.abs(z.imag) < 1e-14 * np.maximum(1.0, np.abs(z)), z.real + 0j, z)
    order = np.lexsort((z.imag, z.real))
    return z[order]


@dataclass
class Spectrum:
    eigenvalues: np.ndarray
    radius: float
    circle_tol: float

    def _mod(self):
        return np.abs(self.eigenvalues)

    @property
    def inside(self):
        return self.eigenvalues[self._mod() < 1 - self.circle_tol]

    @property
    def outside(self):
        return self.eigenvalues[self._mod() > 1 + self.circle_tol]

    @property
    def on_circle(self):
        m = self._mod()
        return self.eigenvalues[(m >= 1 - self.circle_tol) & (m <= 1 + self.circle_tol)]

    def to_json(self):
        def pts(z):
            return [[float(x.real), float(x.imag)] for x in z]

        return {
            "radius": float(self.radius),
            "circle_tol": self.circle_tol,
            "eigenvalues": pts(self.eigenvalues),
            "inside": pts(self.inside),
            "on_circle": pts(self.on_circle),
            "outside": pts(self.outside),
        }


def spectrum(M, circle_tol=1e-8):
    z = poly_roots(char_poly(M)) if _entries(M).shape[0] else np.zeros(0, dtype=np.complex128)
    radius = float(np.abs(z).max()) if z.size else 0.0
    return Spectrum(z, radius, circle_tol)


# ---------------------------------------------------------------------------
# entropy


def spectral_radius(M, rtol=1e-13, maxiter=200_000):
    """Perron root, per strongly connected component.

    Each component is bracketed by Collatz-Wielandt ratios on A + I (the
    shift makes the component primitive so the iteration converges); a
    component that fails to converge falls back to its exact char poly.
    """
    a = _entries(M)
    n = a.shape[0]
    if n == 0:
        return 0.0
    k, lab = connected_components(csr_matrix(a != 0), directed=True, connection="strong")
    best = 0.0
    for c in range(k):
        idx = np.flatnonzero(lab == c)
        sub = a[np.ix_(idx, idx)]
        if idx.size == 1:
            best = max(best, float(sub[0, 0]))
            continue
        if not sub.any():
            continue
        csr = csr_matrix(sub)
        lo, hi, it = K.cw_radius(csr.indptr.astype(np.int64), csr.indices.astype(np.int64),
                                 csr.data.astype(np.float64), 1.0, maxiter, rtol)
        if hi - lo <= rtol * hi * 4:
            rho = 0.5 * (lo + hi) - 1.0
        else:
            rho = float(np.abs(poly_roots(char_poly(sub))).max())
        best = max(best, rho)
    return best


def entropy(M):
    rho = spectral_radius(M)
    return math.log(rho) if rho > 0 else float("-inf")


# ---------------------------------------------------------------------------
# kneading polynomial


def _poly_det(rows):
    """Bareiss fraction-free determinant of a square IntPoly matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return IntPoly.const(1)
    sgn = 1
    prev = IntPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            sw = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if sw is None:
                return IntPoly()
            a[k], a[sw] = a[sw], a[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sgn < 0 else det


def elimination_polys(graph):
    """Primitive integer solution p_0..p_N of lambda p_i = sum_{(i,j)} p_j, i < N."""
    n = graph.vertex_count
    lam = IntPoly.monomial(1)
    A = graph.adjacency
    rows = [[(lam if i == j else IntPoly()) - int(A[i, j]) for j in range(n)] for i in range(n - 1)]
    ps = []
    for k in range(n):
        minor = [[r[j] for j in range(n) if j != k] for r in rows]
        d = _poly_det(minor)
        ps.append(-d if k % 2 else d)
    if all(p.is_zero() for p in ps):
        raise DegenerateKernel(f"solution space of {graph.name or 'graph'} has dimension > 1")
    g = IntPoly()
    for p in ps:
        if not p.is_zero():
            g = p if g.is_zero() else g.gcd(p)
    ps = [p.exact_div(g) for p in ps]
    if ps[-1].lead < 0:
        ps = [-p for p in ps]
    for i in range(n - 1):
        if not (lam * ps[i] - sum((ps[j] for j in graph.succ[i]), IntPoly())).is_zero():
            raise KneadError("elimination polynomials fail substitution")
    return ps


def _affine(graph, ps, i, j, x):
    lam = IntPoly.monomial(1)
    if graph.signs[i] > 0:
        return lam * x - sum((ps[k] for k in graph.succ[i] if k < j), IntPoly())
    return ps[j] - lam * x + sum((ps[k] for k in graph.succ[i] if k > j), IntPoly())


def kneading_poly(w):
    if not is_periodic(w):
        raise NotPeriodic(f"{w} is not periodic")
    g = w.graph
    ps = elimination_polys(g)
    x = ps[-1]
    L = w.letters
    for t in range(len(L)):
        x = _affine(g, ps, L[t], L[(t + 1) % len(L)], x)
    return x - ps[-1]


# ---------------------------------------------------------------------------
# matching


@dataclass
class MatchReport:
    word: str
    tol: float
    degenerate: bool
    root_set: np.ndarray
    eigen_set: np.ndarray
    set_distance: float
    multiset_distance: float | None
    pairs: list

    @property
    def matched(self):
        return not self.degenerate and self.set_distance < math.inf

    def to_json(self):
        def pts(z):
            return [[float(x.real), float(x.imag)] for x in z]

        def num(x):
            return None if x is None or not math.isfinite(x) else float(x)

        return {
            "word": self.word,
            "tol": self.tol,
            "degenerate": self.degenerate,
            "roots_off_circle": pts(self.root_set),
            "eigenvalues_off_circle": pts(self.eigen_set),
            "set_distance": num(self.set_distance),
            "multiset_distance": num(self.multiset_distance),
            "pairs": [[pts([a])[0], pts([b])[0]] for a, b in self.pairs],
        }


def _off_circle(z, tol):
    m = np.abs(z)
    return z[(z != 0) & ((m < 1 - tol) | (m > 1 + tol))]


def _hausdorff(a, b):
    if a.size == 0 and b.size == 0:
        return 0.0
    if a.size == 0 or b.size == 0:
        return math.inf
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def match_off_circle(w, tol=1e-6):
    """Compare off-circle nonzero roots of F_w with off-circle eigenvalues of M_w.

    The set distance is a Hausdorff distance; when the two multisets have
    equal size a minimal-cost assignment gives the multiset distance.
    """
    if not is_admissible_word(w):
        raise NotAdmissible(f"{w} is not admissible")
    eig = _off_circle(spectrum(incidence_for(w)).eigenvalues, tol)
    F = kneading_poly(w)
    if F.is_zero():
        return MatchReport(str(w), tol, True, np.zeros(0, complex), eig, math.inf, None, [])
    roots = _off_circle(poly_roots(F), tol)
    hd = _hausdorff(roots, eig)
    md, pairs = None, []
    if roots.size == eig.size:
        if roots.size:
            cost = np.abs(roots[:, None] - eig[None, :])
            r, c = linear_sum_assignment(cost)
            md = float(cost[r, c].max())
            pairs = [(roots[i], eig[j]) for i, j in zip(r, c)]
        else:
            md = 0.0
    return MatchReport(str(w), tol, False, roots, eig, hd, md, pairs)
