"""Word classes (periodic, irreducible, extremal, admissible, dominant) and W_n."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache

from . import _backend as K
from .errors import NotPeriodic, ResourceBound
from .words import Word, is_path_word, sign

DEFAULT_WN_CAP = 500_000


def is_periodic(w):
    return len(w) > 0 and w.letters[0] == w.graph.top and is_path_word(w, wrap=True)


def primitive_root(w):
    """Return ``(root, k)`` with ``w == root * k`` and ``root`` primitive."""
    n = len(w)
    L = w.letters
    for d in range(1, n + 1):
        if n % d == 0 and L[:d] * (n // d) == L:
            return w[:d], n // d
    return w, 1


def is_irreducible(w):
    return primitive_root(w)[1] == 1


def extremal_witness(w):
    """Smallest shift k with sigma^k(w^inf) > w^inf, or None."""
    k = K.shift_witness(w.array, w.graph.sign_array)
    return None if k < 0 else int(k)


def is_extremal(w):
    return is_periodic(w) and extremal_witness(w) is None


def is_admissible_word(w):
    return is_extremal(w) and sign(w) == 1


def dominance_witness(w):
    """Smallest k in [2, |w|] where Suff_k(wN) < Pre_k(w) fails, or None."""
    k = K.dominance_witness(w.array, w.graph.sign_array, w.graph.top)
    return None if k < 0 else int(k)


def is_dominant(w):
    return is_periodic(w) and dominance_witness(w) is None


@dataclass(frozen=True)
class ClassificationReport:
    word: str
    sign: int
    periodic: bool
    irreducible: bool
    extremal: bool
    admissible: bool
    dominant: bool
    failure_witness: int | None
    extremal_witness: int | None
    dominant_witness: int | None

    def to_json(self):
        return asdict(self)


def classify(w):
    periodic = is_periodic(w)
    irreducible = is_irreducible(w) if len(w) else False
    ext_k = extremal_witness(w) if periodic else None
    dom_k = dominance_witness(w) if periodic else None
    extremal = periodic and ext_k is None
    s = sign(w)
    dominant = periodic and dom_k is None
    failure = None
    if periodic:
        failure = ext_k if ext_k is not None else dom_k
    return ClassificationReport(
        word=str(w),
        sign=s,
        periodic=periodic,
        irreducible=irreducible,
        extremal=extremal,
        admissible=extremal and s == 1,
        dominant=dominant,
        failure_witness=failure,
        extremal_witness=ext_k,
        dominant_witness=dom_k,
    )


@lru_cache(maxsize=64)
def _closing_table(graph, n):
    """ok[r]: vertices that can reach a predecessor of N in exactly r steps."""
    ok = [frozenset(graph.pred[graph.top])]
    for _ in range(1, n):
        prev = ok[-1]
        ok.append(frozenset(u for u in range(graph.vertex_count) if any(v in prev for v in graph.succ[u])))
    return ok


def _greedy_fill(graph, letters, n, smallest):
    """Extend a periodic-feasible prefix to length n by the extreme completion."""
    ok = _closing_table(graph, n)
    signs = graph.signs
    out = list(letters)
    s = 1
    for x in out:
        s *= signs[x]
    while len(out) < n:
        i = len(out)
        cands = [c for c in graph.succ[out[-1]] if c in ok[n - 1 - i]]
        if not cands:
            return None
        pick = min(cands, key=lambda c: s * c) if smallest else max(cands, key=lambda c: s * c)
        out.append(pick)
        s *= signs[pick]
    return out


def min_periodic(graph, n):
    """Smallest element of W_n, or None when W_n is empty."""
    return _extreme_periodic(graph, n, True)


def max_periodic(graph, n):
    return _extreme_periodic(graph, n, False)


def _extreme_periodic(graph, n, smallest):
    if n < 1:
        raise ValueError("n must be positive")
    ok = _closing_table(graph, n)
    if graph.top not in ok[n - 1]:
        return None
    out = _greedy_fill(graph, [graph.top], n, smallest)
    return None if out is None else Word(graph, out)


def _step(w, up):
    if not is_periodic(w):
        raise NotPeriodic(f"{w} is not periodic")
    g = w.graph
    n = len(w)
    ok = _closing_table(g, n)
    signs = g.signs
    L = w.letters
    ps = [1]
    for x in L:
        ps.append(ps[-1] * signs[x])
    for j in range(n - 1, 0, -1):
        s = ps[j]
        cur = s * L[j]
        cands = [c for c in g.succ[L[j - 1]] if c in ok[n - 1 - j]]
        if up:
            better = [c for c in cands if s * c > cur]
            if not better:
                continue
            pick = min(better, key=lambda c: s * c)
        else:
            better = [c for c in cands if s * c < cur]
            if not better:
                continue
            pick = max(better, key=lambda c: s * c)
        out = _greedy_fill(g, list(L[:j]) + [pick], n, smallest=up)
        if out is not None:
            return Word(g, out)
    return None


def next_word(w):
    """Immediate successor of ``w`` in W_|w|, or None at the top."""
    return _step(w, up=True)


def prev_word(w):
    """Immediate predecessor of ``w`` in W_|w|, or None at the bottom."""
    return _step(w, up=False)


def enumerate_Wn(graph, n, cap=DEFAULT_WN_CAP):
    """All periodic words of length n in ascending signed order.

    Depth-first generation visits children in ascending signed-key order, so
    the output comes out sorted without a separate sort.
    """
    if n < 1:
        raise ValueError("n must be positive")
    ok = _closing_table(graph, n)
    top = graph.top
    if top not in ok[n - 1]:
        return []
    signs = graph.signs
    out = []
    stack = [(1, (top,), signs[top])]
    while stack:
        i, pre, s = stack.pop()
        if i == n:
            out.append(Word(graph, pre))
            if len(out) > cap:
                raise ResourceBound(f"W_{n} exceeds cap {cap}")
            continue
        cands = [c for c in graph.succ[pre[-1]] if c in ok[n - 1 - i]]
        # push largest first so the smallest is popped first
        cands.sort(key=lambda c: s * c, reverse=True)
        for c in cands:
            stack.append((i + 1, pre + (c,), s * signs[c]))
    return out


def iter_words(graph, max_len, predicate=None, cap=DEFAULT_WN_CAP):
    """Periodic words of length 1..max_len (each length ascending) passing ``predicate``."""
    for n in range(1, max_len + 1):
        for w in enumerate_Wn(graph, n, cap=cap):
            if predicate is None or predicate(w):
                yield w


def admissible_words(graph, max_len):
    return list(iter_words(graph, max_len, is_admissible_word))
