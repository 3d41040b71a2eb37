"""Certified constructions of dominant and admissible words.

Each constructor re-classifies what it builds before returning it.  A
``CertificationFailure`` therefore means a claimed construction produced a
word without the promised property, and is never swallowed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .classify import (
    ClassificationReport,
    classify,
    is_admissible_word,
    is_dominant,
    is_irreducible,
    next_word,
    primitive_root,
)
from .errors import (
    CertificationFailure,
    MinimalWord,
    NotAdmissible,
    PreconditionViolation,
    SearchExhausted,
)
from .tuning import base_decomposition, detect_renormalization, find_w_min, is_wmin_power
from .words import Comparison, Word, compare_periodic, compare_words, sign

DEFAULT_CAP = 64
# interior nodes visited by the brute-force suffix search before giving up
DFS_BUDGET = 200_000
W_MIN_SEARCH = 12


@dataclass(frozen=True)
class PSRS:
    ps: tuple
    rs: tuple

    def to_json(self):
        return {"ps": [str(v) for v in self.ps], "rs": [str(z) for z in self.rs]}


@dataclass
class CertifiedWord:
    word: Word
    certificate: ClassificationReport
    trace: list = field(default_factory=list)

    def to_json(self):
        return {"word": str(self.word), "certificate": self.certificate.to_json(), "trace": list(self.trace)}


def _certify(word, prop, trace):
    rep = classify(word)
    if not getattr(rep, prop):
        raise CertificationFailure(f"{word} was constructed as {prop} but fails the check ({rep})")
    return CertifiedWord(word, rep, trace)


def _w_min(graph):
    w = find_w_min(graph, W_MIN_SEARCH)
    if w is None:
        raise PreconditionViolation(f"no w_min of length <= {W_MIN_SEARCH} for {graph.name}")
    return w


def _less(x, y):
    c = compare_words(x, y)
    if c is Comparison.INCOMPARABLE:
        c = compare_periodic(x, y)
    return c is Comparison.LESS


def compute_psrs(w):
    if not is_admissible_word(w):
        raise NotAdmissible(f"{w} is not admissible")
    if not is_irreducible(w):
        raise PreconditionViolation(f"{w} is not irreducible")
    L = w.letters
    top = w.graph.top
    ps, rs = [], []
    for k in range(1, len(L)):
        if L[:k] == L[len(L) - k:] and L[k] == top:
            ps.append(w[:k])
            rs.append(w[k:])
    return PSRS(tuple(ps), tuple(rs))


# ---------------------------------------------------------------------------
# admissible concatenation


def concat_admissible(w, v, n):
    """w v^n for dominant positive w and an admissible irreducible v below it."""
    if n < 1:
        raise PreconditionViolation("n must be at least 1")
    if not is_dominant(w):
        raise PreconditionViolation(f"w={w} is not dominant")
    if sign(w) != 1:
        raise PreconditionViolation(f"w={w} has sign -1")
    if not is_admissible_word(v):
        raise PreconditionViolation(f"v={v} is not admissible")
    if not is_irreducible(v):
        raise PreconditionViolation(f"v={v} is not irreducible")
    if compare_periodic(v, w) is not Comparison.LESS:
        raise PreconditionViolation(f"v^inf < w^inf fails for v={v}, w={w}")
    if n * len(v) >= len(w):
        raise PreconditionViolation(f"n|v| = {n * len(v)} is not below |w| = {len(w)}")
    out = w + v * n
    return _certify(out, "admissible", [f"w={w} dominant, v={v}, n={n}: w v^n = {out}"])


# ---------------------------------------------------------------------------
# dominant words


def _check_dominant_pre(w, n):
    if n < 1:
        raise PreconditionViolation("n must be at least 1")
    if not is_admissible_word(w):
        raise NotAdmissible(f"{w} is not admissible")
    if not is_irreducible(w):
        raise PreconditionViolation(f"{w} is not irreducible")
    if detect_renormalization(w) is not None:
        raise PreconditionViolation(f"{w} is renormalizable")
    if is_wmin_power(w, find_w_min(w.graph, len(w))):
        raise MinimalWord(f"{w} is a power of w_min")


def _pair_ok(w, t, rs):
    """Dominant t below w whose period beats every z in RS(w)."""
    if not is_dominant(t) or not _less(t, w):
        return False
    return all(compare_periodic(t, z) is Comparison.GREATER for z in rs)


def _dovetail(w, n, t, cap):
    """Dominant w^n' t^m with n' >= n, shortest suffix first, suffix length <= cap."""
    lw, lt = len(w), len(t)
    pairs = []
    for extra in range(0, cap // lw + 1):
        for m in range(1, (cap - extra * lw) // lt + 1):
            pairs.append((extra * lw + m * lt, extra, m))
    pairs.sort()
    for _, extra, m in pairs:
        cand = w * (n + extra) + t * m
        if is_dominant(cand):
            yield cand, f"w^{n + extra} t^{m} with t={t} is dominant"


def _strategy_dominant(w, n, w_min):
    if is_dominant(w):
        cand = w * n + w_min * 2
        if is_dominant(cand):
            yield cand, f"w={w} dominant; w^{n} w_min^2 = {cand}"


def _recursive_t(w, rs, z0, cap, depth):
    """Candidate words t for the concatenation step, built from a shorter base word."""
    v0 = w[: len(w) - len(z0)]
    try:
        a, _ = base_decomposition(v0)
    except PreconditionViolation as exc:
        yield None, f"base decomposition of v0={v0} failed: {exc}"
        return
    g = w.graph
    root, k = primitive_root(a)
    if k > 1:
        w_min = _w_min(g)
        up = next_word(a)
        if root != w_min or k != 2 or up is None:
            yield None, f"a={a} reducible but not w_min^2"
            return
        if up.letters.count(g.top) != 1:
            yield None, f"Next(a)={up} has more than one top letter"
        for j in range(0, cap // len(w_min) + 1):
            t = up + w_min * (2 * j + 1)
            yield t, f"a={a}=w_min^2, t=Next(a) w_min^{2 * j + 1}"
        return
    if len(a) >= len(w):
        return
    for m in range(1, max(2, cap // len(a)) + 1):
        for t, why in _dominant_candidates(a, m, cap, depth + 1):
            yield t, f"from a={a}: {why}"


def _strategy_recursive(w, n, cap, depth):
    if depth > len(w):
        return
    rs = compute_psrs(w).rs
    if not rs:
        return
    z0 = rs[0]
    for z in rs[1:]:
        if compare_periodic(z, z0) is Comparison.GREATER:
            z0 = z
    tried = set()
    for t, why in _recursive_t(w, rs, z0, cap, depth):
        if t is None or t.letters in tried:
            continue
        tried.add(t.letters)
        if not _pair_ok(w, t, rs):
            continue
        for cand, how in _dovetail(w, n, t, cap):
            yield cand, f"z0={z0}; {why}; {how}"
        if len(tried) >= 16:
            return


def _strategy_search(w, n, cap, budget=DFS_BUDGET):
    """Depth-first search over suffixes b, shortest length first.

    A partial word is pruned once some start position is already decided to
    compare Greater than the matching prefix.
    """
    g = w.graph
    signs = g.signs
    top = g.top
    base = list(w.letters) * n
    nodes = 0
    for length in range(1, cap + 1):
        stack = [list()]
        while stack:
            b = stack.pop()
            nodes += 1
            if nodes > budget:
                return
            x = base + b
            if len(b) == length:
                if (x[-1], top) in g.edges and is_dominant(Word(g, x)):
                    yield Word(g, x), f"suffix search: b of length {length}"
                continue
            for c in reversed(g.succ[x[-1]]):
                y = x + [c]
                if not _decided_greater(y, signs):
                    stack.append(b + [c])


def _decided_greater(x, signs):
    """True if some proper suffix of x already compares Greater than x's prefix."""
    n = len(x)
    for s in range(1, n):
        sg = 1
        for i in range(n - s):
            a, b = x[s + i], x[i]
            if a != b:
                if sg * (a - b) > 0:
                    return True
                break
            sg *= signs[a]
    return False


def _dominant_candidates(w, n, cap, depth=0, search=True):
    w_min = _w_min(w.graph)
    seen = set()
    gens = [_strategy_dominant(w, n, w_min), _strategy_recursive(w, n, cap, depth)]
    if search:
        gens.append(_strategy_search(w, n, cap))
    for cand, why in itertools.chain(*gens):
        if cand.letters not in seen:
            seen.add(cand.letters)
            yield cand, why


def make_dominant(w, n=1, search_cap=DEFAULT_CAP):
    """A dominant word w^n b, certified."""
    _check_dominant_pre(w, n)
    for cand, why in _dominant_candidates(w, n, search_cap):
        return _certify(cand, "dominant", [why])
    raise SearchExhausted(search_cap, f"no dominant extension of {w}^{n} found")


# ---------------------------------------------------------------------------
# bridges


def concat_bridge(a, b, n=1, search_cap=DEFAULT_CAP):
    """An admissible a^n c b^n.

    A dominant positive word t = a^n' b' (n' >= n) long enough to sit
    above b is found first; then t b^n is an admissible concatenation
    and c is t with its a^n prefix removed.
    """
    if n < 1:
        raise PreconditionViolation("n must be at least 1")
    if not is_admissible_word(a):
        raise NotAdmissible(f"a={a} is not admissible")
    if not is_admissible_word(b):
        raise NotAdmissible(f"b={b} is not admissible")
    if detect_renormalization(a) is not None:
        raise PreconditionViolation(f"a={a} is renormalizable")
    if compare_periodic(b, a) is not Comparison.LESS:
        raise PreconditionViolation(f"b^inf < a^inf fails for a={a}, b={b}")
    root, k = primitive_root(a)
    if k > 1 and sign(root) != 1:
        raise PreconditionViolation(f"a={a} is a power of a negative word")
    if is_wmin_power(root, find_w_min(a.graph, len(root))):
        raise MinimalWord(f"a={a} is a power of w_min")
    broot, bk = primitive_root(b)
    v, vn = (broot, n * bk) if sign(broot) == 1 else (b, n)
    trace = []
    if k > 1:
        trace.append(f"a={root}^{k}; building on {root}")
    for n2 in range(n * k, n * k + search_cap // len(root) + 2):
        for t, why in _dominant_candidates(root, n2, search_cap):
            if sign(t) != 1 or vn * len(v) >= len(t) or compare_periodic(v, t) is not Comparison.LESS:
                continue
            if is_irreducible(v):
                cw = concat_admissible(t, v, vn)
                out = cw.word
            else:
                # b is an even power of a negative word: no irreducible exponent exists
                out = t + v * vn
                if not is_admissible_word(out):
                    continue
                trace.append(f"b={b} reducible with negative root; certified t b^n directly")
            c = out[n * len(a): len(out) - n * len(b)]
            trace += [f"t={t} ({why})", f"c={c}", f"a^{n} c b^{n} = {out}"]
            return _certify(out, "admissible", trace)
    raise SearchExhausted(search_cap, f"no bridge from {a} to {b} with n={n}")
