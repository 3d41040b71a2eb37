"""Tuning pairs, the star operation and tunability audits."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .classify import (
    enumerate_Wn,
    is_admissible_word,
    is_extremal,
    is_irreducible,
    is_periodic,
    min_periodic,
    prev_word,
    next_word,
    primitive_root,
)
from .errors import InvalidExponent, MinimalWord, NotAdmissible, NotExtremal, PreconditionViolation
from .words import UNIMODAL, Word, compare_words, Comparison, sign


@dataclass(frozen=True)
class TuningPair:
    lower: Word
    upper: Word

    def to_json(self):
        return {"lower": str(self.lower), "upper": str(self.upper)}


@dataclass
class TunabilityReport:
    system: str
    w_min: Word | None
    verified_up_to: int
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def tunable(self):
        return self.w_min is not None and not self.violations

    def to_json(self):
        return {
            "system": self.system,
            "w_min": None if self.w_min is None else str(self.w_min),
            "verified_up_to": self.verified_up_to,
            "tunable_up_to_length": self.verified_up_to if self.tunable else None,
            "checked_words": self.checked,
            "violations": [str(v) for v in self.violations],
        }


def _single_top(w):
    top = w.graph.top
    return w.letters[0] == top and top not in w.letters[1:]


@lru_cache(maxsize=32)
def find_w_min(graph, max_len):
    """Shortest periodic word with a single N and sign -1 whose extension by N
    sits at or below every element of W_{|w|+1}.

    When (N, N) is an edge this is exactly "w N is the minimum of W_{|w|+1}".
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    top = graph.top
    for n in range(1, max_len + 1):
        floor = min_periodic(graph, n + 1)
        for w in enumerate_Wn(graph, n):
            if not _single_top(w) or sign(w) != -1:
                continue
            ext = w + (top,)
            if floor is None or compare_words(ext, floor) in (Comparison.LESS, Comparison.EQUAL):
                return w
    return None


def is_wmin_power(w, w_min):
    if w_min is None:
        return False
    n, m = len(w), len(w_min)
    return n % m == 0 and w.letters == w_min.letters * (n // m)


def find_tuning_pair(a):
    if not is_admissible_word(a):
        raise NotAdmissible(f"{a} is not admissible")
    up = next_word(a)
    if up is not None and is_extremal(up) and sign(up) == -1:
        return TuningPair(a, up)
    return None


def _substitute(pair, v):
    out = []
    for bit in v.letters:
        out.extend(pair.upper.letters if bit else pair.lower.letters)
    return Word(pair.lower.graph, out)


def tune(pair, v):
    """Replace letters 0/1 of the unimodal word v by pair.lower/pair.upper.

    v must be extremal in the unimodal system; odd powers of "1" and words
    such as "10" are accepted alongside the admissible exponents.
    """
    v = Word.parse(UNIMODAL, v)
    if v.graph != UNIMODAL or not is_extremal(v):
        raise InvalidExponent(f"{v} is not an extremal unimodal word")
    return _substitute(pair, v)


def _decompositions(w, allow_full, exponent_ok):
    n = len(w)
    for d in range(1, n + 1):
        if n % d or (d == n and not allow_full):
            continue
        upper = w[:d]
        if not is_periodic(upper) or sign(upper) != -1 or not is_extremal(upper):
            continue
        lower = prev_word(upper)
        if lower is None or not is_admissible_word(lower):
            continue
        bits = []
        for i in range(0, n, d):
            block = w.letters[i:i + d]
            if block == upper.letters:
                bits.append(1)
            elif block == lower.letters:
                bits.append(0)
            else:
                break
        else:
            v = Word(UNIMODAL, bits)
            if exponent_ok(v):
                yield TuningPair(lower, upper), v


def detect_renormalization(w):
    """Shortest-base decomposition w = a * v with an admissible unimodal v, or None."""
    if not is_admissible_word(w):
        raise NotAdmissible(f"{w} is not admissible")
    for pair, v in _decompositions(w, False, is_admissible_word):
        return pair, v
    return None


def is_renormalizable(w):
    return detect_renormalization(w) is not None


def base_decomposition(w):
    """(w', v) with w = w' * v and w' nonrenormalizable, for extremal w of sign -1.

    The exponent v is only required to be extremal in the unimodal system,
    which admits the odd powers 1^k used for w = Prev(w1) * 1^k.
    """
    if not is_extremal(w):
        raise NotExtremal(f"{w} is not extremal")
    if sign(w) != -1:
        raise PreconditionViolation(f"{w} has sign +1; use detect_renormalization")
    w_min = find_w_min(w.graph, len(w))
    if is_wmin_power(w, w_min):
        raise MinimalWord(f"{w} is a power of w_min={w_min}")
    for pair, v in _decompositions(w, True, is_extremal):
        return pair.lower, v
    root, k = primitive_root(w)
    raise PreconditionViolation(
        f"no tuning decomposition for {w} (root {root}^{k}); the system may not be tunable at this length"
    )


def retune(base, v):
    """Inverse of base_decomposition: substitute base / Next(base) into v."""
    return tune(TuningPair(base, next_word(base)), v)


def check_tunable(graph, max_len):
    w_min = find_w_min(graph, max_len)
    report = TunabilityReport(system=graph.name, w_min=w_min, verified_up_to=max_len)
    for n in range(1, max_len + 1):
        for a in enumerate_Wn(graph, n):
            if sign(a) != -1 or not is_extremal(a) or not is_irreducible(a):
                continue
            report.checked += 1
            root, k = primitive_root(a)
            if is_wmin_power(a, w_min) and (len(a) // len(w_min)) % 2 == 1:
                continue
            b = prev_word(a)
            if b is not None and is_admissible_word(b):
                continue
            report.violations.append(a)
    return report
