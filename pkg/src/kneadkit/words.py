"""Signed graphs, words and the signed lexicographic order.

The order twists ordinary lexicographic comparison by the product of vertex
signs along the common prefix.  Every comparison here reduces to comparing
*signed keys*: letter ``i`` is replaced by ``s_i * w_i`` where ``s_i`` is the
sign of ``w[:i]``.  Two sequences sharing a prefix share its signs, so plain
lexicographic order on keys is the signed order.
"""
from __future__ import annotations

import enum
import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import InvalidGraph, InvalidWord, NotPeriodic


class Comparison(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SignedGraph:
    """Directed graph on ``0..N`` with a sign on every vertex.

    Construction validates strong connectivity, aperiodicity and that every
    vertex has an outgoing edge; nothing downstream re-checks these.
    """

    vertex_count: int
    edges: frozenset
    signs: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise InvalidGraph("need at least one vertex")
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(self.signs) != n:
            raise InvalidGraph(f"expected {n} signs, got {len(self.signs)}")
        if any(s not in (-1, 1) for s in self.signs):
            raise InvalidGraph("signs must be -1 or +1")
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidGraph(f"edge {(i, j)} out of range")
        for v in range(n):
            if not self.succ[v]:
                raise InvalidGraph(f"vertex {v} has no outgoing edge")
        if not self._strongly_connected():
            raise InvalidGraph("graph is not strongly connected")
        if self.period != 1:
            raise InvalidGraph(f"graph is periodic with period {self.period}")

    @property
    def top(self):
        return self.vertex_count - 1

    @cached_property
    def succ(self):
        out = [[] for _ in range(self.vertex_count)]
        for i, j in sorted(self.edges):
            out[i].append(j)
        return tuple(tuple(s) for s in out)

    @cached_property
    def pred(self):
        out = [[] for _ in range(self.vertex_count)]
        for i, j in sorted(self.edges):
            out[j].append(i)
        return tuple(tuple(s) for s in out)

    @cached_property
    def sign_array(self):
        return np.asarray(self.signs, dtype=np.int64)

    @cached_property
    def adjacency(self):
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        for i, j in self.edges:
            a[i, j] = 1
        return a

    def _reach(self, nbrs):
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for u in nbrs[v]:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == self.vertex_count

    def _strongly_connected(self):
        return self._reach(self.succ) and self._reach(self.pred)

    @cached_property
    def period(self):
        # gcd of level differences across edges of a BFS tree
        level = {0: 0}
        q = deque([0])
        while q:
            v = q.popleft()
            for u in self.succ[v]:
                if u not in level:
                    level[u] = level[v] + 1
                    q.append(u)
        g = 0
        for i, j in self.edges:
            g = math.gcd(g, level[i] + 1 - level[j])
        return g

    def has_edge(self, i, j):
        return (i, j) in self.edges

    def word(self, spec):
        return Word.parse(self, spec)

    def to_json(self):
        return {
            "vertices": self.vertex_count,
            "edges": [list(e) for e in sorted(self.edges)],
            "signs": list(self.signs),
        }

    @classmethod
    def from_json(cls, doc, name=""):
        try:
            return cls(int(doc["vertices"]), frozenset(tuple(e) for e in doc["edges"]),
                       tuple(doc["signs"]), name=name)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidGraph(f"malformed system config: {exc}") from exc


def _unimodal():
    return SignedGraph(2, frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}), (1, -1), name="unimodal")


def _four_vertex():
    # every edge except 3 -> 1 and 3 -> 2
    edges = {(i, j) for i in range(4) for j in range(4) if not (i == 3 and j in (1, 2))}
    return SignedGraph(4, frozenset(edges), tuple((-1) ** k for k in range(4)), name="four-vertex")


def _tree():
    edges = {(0, 2), (0, 3), (1, 0), (2, 1), (3, 0), (3, 1)}
    return SignedGraph(4, frozenset(edges), (-1, -1, 1, -1), name="tree")


UNIMODAL = _unimodal()
FOUR_VERTEX = _four_vertex()
TREE = _tree()
SYSTEMS = {"unimodal": UNIMODAL, "four-vertex": FOUR_VERTEX, "tree": TREE}


def load_system(name_or_path):
    """Built-in system by name, or a JSON config file path."""
    if name_or_path in SYSTEMS:
        return SYSTEMS[name_or_path]
    path = Path(name_or_path)
    if not path.is_file():
        raise InvalidGraph(f"unknown system {name_or_path!r} (built-ins: {', '.join(SYSTEMS)})")
    with open(path) as fh:
        return SignedGraph.from_json(json.load(fh), name=path.stem)


class Word:
    """Finite vertex sequence tied to a signed graph."""

    __slots__ = ("letters", "graph", "_arr")

    def __init__(self, graph, letters):
        letters = tuple(int(x) for x in letters)
        n = graph.vertex_count
        for x in letters:
            if not 0 <= x < n:
                raise InvalidWord(f"letter {x} is not a vertex of a {n}-vertex graph")
        self.letters = letters
        self.graph = graph
        self._arr = None

    @classmethod
    def parse(cls, graph, spec):
        if isinstance(spec, Word):
            return spec
        if isinstance(spec, str):
            s = spec.strip()
            if "," in s or " " in s:
                parts = [p for p in s.replace(",", " ").split() if p]
            else:
                parts = list(s)
            try:
                return cls(graph, [int(p) for p in parts])
            except ValueError as exc:
                raise InvalidWord(f"cannot parse word {spec!r}") from exc
        return cls(graph, spec)

    @property
    def array(self):
        if self._arr is None:
            self._arr = np.asarray(self.letters, dtype=np.int64)
        return self._arr

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Word(self.graph, self.letters[idx])
        return self.letters[idx]

    def __add__(self, other):
        if isinstance(other, Word):
            other = other.letters
        return Word(self.graph, self.letters + tuple(other))

    def __mul__(self, k):
        return Word(self.graph, self.letters * k)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters and self.graph == other.graph

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        if self.graph.vertex_count <= 10:
            return "".join(str(x) for x in self.letters)
        return ",".join(str(x) for x in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def prefix(self, k):
        return self[:k]

    def suffix(self, k):
        return self[len(self) - k:] if k else Word(self.graph, ())

    def rotate(self, k):
        return Word(self.graph, self.letters[k:] + self.letters[:k])


def signed_key(letters, signs):
    out = []
    s = 1
    for x in letters:
        out.append(s * x)
        s *= signs[x]
    return tuple(out)


def _cmp_keys(ka, kb):
    if ka < kb:
        return Comparison.LESS
    if ka > kb:
        return Comparison.GREATER
    return Comparison.EQUAL


def sign(w):
    s = 1
    signs = w.graph.signs
    for x in w.letters:
        s *= signs[x]
    return s


def compare_words(u, v):
    """Signed order on finite words; a proper prefix is Incomparable."""
    m = min(len(u), len(v))
    signs = u.graph.signs
    s = 1
    for a, b in zip(u.letters[:m], v.letters[:m]):
        if a != b:
            return Comparison.LESS if s * (a - b) < 0 else Comparison.GREATER
        s *= signs[a]
    if len(u) == len(v):
        return Comparison.EQUAL
    return Comparison.INCOMPARABLE


def is_path_word(w, wrap=False):
    g = w.graph
    L = w.letters
    for a, b in zip(L, L[1:]):
        if (a, b) not in g.edges:
            return False
    if wrap and L and (L[-1], L[0]) not in g.edges:
        return False
    return True


def _check_periodic(*words):
    # avoids a circular import with classify.is_periodic
    for w in words:
        if not (len(w) and w.letters[0] == w.graph.top and is_path_word(w, wrap=True)):
            raise NotPeriodic(f"{w} is not periodic")


def compare_periodic(u, v):
    """Compare u^inf with v^inf using the first |u|+|v| letters."""
    _check_periodic(u, v)
    return compare_periodic_unchecked(u.letters, v.letters, u.graph.signs)


def compare_periodic_unchecked(u, v, signs):
    n = len(u) + len(v)
    a = (u * (n // len(u) + 1))[:n]
    b = (v * (n // len(v) + 1))[:n]
    return _cmp_keys(signed_key(a, signs), signed_key(b, signs))


def compare_shift(w, k):
    """Compare sigma^k(w^inf) with w^inf."""
    _check_periodic(w)
    if not 0 <= k < len(w):
        raise ValueError(f"shift {k} out of range for length {len(w)}")
    signs = w.graph.signs
    return _cmp_keys(signed_key(w.letters[k:] + w.letters[:k], signs), signed_key(w.letters, signs))


@dataclass(frozen=True)
class EPSeq:
    """Eventually periodic sequence ``pre + per^inf`` (``per`` nonempty)."""

    pre: tuple
    per: tuple

    def shift(self):
        if self.pre:
            return EPSeq(self.pre[1:], self.per)
        return EPSeq((), self.per[1:] + self.per[:1])

    def head(self, n):
        out = list(self.pre[:n])
        while len(out) < n:
            out.extend(self.per)
        return tuple(out[:n])

    @property
    def first(self):
        return self.pre[0] if self.pre else self.per[0]

    def prepend(self, x):
        return EPSeq((x,) + self.pre, self.per)

    def __str__(self):
        pre = "".join(map(str, self.pre))
        return f"{pre}({''.join(map(str, self.per))})^inf"


def compare_ep(x, y, signs):
    """Exact comparison of eventually periodic sequences."""
    n = max(len(x.pre), len(y.pre)) + len(x.per) + len(y.per)
    return _cmp_keys(signed_key(x.head(n), signs), signed_key(y.head(n), signs))
