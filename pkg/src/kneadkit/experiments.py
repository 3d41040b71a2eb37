"""Teapot point clouds and the persistence experiment."""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .classify import admissible_words, is_admissible_word
from .construct import DEFAULT_CAP, concat_bridge
from .errors import PreconditionViolation
from .spectral import (
    entropy,
    incidence_matrix,
    is_core_irreducible,
    markov_partition,
    spectrum,
)
from .tuning import detect_renormalization
from .words import Comparison, Word, compare_periodic


def worker_count():
    """Parallelism cap from KNEADKIT_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("KNEADKIT_THREADS", "1")))
    except ValueError:
        return 1


def _fmt(x):
    x = float(x)
    if x == 0.0:
        x = 0.0  # no "-0"
    return f"{x:.17g}"


@dataclass
class TeapotCloud:
    system: str
    max_len: int
    rows: list = field(default_factory=list)

    def to_csv(self):
        lines = ["re,im,lambda,word"]
        for re, im, lam, word in self.rows:
            lines.append(f"{_fmt(re)},{_fmt(im)},{_fmt(lam)},{word}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())

    def to_json(self):
        return {"system": self.system, "max_len": self.max_len, "rows": len(self.rows),
                "words": len({r[3] for r in self.rows})}


def _teapot_rows(w):
    sp = spectrum(incidence_matrix(markov_partition(w)))
    return [(z.real, z.imag, sp.radius, str(w)) for z in sp.eigenvalues]


def teapot_sweep(graph, max_len, workers=None):
    """(eigenvalue, spectral radius) for every admissible word up to max_len.

    Rows come out grouped by word (in enumeration order) with eigenvalues
    sorted by (re, im), independent of the worker count.
    """
    if max_len < 1:
        raise PreconditionViolation("max_len must be at least 1")
    words = admissible_words(graph, max_len)
    workers = workers or worker_count()
    if workers > 1 and len(words) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_teapot_rows, words))
    else:
        chunks = [_teapot_rows(w) for w in words]
    cloud = TeapotCloud(graph.name, max_len)
    for rows in chunks:
        cloud.rows.extend(rows)
    return cloud


# ---------------------------------------------------------------------------
# persistence


@dataclass
class PersistenceStep:
    n: int
    word: str
    distances: list
    entropy_gap: float

    @property
    def distance(self):
        return max(self.distances) if self.distances else 0.0

    def to_json(self):
        return {"n": self.n, "word": self.word, "distances": [float(d) for d in self.distances],
                "max_distance": float(self.distance), "entropy_gap": float(self.entropy_gap)}


@dataclass
class PersistenceResult:
    w: str
    v: str
    eps: float
    targets: list
    target_entropy: float
    steps: list = field(default_factory=list)
    success: bool = False
    achieved_n: int | None = None

    @property
    def achieved_epsilon(self):
        if not self.steps:
            return 0.0 if self.success else math.inf
        return min(max(s.distance, s.entropy_gap) for s in self.steps)

    def to_json(self):
        return {
            "w": self.w,
            "v": self.v,
            "eps": self.eps,
            "targets": [[float(z.real), float(z.imag)] for z in self.targets],
            "target_entropy": self.target_entropy,
            "success": self.success,
            "achieved_n": self.achieved_n,
            "achieved_epsilon": float(self.achieved_epsilon),
            "steps": [s.to_json() for s in self.steps],
        }


def inside_targets(M, tol=1e-8):
    """Distinct nonzero eigenvalues strictly inside the unit circle."""
    sp = spectrum(M, tol)
    out = []
    for z in sp.inside:
        if abs(z) > tol and all(abs(z - u) > 1e-9 for u in out):
            out.append(complex(z))
    return out


def run_persistence(w, v, eps, n_max, search_cap=DEFAULT_CAP):
    """Drive bridge words a^n c b^n toward an inside pole of v and the entropy of w."""
    if not eps > 0:
        raise PreconditionViolation("eps must be positive")
    if n_max < 1:
        raise PreconditionViolation("n_max must be at least 1")
    for name, x in (("w", w), ("v", v)):
        if not is_admissible_word(x):
            raise PreconditionViolation(f"{name}={x} is not admissible")
    if detect_renormalization(w) is not None:
        raise PreconditionViolation(f"w={w} is renormalizable")
    if not is_core_irreducible(w):
        raise PreconditionViolation(f"the incidence matrix of w={w} is not irreducible")
    if compare_periodic(v, w) is not Comparison.LESS:
        raise PreconditionViolation(f"v^inf < w^inf fails for v={v}, w={w}")
    h = entropy(incidence_matrix(markov_partition(w)))
    targets = inside_targets(incidence_matrix(markov_partition(v)))
    res = PersistenceResult(str(w), str(v), eps, targets, h)
    if not targets:
        res.success = True
        return res
    for n in range(1, n_max + 1):
        wn = concat_bridge(w, v, n, search_cap).word
        M = incidence_matrix(markov_partition(wn))
        eig = spectrum(M).eigenvalues
        dists = [float(np.abs(eig - z).min()) for z in targets]
        step = PersistenceStep(n, str(wn), dists, abs(entropy(M) - h))
        res.steps.append(step)
        if step.distance < eps and step.entropy_gap < eps:
            res.success = True
            res.achieved_n = n
            break
    return res


def vertical_segment(v, ws, eps, n_max, search_cap=DEFAULT_CAP):
    """Persistence runs for one v against several w of distinct entropy.

    Returns the list of results; the property holds when every run succeeds.
    """
    v = v if isinstance(v, Word) else Word.parse(ws[0].graph, v)
    return [run_persistence(w, v, eps, n_max, search_cap) for w in ws]
