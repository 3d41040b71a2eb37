"""Acceptance checks, one group of tests per criterion.

Every check records its outcome; the terminal summary (see conftest.py)
prints one PASS/FAIL line per criterion.  Parts known to be unattainable
are strict xfails: they still record FAIL, and pytest stays green only as
long as they keep failing.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import itertools
import math
import os
import subprocess
import sys
import time

import pytest

from kneadkit.classify import admissible_words, is_admissible_word, is_dominant, is_irreducible
from kneadkit.construct import concat_admissible, make_dominant
from kneadkit.errors import CertificationFailure, MinimalWord, SearchExhausted
from kneadkit.experiments import inside_targets, run_persistence, vertical_segment
from kneadkit.polys import IntPoly
from kneadkit.spectral import (
    _off_circle,
    entropy,
    incidence_for,
    is_core_irreducible,
    kneading_poly,
    match_off_circle,
    poly_roots,
    spectral_radius,
    spectrum,
)
from kneadkit.tuning import check_tunable, detect_renormalization, find_w_min, is_wmin_power
from kneadkit.words import FOUR_VERTEX, TREE, UNIMODAL, Comparison, Word, compare_periodic
from oracles import block_growth_radius

RESULTS = {}

TITLES = {
    1: "tunability audits up to length 8",
    2: "admissible concatenation certified exhaustively",
    3: "dominant extension certified exhaustively",
    4: "off-circle roots of F_w match off-circle eigenvalues",
    5: "entropy is monotone in the word",
    6: "spectral radius matches block-growth oracle",
    7: "persistence of inside eigenvalues",
    8: "CLI output is byte-identical across runs",
}


def record(criterion, part, ok, detail=""):
    RESULTS.setdefault(criterion, []).append((part, bool(ok), detail))
    line = f"[criterion {criterion}] {part}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    return ok


def summary_lines():
    out = []
    for c in sorted(RESULTS):
        parts = RESULTS[c]
        ok = all(p[1] for p in parts)
        bad = [f"{p[0]} ({p[2]})" for p in parts if not p[1]]
        tail = "; ".join(bad) if bad else f"{len(parts)} part(s)"
        out.append(f"criterion {c} {TITLES[c]}: {'PASS' if ok else 'FAIL'} : {tail}")
    return out


def u(s):
    return Word.parse(UNIMODAL, s)


# --- 1 ------------------------------------------------------------------------------------

def _audit(g, expected):
    t = time.perf_counter()
    rep = check_tunable(g, 8)
    dt = time.perf_counter() - t
    ok = rep.tunable and str(rep.w_min) == expected and dt < 30
    detail = (f"w_min={rep.w_min} (expected {expected}), violations={len(rep.violations)}, "
              f"checked={rep.checked}, {dt:.2f}s")
    return ok, detail


@pytest.mark.parametrize("g,expected", [(UNIMODAL, "1"), (FOUR_VERTEX, "3")], ids=["unimodal", "four-vertex"])
def test_c1_tunable(g, expected):
    ok, detail = _audit(g, expected)
    assert record(1, g.name, ok, detail), detail


@pytest.mark.xfail(strict=True, reason="3210 is not a cycle of the tree graph; the audit finds w_min=310")
def test_c1_tunable_tree():
    ok, detail = _audit(TREE, "3210")
    assert record(1, "tree", ok, detail), detail


# --- 2 ------------------------------------------------------------------------------------

@pytest.mark.parametrize("g", [UNIMODAL, TREE], ids=["unimodal", "tree"])
def test_c2_concat_certified(g):
    t = time.perf_counter()
    ws = [w for w in admissible_words(g, 8) if is_dominant(w)]
    vs = [v for v in admissible_words(g, 6) if is_irreducible(v)]
    triples = failures = 0
    for w, v in itertools.product(ws, vs):
        if compare_periodic(v, w) is not Comparison.LESS:
            continue
        for n in range(1, (len(w) - 1) // len(v) + 1):
            triples += 1
            try:
                out = concat_admissible(w, v, n).word
                failures += not is_admissible_word(out)
            except CertificationFailure:
                failures += 1
    dt = time.perf_counter() - t
    ok = failures == 0 and triples > 0 and dt < 120
    detail = f"{triples} triples, {failures} certification failures, {dt:.2f}s"
    assert record(2, g.name, ok, detail), detail


# --- 3 ------------------------------------------------------------------------------------

def test_c3_dominant_certified():
    t = time.perf_counter()
    w_min = find_w_min(UNIMODAL, 8)
    words = [w for w in admissible_words(UNIMODAL, 7)
             if is_irreducible(w) and detect_renormalization(w) is None and not is_wmin_power(w, w_min)]
    runs = exhausted = 0
    for w in words:
        for n in (1, 2):
            runs += 1
            try:
                out = make_dominant(w, n, 64).word
                exhausted += not (is_dominant(out) and out.letters[: n * len(w)] == w.letters * n)
            except (SearchExhausted, MinimalWord):
                exhausted += 1
    dt = time.perf_counter() - t
    ok = exhausted == 0 and runs > 0 and dt < 120
    detail = f"{len(words)} words x 2 exponents, {exhausted} exhausted, {dt:.2f}s"
    assert record(3, "unimodal", ok, detail), detail


# --- 4 ------------------------------------------------------------------------------------

def test_c4_matching():
    t = time.perf_counter()
    words = admissible_words(UNIMODAL, 6)
    hyp = [w for w in words if is_core_irreducible(w)]
    worst = 0.0
    bad = []
    for w in words:
        rep = match_off_circle(w)
        d = rep.set_distance if not rep.degenerate else math.inf
        if w in hyp:
            d = max(d, rep.multiset_distance if rep.multiset_distance is not None else math.inf)
            worst = max(worst, d)
            if not d < 1e-8:
                bad.append(str(w))
        elif not d < 1e-8:
            bad.append(str(w))
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    detail = (f"{len(hyp)} words with irreducible core (of {len(words)} admissible), "
              f"max pairing distance {worst:.2e}, mismatches {bad}, {dt:.2f}s")
    assert record(4, "matching", ok, detail), detail


def test_c4_anchor_sets_empty():
    w = u("10")
    eig = _off_circle(spectrum(incidence_for(w)).eigenvalues, 1e-6)
    roots = _off_circle(poly_roots(kneading_poly(w)), 1e-6)
    ok = eig.size == 0 and roots.size == 0
    detail = f"off-circle roots {roots.tolist()}, off-circle eigenvalues {eig.tolist()}"
    assert record(4, "anchor 10 off-circle sets", ok, detail), detail


@pytest.mark.xfail(strict=True, reason="the stated anchor polynomial contradicts matching; see decisions ledger")
def test_c4_anchor_polynomial():
    F = kneading_poly(u("10"))
    ok = F == IntPoly([0, -1, 1])
    assert record(4, "anchor F_10 = x^2 - x", ok, f"computed F_10 = {F}"), str(F)


# --- 5 ------------------------------------------------------------------------------------

def test_c5_entropy_monotone():
    t = time.perf_counter()
    words = admissible_words(UNIMODAL, 8)
    h = {w: entropy(incidence_for(w)) for w in words}
    pairs = violations = 0
    for a, b in itertools.product(words, repeat=2):
        if compare_periodic(a, b) in (Comparison.LESS, Comparison.EQUAL):
            pairs += 1
            violations += h[a] > h[b] + 1e-9
    dt = time.perf_counter() - t
    ok = violations == 0 and dt < 120
    detail = f"{len(words)} words, {pairs} ordered pairs, {violations} violations, {dt:.2f}s"
    assert record(5, "unimodal", ok, detail), detail


# --- 6 ------------------------------------------------------------------------------------

def test_c6_block_oracle():
    t = time.perf_counter()
    worst = 0.0
    words = admissible_words(UNIMODAL, 6)
    for w in words:
        worst = max(worst, abs(spectral_radius(incidence_for(w)) - block_growth_radius(w, 14)))
    dt = time.perf_counter() - t
    ok = worst < 1e-6 and dt < 60
    detail = f"{len(words)} words, max |rho - oracle| = {worst:.2e}, {dt:.2f}s"
    assert record(6, "oracle", ok, detail), detail


def test_c6_anchors():
    h10 = entropy(incidence_for(u("10")))
    hfull = entropy(UNIMODAL.adjacency)
    ok = abs(h10) < 1e-10 and abs(hfull - math.log(2)) < 1e-10
    detail = f"entropy(10) = {h10:.3g}, full shift = {hfull:.15f}"
    assert record(6, "anchors", ok, detail), detail


# --- 7 ------------------------------------------------------------------------------------

def _persistence_pairs():
    words = admissible_words(UNIMODAL, 7)
    ws = [w for w in words if is_irreducible(w) and detect_renormalization(w) is None and is_core_irreducible(w)]
    vs = [v for v in admissible_words(UNIMODAL, 5)
          if any(abs(z) < 0.95 for z in inside_targets(incidence_for(v)))]
    h = {x: entropy(incidence_for(x)) for x in set(ws) | set(vs)}
    return [(w, v) for w in ws for v in vs
            if compare_periodic(v, w) is Comparison.LESS and h[v] < h[w]], h


def test_c7_pairs():
    t = time.perf_counter()
    pairs, _ = _persistence_pairs()
    failed = []
    ns = []
    for w, v in pairs:
        res = run_persistence(w, v, 0.05, 12)
        if not res.success:
            failed.append(f"{w}/{v} best {res.achieved_epsilon:.3g}")
        else:
            ns.append(res.achieved_n)
    dt = time.perf_counter() - t
    ok = len(pairs) >= 3 and not failed and dt < 300
    detail = (f"{len(pairs)} pairs, {len(pairs) - len(failed)} succeeded "
              f"(n up to {max(ns) if ns else None}), failures {failed}, {dt:.2f}s")
    assert record(7, "pairs", ok, detail), detail


def test_c7_vertical_segment():
    v = u("101")
    z = inside_targets(incidence_for(v))
    pairs, h = _persistence_pairs()
    ws, seen = [], set()
    for w, vv in pairs:
        if vv == v and round(h[w], 9) not in seen:
            seen.add(round(h[w], 9))
            ws.append(w)
    res = vertical_segment(v, ws, 0.05, 12)
    hs = sorted(r.target_entropy for r in res)
    ok = len(ws) >= 3 and all(r.success for r in res)
    detail = (f"z = {z[0].real:.6f}, {len(ws)} entropy targets in [{hs[0]:.4f}, {hs[-1]:.4f}], "
              f"{sum(r.success for r in res)} succeeded")
    assert record(7, "vertical segment", ok, detail), detail


# --- 8 ------------------------------------------------------------------------------------

CLI_RUNS = [
    ["classify", "unimodal", "1001"],
    ["order", "unimodal", "101", "1001"],
    ["wn", "tree", "6"],
    ["tunable", "tree", "--max-len", "8"],
    ["tune", "unimodal", "1001", "1001"],
    ["renorm", "unimodal", "10001001"],
    ["dominant", "unimodal", "1011010"],
    ["concat", "unimodal", "1001", "101"],
    ["bridge", "unimodal", "1001", "101", "--n", "2"],
    ["markov", "four-vertex", "3021"],
    ["spectrum", "unimodal", "100111101"],
    ["zeta", "tree", "30210"],
    ["kneadpoly", "four-vertex", "3021"],
    ["match", "tree", "30210"],
    ["persist", "unimodal", "10001", "101"],
    ["teapot", "unimodal", "--max-len", "10", "--out", "{out}"],
]


def _cli(argv, tmp, threads="1"):
    out = str(tmp / "cloud.csv")
    argv = [a.replace("{out}", out) for a in argv]
    env = dict(os.environ, KNEADKIT_THREADS=threads)
    r = subprocess.run([sys.executable, "-m", "kneadkit", *argv], capture_output=True, env=env)
    blob = bytes([r.returncode]) + r.stdout + r.stderr
    if "--out" in argv:
        with open(out, "rb") as fh:
            blob += fh.read()
    return blob


def test_c8_determinism(tmp_path):
    t = time.perf_counter()
    differ = []
    for argv in CLI_RUNS:
        first = _cli(argv, tmp_path)
        second = _cli(argv, tmp_path)
        if first != second or first[0] != 0:
            differ.append(argv[0])
    a = _cli(CLI_RUNS[-1], tmp_path, threads="1")
    b = _cli(CLI_RUNS[-1], tmp_path, threads="4")
    if a != b:
        differ.append("teapot across thread counts")
    dt = time.perf_counter() - t
    ok = not differ
    detail = f"{len(CLI_RUNS)} commands run twice plus teapot with 1 and 4 workers, differing {differ}, {dt:.1f}s"
    assert record(8, "cli", ok, detail), detail


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
