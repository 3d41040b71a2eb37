import itertools

import pytest

import kneadkit.construct as construct
from kneadkit.classify import admissible_words, classify, is_admissible_word, is_dominant, is_irreducible
from kneadkit.construct import compute_psrs, concat_admissible, concat_bridge, make_dominant
from kneadkit.errors import CertificationFailure, MinimalWord, NotAdmissible, PreconditionViolation
from kneadkit.tuning import detect_renormalization
from kneadkit.words import FOUR_VERTEX, TREE, UNIMODAL, Comparison, Word, compare_periodic
from oracles import naive_compare_periodic


def u(s):
    return Word.parse(UNIMODAL, s)


# --- PS / RS ----------------------------------------------------------------------

@pytest.mark.parametrize("s", ["1001", "101"])
def test_psrs_empty_examples(s):
    r = compute_psrs(u(s))
    assert r.ps == () and r.rs == ()


def test_psrs_nonempty():
    r = compute_psrs(u("101110"))
    assert [str(v) for v in r.ps] == ["10"]
    assert [str(z) for z in r.rs] == ["1110"]


def test_psrs_preconditions():
    with pytest.raises(PreconditionViolation):
        compute_psrs(u("10011001"))
    with pytest.raises(NotAdmissible):
        compute_psrs(u("10"))


@pytest.mark.parametrize("g,max_len", [(UNIMODAL, 12), (FOUR_VERTEX, 6), (TREE, 12)])
def test_psrs_empty_iff_dominant(g, max_len):
    for w in admissible_words(g, max_len):
        if not is_irreducible(w):
            continue
        r = compute_psrs(w)
        for v, z in zip(r.ps, r.rs):
            assert 0 < len(v) < len(w) and v + z == w and z[0] == g.top
            assert w[len(w) - len(v):] == v
        assert (r.ps == ()) == is_dominant(w), w


# --- admissible concatenation --------------------------------------------------------

def test_concat_example():
    cw = concat_admissible(u("1001"), u("101"), 1)
    assert str(cw.word) == "1001101" and cw.certificate.admissible
    assert cw.certificate == classify(cw.word)


@pytest.mark.parametrize("w,v,n", [("1001", "101", 2), ("101", "1001", 1), ("1001", "101", 0), ("11", "1", 1),
                                   ("1001", "1010", 1), ("10", "1", 1)])
def test_concat_preconditions(w, v, n):
    with pytest.raises(PreconditionViolation):
        concat_admissible(u(w), u(v), n)


@pytest.mark.parametrize("g,wl,vl", [(UNIMODAL, 7, 5), (FOUR_VERTEX, 5, 3), (TREE, 7, 5)])
def test_concat_certifies_on_all_valid_triples(g, wl, vl):
    ws = [w for w in admissible_words(g, wl) if is_dominant(w)]
    vs = [v for v in admissible_words(g, vl) if is_irreducible(v)]
    count = 0
    for w, v in itertools.product(ws, vs):
        if compare_periodic(v, w) is not Comparison.LESS:
            continue
        for n in range(1, (len(w) - 1) // len(v) + 1):
            cw = concat_admissible(w, v, n)
            assert is_admissible_word(cw.word)
            count += 1
    assert count > 0


def test_certification_failure_surfaces(monkeypatch):
    monkeypatch.setattr(construct, "classify", lambda w: classify(u("10")))
    with pytest.raises(CertificationFailure):
        concat_admissible(u("1001"), u("101"), 1)


# --- dominant words --------------------------------------------------------------------

def test_make_dominant_examples():
    assert str(make_dominant(u("101"), 1).word) == "10111"
    assert str(make_dominant(u("1001"), 1).word) == "100111"


@pytest.mark.parametrize("s,exc", [("11", PreconditionViolation), ("10", NotAdmissible),
                                   ("1000100110011000", PreconditionViolation)])
def test_make_dominant_preconditions(s, exc):
    with pytest.raises(exc):
        make_dominant(u(s), 1)


def test_make_dominant_rejects_w_min_power():
    with pytest.raises((MinimalWord, PreconditionViolation)):
        make_dominant(u("1"), 1)


@pytest.mark.parametrize("g,max_len", [(UNIMODAL, 7), (TREE, 9), (FOUR_VERTEX, 5)])
def test_make_dominant_sweep(g, max_len):
    for w in admissible_words(g, max_len):
        if not is_irreducible(w) or detect_renormalization(w) is not None:
            continue
        try:
            construct._check_dominant_pre(w, 1)
        except MinimalWord:
            continue
        for n in (1, 2):
            cw = make_dominant(w, n, 64)
            assert cw.word.letters[: n * len(w)] == w.letters * n
            assert is_dominant(cw.word)


def test_concatenation_pairs_meet_their_hypotheses(monkeypatch):
    """Every (w, t) the recursion hands to the dovetail search is checked independently."""
    seen = []
    real = construct._dovetail

    def spy(w, n, t, cap):
        seen.append((w, t))
        return real(w, n, t, cap)

    monkeypatch.setattr(construct, "_dovetail", spy)
    for w in admissible_words(UNIMODAL, 9):
        if is_irreducible(w) and not is_dominant(w) and detect_renormalization(w) is None:
            try:
                make_dominant(w, 1)
            except MinimalWord:
                pass
    assert seen
    sg = UNIMODAL.signs
    for w, t in seen:
        assert is_dominant(t)
        assert naive_compare_periodic(t.letters, w.letters, sg) < 0
        for z in compute_psrs(w).rs:
            assert naive_compare_periodic(t.letters, z.letters, sg) > 0


# --- bridges ------------------------------------------------------------------------------

def test_bridge_examples():
    out = concat_bridge(u("1001"), u("101"), 1).word
    assert str(out).startswith("1001") and str(out).endswith("101") and is_admissible_word(out)
    out = concat_bridge(u("1001"), u("101"), 2).word
    assert str(out).startswith("10011001") and str(out).endswith("101101") and is_admissible_word(out)


@pytest.mark.parametrize("a,b", [("1000100110011000", "101"), ("101", "1001"), ("10", "1")])
def test_bridge_preconditions(a, b):
    with pytest.raises(PreconditionViolation):
        concat_bridge(u(a), u(b), 1)


@pytest.mark.parametrize("g,max_len", [(UNIMODAL, 6), (TREE, 8)])
def test_bridge_output_is_sandwiched(g, max_len):
    words = admissible_words(g, max_len)
    done = 0
    for a, b in itertools.product(words, repeat=2):
        if detect_renormalization(a) is not None or compare_periodic(b, a) is not Comparison.LESS:
            continue
        try:
            cw = concat_bridge(a, b, 1)
        except PreconditionViolation:
            continue
        o = cw.word
        assert o.letters[: len(a)] == a.letters and o.letters[len(o) - len(b):] == b.letters
        assert compare_periodic(b, o) is Comparison.LESS
        assert compare_periodic(o, a) is Comparison.LESS
        done += 1
    assert done > 0
