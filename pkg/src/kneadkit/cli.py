"""Command line entry point: ``kneadkit <command> [system] args...``.

Exit codes: 0 success, 1 precondition or input problem, 2 certification,
search or numerical failure, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .classify import DEFAULT_WN_CAP, classify, enumerate_Wn, is_admissible_word, is_periodic
from .construct import DEFAULT_CAP, concat_admissible, concat_bridge, make_dominant
from .experiments import run_persistence, teapot_sweep
from .spectral import (
    char_poly,
    core_indices,
    core_matrix,
    elimination_polys,
    entropy,
    incidence_for,
    incidence_matrix,
    is_irreducible_matrix,
    kneading_poly,
    markov_partition,
    match_off_circle,
    spectrum,
    zeta_denominator,
)
from .tuning import UNIMODAL, base_decomposition, check_tunable, detect_renormalization, find_tuning_pair, tune
from .errors import InvalidGraph, KneadError, PreconditionViolation
from .words import Word, compare_periodic, compare_words, load_system

EXIT_OK, EXIT_PRE, EXIT_FAIL, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# command -> (number of word arguments, help)
COMMANDS = {
    "classify": (1, "classification report of a word"),
    "order": (2, "signed order of two words"),
    "wn": (1, "ordered list W_n of periodic words of length n"),
    "tunable": (0, "tunability audit up to --max-len"),
    "tune": (2, "tune the admissible word a by the unimodal exponent v"),
    "renorm": (1, "renormalization / base decomposition of a word"),
    "dominant": (1, "certified dominant word w^n b"),
    "concat": (2, "certified admissible w v^n"),
    "bridge": (2, "certified admissible a^n c b^n"),
    "markov": (1, "Markov partition and incidence matrix"),
    "spectrum": (1, "eigenvalues of the incidence matrix"),
    "zeta": (1, "characteristic polynomial and zeta denominator"),
    "kneadpoly": (1, "elimination polynomials and F_w"),
    "match": (1, "match off-circle roots of F_w with eigenvalues"),
    "teapot": (0, "teapot point cloud up to --max-len"),
    "persist": (2, "persistence run for w (entropy) and v (poles)"),
}


def build_parser():
    p = _Parser(prog="kneadkit", description="Signed-graph kneading theory toolkit.")
    sub = p.add_subparsers(dest="command", metavar="command")
    for name, (nwords, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("args", nargs="*", help="[system] followed by the word arguments")
        sp.add_argument("--system", help="built-in system name or JSON config path")
        sp.add_argument("--max-len", type=int, default=8)
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--cap", type=int, default=None)
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--eps", type=float, default=0.05)
        sp.add_argument("--n-max", type=int, default=12)
        sp.add_argument("--out", default=None)
    return p


def _split(args):
    nwords = COMMANDS[args.command][0]
    rest = list(args.args)
    if args.system is None:
        if not rest:
            raise UsageError("missing system")
        system = rest.pop(0)
    else:
        system = args.system
    if len(rest) != nwords:
        raise UsageError(f"{args.command} expects {nwords} word argument(s), got {len(rest)}")
    return load_system(system), rest


def _run(args):
    g, rest = _split(args)
    cmd = args.command
    W = [Word.parse(g, r) for r in rest] if cmd != "wn" else []
    cap = args.cap
    if cap is not None and cap < 0:
        raise UsageError("--cap must be non-negative")
    if cmd == "classify":
        return classify(W[0]).to_json()
    if cmd == "order":
        u, v = W
        out = {"u": str(u), "v": str(v), "finite": str(compare_words(u, v))}
        if is_periodic(u) and is_periodic(v):
            out["periodic"] = str(compare_periodic(u, v))
        return out
    if cmd == "wn":
        try:
            n = int(rest[0])
        except ValueError:
            raise UsageError(f"n must be an integer, got {rest[0]!r}")
        words = enumerate_Wn(g, n, cap=DEFAULT_WN_CAP if cap is None else cap)
        return {"system": g.name, "n": n, "words": [str(w) for w in words]}
    if cmd == "tunable":
        return check_tunable(g, args.max_len).to_json()
    if cmd == "tune":
        a, v = W[0], Word.parse(UNIMODAL, rest[1])
        pair = find_tuning_pair(a)
        if pair is None:
            raise PreconditionViolation(f"{a} is not the lower word of a tuning pair")
        return {"pair": pair.to_json(), "exponent": str(v), "word": str(tune(pair, v))}
    if cmd == "renorm":
        w = W[0]
        if is_admissible_word(w):
            hit = detect_renormalization(w)
            if hit is None:
                return {"word": str(w), "renormalizable": False}
            pair, v = hit
            return {"word": str(w), "renormalizable": True, "pair": pair.to_json(), "exponent": str(v)}
        base, v = base_decomposition(w)
        return {"word": str(w), "base": str(base), "exponent": str(v)}
    if cmd == "dominant":
        return make_dominant(W[0], args.n, DEFAULT_CAP if cap is None else cap).to_json()
    if cmd == "concat":
        return concat_admissible(W[0], W[1], args.n).to_json()
    if cmd == "bridge":
        return concat_bridge(W[0], W[1], args.n, DEFAULT_CAP if cap is None else cap).to_json()
    if cmd == "markov":
        part = markov_partition(W[0])
        M = incidence_matrix(part)
        out = part.to_json()
        out["matrix"] = M.entries.tolist()
        out["irreducible"] = bool(is_irreducible_matrix(M))
        out["core"] = core_indices(part, M)
        out["core_irreducible"] = bool(is_irreducible_matrix(core_matrix(part, M)))
        return out
    if cmd == "spectrum":
        M = incidence_for(W[0])
        out = spectrum(M, args.tol if args.tol is not None else 1e-8).to_json()
        out["entropy"] = entropy(M)
        return {"word": str(W[0]), **out}
    if cmd == "zeta":
        M = incidence_for(W[0])
        return {"word": str(W[0]), "char_poly": char_poly(M).to_json(),
                "zeta_denominator": zeta_denominator(M).to_json()}
    if cmd == "kneadpoly":
        return {"word": str(W[0]), "elimination_polys": [p.to_json() for p in elimination_polys(g)],
                "F": kneading_poly(W[0]).to_json()}
    if cmd == "match":
        return match_off_circle(W[0], args.tol if args.tol is not None else 1e-6).to_json()
    if cmd == "teapot":
        cloud = teapot_sweep(g, args.max_len)
        if args.out:
            cloud.write_csv(args.out)
            return {**cloud.to_json(), "out": args.out}
        sys.stdout.write(cloud.to_csv())
        return None
    if cmd == "persist":
        return run_persistence(W[0], W[1], args.eps, args.n_max, DEFAULT_CAP if cap is None else cap).to_json()
    raise UsageError(f"unknown command {cmd}")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        out = _run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionViolation, InvalidGraph) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRE
    except KneadError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except Exception as exc:  # internal error: report, do not dump a traceback
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if out is not None:
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
