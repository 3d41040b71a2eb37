"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both modules are imported directly, so KNEADKIT_BACKEND does not matter
here.  The first numba call (compilation) is excluded from the timings.
"""
import argparse
import time

import numpy as np
from scipy.sparse import csr_matrix

from kneadkit import _kernels_numba as nb
from kneadkit import _kernels_numpy as npk
from kneadkit.construct import concat_bridge
from kneadkit.spectral import _newton_init, incidence_for, _float_coeffs, char_poly
from kneadkit.words import UNIMODAL, Word


def best_of(fn, repeat):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)


def cases():
    w = concat_bridge(Word.parse(UNIMODAL, "1001"), Word.parse(UNIMODAL, "10111"), 10).word
    word, sgn = w.array, UNIMODAL.sign_array
    M = incidence_for(w).entries
    csr = csr_matrix(M + 0)
    indptr, indices = csr.indptr.astype(np.int64), csr.indices.astype(np.int64)
    data = csr.data.astype(np.float64)
    p = 2147483629
    core = char_poly(M).strip_zero_roots()[0]
    c = _float_coeffs(core)
    z0 = _newton_init(c)
    yield "shift_witness", len(word), lambda k: k.shift_witness(word, sgn)
    yield "dominance_witness", len(word), lambda k: k.dominance_witness(word, sgn, 1)
    yield "charpoly_mod", M.shape[0], lambda k: k.charpoly_mod(M, p)
    yield "aberth", core.degree, lambda k: k.aberth(c, z0, 500, 1e-15)
    yield "cw_radius", M.shape[0], lambda k: k.cw_radius(indptr, indices, data, 1.0, 100_000, 1e-13)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':<20}{'size':>6}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>10}")
    for name, size, call in cases():
        call(nb)  # compile
        t_np = best_of(lambda: call(npk), args.repeat)
        t_nb = best_of(lambda: call(nb), args.repeat)
        print(f"{name:<20}{size:>6}{t_np * 1e3:>14.3f}{t_nb * 1e3:>14.3f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
