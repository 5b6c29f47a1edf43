"""Compiled vs numpy kernels on the two exhaustive rank passes.

    python3 benchmarks/bench_kernels.py [--p 11] [--repeat 3]
"""

import argparse
import time

import numpy as np

from genus8 import kernels
from genus8.fano import build_threefold
from genus8.field import GF
from genus8.projective import count


def best_of(fn, repeat):
    best, out = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=11)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    p = args.p
    pair = build_threefold(args.seed, GF(p))
    grams = pair.u5_grams()
    ty, tx = pair.palatini_tensors()
    n4, n5 = count(p, 5), count(p, 6)
    print(f"p={p}: form_ranks over {n4} points of P^4, palatini_ranks over {n5} points of P^5")
    results = {}
    for name in kernels.available():
        k = kernels.get_backend(name)
        t_form, f = best_of(lambda: k.form_ranks(p, grams, 0, n4), args.repeat)
        t_pal, r = best_of(lambda: k.palatini_ranks(p, ty, tx, 0, n5), args.repeat)
        results[name] = (f, r)
        print(f"{name:>7}: form_ranks {t_form:8.3f}s   palatini_ranks {t_pal:8.3f}s")
    if len(results) == 2:
        (fa, ra), (fb, rb) = results["cython"], results["python"]
        same = np.array_equal(fa, fb) and all(np.array_equal(x, y) for x, y in zip(ra, rb))
        print(f"backends agree: {same}")


if __name__ == "__main__":
    main()
