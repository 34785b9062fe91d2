"""Compare the compiled and pure-Python sparse kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--size N]

Times rref on seeded random sparse systems over Q and F_p, sparse products,
and one end-to-end suite run per backend.  Both backends must produce identical
results; the script asserts that before reporting timings.
"""

import argparse
import random
import time

from fiax import kernels
from fiax.cli import builtin_text, load_algebra
from fiax.suites import run_suites


def random_rows(n, m, density, p, rng):
    rows = []
    for _ in range(n):
        r = {}
        for c in range(m):
            if rng.random() < density:
                v = rng.randint(-4, 4)
                if p:
                    v %= p
                if v:
                    r[c] = v
        rows.append(r)
    return rows


def timed(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite-spec", default="kx3")
    args = ap.parse_args(argv)

    try:
        kernels.use("cython")
    except ImportError:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
        return 1
    rng = random.Random(args.seed)
    n = args.size
    cases = [
        ("rref Q %dx%d" % (n, n), lambda: kernels.rref_rows(rows_q, 0)),
        ("rref F_5 %dx%d" % (n, n), lambda: kernels.rref_rows(rows_p, 5)),
        ("spmm F_5 %dx%d" % (n, n), lambda: kernels.spmm(cols_p, cols_p, 5)),
        ("spmm Q %dx%d" % (n, n), lambda: kernels.spmm(cols_q, cols_q, 0)),
    ]
    rows_q = random_rows(n, n, 0.08, 0, rng)
    rows_p = random_rows(n, n, 0.08, 5, rng)
    cols_q = random_rows(n, n, 0.08, 0, rng)
    cols_p = random_rows(n, n, 0.08, 5, rng)
    alg = load_algebra(builtin_text(args.suite_spec))
    suite = ("suites %s" % args.suite_spec,
             lambda: [r.status for r in run_suites(alg, ["monad", "coalgebra"])])

    print("%-28s %12s %12s %8s" % ("case", "python (s)", "cython (s)", "speedup"))
    for name, fn in cases + [suite]:
        res = {}
        for backend in ("python", "cython"):
            kernels.use(backend)
            res[backend] = timed(fn, 1 if name.startswith("suites") else args.repeat)
        assert res["python"][1] == res["cython"][1], "backends disagree on %s" % name
        tp, tc = res["python"][0], res["cython"][0]
        print("%-28s %12.4f %12.4f %7.2fx" % (name, tp, tc, tp / tc if tc else float("inf")))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
