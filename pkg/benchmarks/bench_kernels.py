"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--reps N]

Times F_p rank of random square matrices and batched evaluation of the
hessian entries of the Pfaffian slice (14 variables), the two operations
that dominate sampled profiles.
"""

import argparse
import random
import time

from vhess import _kernels_py
from vhess.families import pf_slice
from vhess.hessian import hessian_matrix
from vhess.linalg import CompiledMatrix
from vhess.sampling import DEFAULT_PRIME

try:
    from vhess import _kernels as native
except ImportError:
    native = None


def _timeit(fn, reps):
    t = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t) / reps


def _batch_args():
    cm = CompiledMatrix(hessian_matrix(pf_slice(2).poly), DEFAULT_PRIME)
    return cm.batch_args, cm.nvars


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=200)
    args = ap.parse_args(argv)
    p = DEFAULT_PRIME
    rng = random.Random(0)
    backends = [("python", _kernels_py)] + ([("cython", native)] if native else [])
    if native is None:
        print("compiled extension not available; timing the Python kernels only")

    rows = []
    for n in (8, 16, 32):
        M = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        for name, mod in backends:
            rows.append((f"rank_mod_p {n}x{n}", name, _timeit(lambda: mod.rank_mod_p(M, p), args.reps)))

    (exps, coefs, offsets, nvars, maxdeg), n = _batch_args()
    pt = [rng.randrange(p) for _ in range(n)]
    for name, mod in backends:
        batch = mod.PolyBatch(exps, coefs, offsets, nvars, maxdeg, p)
        rows.append((f"hessian entries pf_slice(2), {len(coefs)} terms", name,
                     _timeit(lambda: batch.evaluate(pt), args.reps)))

    print(f"{'kernel':44s} {'backend':8s} {'time/call':>12s} {'speedup':>8s}")
    base = {}
    for label, name, t in rows:
        if name == "python":
            base[label] = t
        speed = base[label] / t
        print(f"{label:44s} {name:8s} {t * 1e6:10.1f}us {speed:7.1f}x")


if __name__ == "__main__":
    main()
