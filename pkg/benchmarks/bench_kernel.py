"""Compare the compiled and pure-Python embedding kernels.

    python3 benchmarks/bench_kernel.py [--pairs N] [--repeat K]

Two workloads: raw containment queries on random pairs (backend chosen per
call), and a small exact search run in a subprocess with and without
CONFEX_PURE=1 so the whole import path switches.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from confex import kernel
from confex.containment import Mode, contains
from confex.matrix import AlphMatrix

SEARCH = ("from confex.search import forb_exact; from confex.patterns import family_T; "
          "import time; t=time.perf_counter(); forb_exact(4, 3, family_T(2, 3)); "
          "print(time.perf_counter()-t)")


def workload(rng, pairs):
    out = []
    for _ in range(pairs):
        r = rng.randint(2, 3)
        m, n = rng.randint(4, 8), rng.randint(8, 24)
        A = AlphMatrix(r, m, tuple(tuple(rng.randrange(r) for _ in range(m)) for _ in range(n)))
        p, q = rng.randint(2, 3), rng.randint(2, 4)
        F = AlphMatrix(r, p, tuple(tuple(rng.randrange(r) for _ in range(p)) for _ in range(q)))
        out.append((F, A, rng.choice(list(Mode))))
    return out


def run(pairs, backend):
    for F, A, mode in pairs:
        contains(F, A, mode, backend=backend)


def search_time(pure):
    env = dict(os.environ, CONFEX_PURE="1" if pure else "0")
    res = subprocess.run([sys.executable, "-c", SEARCH], env=env, capture_output=True,
                         text=True, check=True)
    return float(res.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    pairs = workload(random.Random(args.seed), args.pairs)
    backends = ["python"] + (["cython"] if kernel.HAVE_COMPILED else [])
    times = {}
    for b in backends:
        times[b] = min(timeit.repeat(lambda: run(pairs, b), number=1, repeat=args.repeat))
        print(f"contains x{args.pairs:<6} {b:7s} {times[b]:8.3f}s")
    if "cython" in times:
        print(f"speedup {times['python'] / times['cython']:.1f}x")
        py, cy = search_time(True), search_time(False)
        print(f"forb_exact(4,3,T_2(3))  python {py:8.3f}s  cython {cy:8.3f}s  "
              f"speedup {py / cy:.1f}x")
    else:
        print("compiled kernel not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
