"""Compare the compiled and pure-Python polynomial kernels.

Runs the raw kernels on random sparse polynomials, then one end-to-end
workload (pal to depth R and gamma_s for the weight-5 ds element) in a fresh
interpreter per backend, since the backend is fixed at import time.

    python3 benchmarks/bench_kernel.py [--depth 5] [--repeat 3]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from gmpy2 import mpq

from mouldkit import _kernel_py as py

try:
    from mouldkit import _kernel as cy
except ImportError:
    cy = None

WORKLOAD = r"""
import json, time
from mouldkit import kernel
from mouldkit.ds import solve_ds
from mouldkit.pal import PalTable
from mouldkit.pipeline import gamma_s
R = %d
t0 = time.perf_counter()
T = PalTable.compute(R)
T.log_invpal
t1 = time.perf_counter()
gamma_s(solve_ds(5)[0], R, T)
t2 = time.perf_counter()
print(json.dumps({"backend": kernel.BACKEND, "pal": t1 - t0, "gamma_s": t2 - t1}))
"""


def random_poly(rng, nvars, terms, degree):
    out = {}
    for _ in range(terms):
        e = [rng.randint(0, degree) for _ in range(nvars)]
        c = mpq(rng.randint(-50, 50), rng.randint(1, 12))
        if c:
            out[py.pack(e)] = c
    return out


def bench_ops(repeat):
    rng = random.Random(0)
    p = random_poly(rng, 5, 200, 6)
    q = random_poly(rng, 5, 200, 6)
    form = (1, -1, 2, 0, 1)
    prod = py.mul(p, py.linear_poly(form))
    point = [mpq(i + 2, 3) for i in range(5)]
    cases = {
        "mul 200x200": lambda k: k.mul(p, q),
        "div_linear": lambda k: k.div_linear(prod, form),
        "evaluate": lambda k: k.evaluate(prod, point),
    }
    rows = []
    for name, fn in cases.items():
        tp = min(timeit.repeat(lambda: fn(py), number=5, repeat=repeat)) / 5
        tc = min(timeit.repeat(lambda: fn(cy), number=5, repeat=repeat)) / 5 if cy else None
        rows.append((name, tp, tc))
    return rows


def bench_pipeline(depth):
    out = {}
    for pure in ("1", "0"):
        env = dict(os.environ, MOULDKIT_PURE=pure)
        res = subprocess.run([sys.executable, "-c", WORKLOAD % depth], env=env,
                             capture_output=True, text=True, check=True)
        d = json.loads(res.stdout.strip().splitlines()[-1])
        out[d["backend"]] = d
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if cy is None:
        print("compiled kernel not available; only the pure-Python kernel is timed")
    print("%-14s %12s %12s %8s" % ("kernel op", "python [ms]", "cython [ms]", "speedup"))
    for name, tp, tc in bench_ops(args.repeat):
        if tc is None:
            print("%-14s %12.2f %12s %8s" % (name, 1e3 * tp, "-", "-"))
        else:
            print("%-14s %12.2f %12.2f %7.1fx" % (name, 1e3 * tp, 1e3 * tc, tp / tc))
    res = bench_pipeline(args.depth)
    print()
    print("end to end, depth %d" % args.depth)
    for b, d in sorted(res.items()):
        print("  %-7s pal %.2fs  gamma_s %.2fs" % (b, d["pal"], d["gamma_s"]))
    if "cython" in res and "python" in res:
        tot = {b: d["pal"] + d["gamma_s"] for b, d in res.items()}
        print("  speedup %.1fx" % (tot["python"] / tot["cython"]))


if __name__ == "__main__":
    main()
