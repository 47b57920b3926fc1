"""Compare the compiled and pure-Python polynomial kernels.

Two measurements:

* ``mul`` alone on random dense-ish polynomials, both backends in-process;
* an end-to-end WDVV sweep, each backend in its own interpreter
  (the backend is chosen once at import, via ``WDVVKIT_PURE_PYTHON``).

Usage: ``python benchmarks/bench_kernels.py [--repeat N]``
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from wdvvkit import _pykernels

try:
    from wdvvkit import _ckernels
except ImportError:
    _ckernels = None

SWEEP = """
import random, time
from wdvvkit.algebra import Poly, VarCtx
from wdvvkit.wdvv import Prepotential, check_wdvv
from wdvvkit.kernels import BACKEND
rng = random.Random(0)
ctx = VarCtx.standard(3)
cases = []
while len(cases) < 60:
    terms = {}
    for _ in range(8):
        e = [0, 0, 0]
        for _ in range(rng.randint(3, 4)):
            e[rng.randrange(3)] += 1
        terms[tuple(e)] = rng.randint(-5, 5)
    P = Prepotential(ctx, Poly(ctx, terms) + Poly.var(ctx, 1) ** 2 * Poly.var(ctx, 3) / 2)
    try:
        check_wdvv(P)
    except ValueError:
        continue
    cases.append(P)
t = time.perf_counter()
for P in cases:
    check_wdvv(P)
print(BACKEND, time.perf_counter() - t)
"""


def random_poly(rng, n=3, degree=6, nterms=25):
    out = {}
    for _ in range(nterms):
        e = [0] * n
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(n)] += 1
        out[tuple(e)] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 6))
    return out


def bench_mul(repeat: int) -> None:
    rng = random.Random(1)
    pairs = [(random_poly(rng), random_poly(rng)) for _ in range(20)]
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    results = {}
    for name, mod in backends:
        t = min(timeit.repeat(lambda: [mod.mul(a, b) for a, b in pairs], number=5, repeat=repeat))
        results[name] = t
        print(f"mul      {name:7s} {t * 1000:9.1f} ms")
    if len(results) == 2:
        print(f"mul      speedup {results['python'] / results['cython']:.2f}x")


def bench_sweep() -> None:
    results = {}
    for pure in ("1", "0"):
        env = dict(os.environ, WDVVKIT_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", SWEEP], env=env, capture_output=True, text=True, check=True)
        name, t = out.stdout.split()
        results[name] = float(t)
        print(f"wdvv     {name:7s} {float(t) * 1000:9.1f} ms")
    if {"python", "cython"} <= results.keys():
        print(f"wdvv     speedup {results['python'] / results['cython']:.2f}x")


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; timing the fallback only")
    bench_mul(args.repeat)
    bench_sweep()


if __name__ == "__main__":
    main()
