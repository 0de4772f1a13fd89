"""Compare the compiled and pure-Python simplex kernels.

    python3 benchmarks/bench_kernel.py [--repeat 5] [--quads 40]

Two timings per backend: the pivot loop alone on prebuilt integer phase-1
tableaux, and the full exact solve (setup, both phases, certificates).  The
results of both backends must agree exactly.
"""
import argparse
import copy
import random
import time
from fractions import Fraction as F

from pmwitness.errors import NoEquivalence
from pmwitness.geometry import PrepVector, PreparationQuad, find_equivalence
from pmwitness.ontic import kernel, lp, simplex


def quads(n, den, seed=1):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        vs = []
        for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            x, y = F(rng.randint(0, den), den), F(rng.randint(0, den), den)
            if x * x + y * y > 1:
                x, y = x / 2, y / 2
            vs.append(PrepVector(sx * x, sy * y))
        q = PreparationQuad(*vs)
        try:
            w = find_equivalence(q)
        except NoEquivalence:
            continue
        out.append((q, w))
    return out


def time_kernel(mod, tableaux, repeat):
    out = []
    t0 = time.perf_counter()
    for _ in range(repeat):
        out = []
        for T0, basis0, m, n in tableaux:
            T, basis = copy.deepcopy(T0), list(basis0)
            out.append(mod.simplex_loop(T, basis, 1, m, n, 10_000))
    return time.perf_counter() - t0, out


def time_solve(mod, programs, repeat):
    original = simplex.kernel
    simplex.kernel = mod
    try:
        out = []
        t0 = time.perf_counter()
        for _ in range(repeat):
            out = [(r.status, r.value) for r in (p.solve() for p in programs)]
        return time.perf_counter() - t0, out
    finally:
        simplex.kernel = original


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quads", type=int, default=40)
    ap.add_argument("--denominator", type=int, default=10**6)
    args = ap.parse_args()
    programs = []
    for q, w in quads(args.quads, args.denominator):
        programs.append(lp.feasibility_program(q, w.p, w.q))
        programs.append(lp.parity_tv_program(q, w.p, w.q))
    tableaux = []
    for p in programs:
        T, basis = simplex.phase1_tableau(p.A, p.b)
        tableaux.append((T, basis, len(p.A), len(p.c)))

    backends = kernel.available_backends()
    print(f"{len(programs)} programs x {args.repeat}, denominator {args.denominator}")
    for label, timer, work in (("pivot loop", time_kernel, tableaux), ("full solve", time_solve, programs)):
        results = {name: timer(mod, work, args.repeat) for name, mod in backends.items()}
        base = results["python"][0]
        for name, (t, _) in results.items():
            print(f"  {label:10s} {name:7s} {t:8.3f}s  x{base / t:.2f}")
        ref = results["python"][1]
        assert all(r == ref for _, r in results.values()), f"backends disagree on {label}"


if __name__ == "__main__":
    main()
