"""Vertex enumeration: compiled kernel vs pure Python.

    python3 benchmarks/bench_vertices.py [--sizes 6 8 10 12] [--count 20] [--seed 0]

Builds J_E systems for random kernels of each size, then times row reduction
plus basic-solution enumeration on both backends (no caching involved) and
checks that both return the same vertices.
"""

from __future__ import annotations

import argparse
import random
import time

from qpk import _backend
from qpk.generators import random_partition, random_structured_kernel
from qpk.polytope import integer_system, je_hrep


def systems(n: int, count: int, rng: random.Random):
    out = []
    while len(out) < count:
        e = random_partition(n, rng, max_blocks=max(2, n // 2))
        rows = integer_system(je_hrep(random_structured_kernel(e, rng), e))
        if rows is not None:
            out.append(rows)
    return out


def enumerate_all(batch, n: int, backend: str):
    found = []
    for rows in batch:
        red = _backend.row_reduce(rows, n, backend)
        found.append(None if red is None else sorted(set(_backend.basic_solutions(red, n, backend))))
    return found


def timed(batch, n, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        result = enumerate_all(batch, n, backend)
        best = min(best, time.perf_counter() - t)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 6, 8, 10, 12])
    ap.add_argument("--count", type=int, default=20, help="systems per size")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = _backend.available()
    if "cython" not in backends:
        print("compiled extension not available; timing the Python backend only")
    rng = random.Random(args.seed)
    print(f"{'n':>3} {'systems':>8} " + " ".join(f"{b + ' ms':>12}" for b in backends) + f" {'speedup':>8}")
    for n in args.sizes:
        batch = systems(n, args.count, rng)
        times, results = {}, {}
        for b in backends:
            times[b], results[b] = timed(batch, n, b, args.repeat)
        if len(set(map(repr, results.values()))) != 1:
            raise SystemExit(f"backends disagree at n={n}")
        speed = f"{times['python'] / times['cython']:.1f}x" if "cython" in times else "-"
        print(f"{n:>3} {len(batch):>8} " + " ".join(f"{times[b] * 1e3:>12.1f}" for b in backends)
              + f" {speed:>8}")


if __name__ == "__main__":
    main()
