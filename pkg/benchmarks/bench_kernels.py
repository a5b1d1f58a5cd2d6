#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-Python fallback.

Three workloads, in increasing realism:

    matmul     raw k x k modular matrix multiplication
    idemscan   oracle-style sweep: square every element of M_2(Z/4)
    decompose  full engine runs on random elements of M_2(Z/2^8)

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from adicclean import _kernels, adic, engine


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_matmul(k, m, count=20000):
    rng = random.Random(k * m)
    mats = [tuple(rng.randrange(m) for _ in range(k * k)) for _ in range(64)]

    def run():
        acc = mats[0]
        for i in range(count):
            acc = _kernels.mat_mul(acc, mats[i % 64], k, m)
        return acc

    return run, count


def bench_idemscan():
    spec = adic.padic_matrix(2, 2, 2)

    def run():
        hits = 0
        for i in range(spec.cardinality):
            e = spec.element_at(i)
            if (e * e).payload == e.payload:
                hits += 1
        return hits

    return run, 256


def bench_decompose():
    spec = adic.padic_matrix(2, 2, 8)
    rng = random.Random(99)
    xs = [spec.random_element(rng) for _ in range(50)]

    def run():
        for x in xs:
            engine.decompose(x, check_invariants=False)

    return run, 50


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions, best-of (default 3)")
    args = parser.parse_args()

    backends = _kernels.available_backends()
    if "compiled" not in backends:
        print("compiled kernels not built; benchmarking pure backend only")

    workloads = [
        ("matmul 2x2 mod 256", *bench_matmul(2, 256)),
        ("matmul 3x3 mod 243", *bench_matmul(3, 243)),
        ("idemscan M_2(Z/4)", *bench_idemscan()),
        ("decompose M_2(Z/2^8) x50", *bench_decompose()),
    ]

    print(f"{'workload':<26} {'backend':<9} {'time':>9} {'per op':>11}")
    for name, fn, ops in workloads:
        times = {}
        for backend in backends:
            _kernels.set_backend(backend)
            t = _time(fn, args.repeat)
            times[backend] = t
            print(f"{name:<26} {backend:<9} {t:>8.4f}s {1e6 * t / ops:>9.2f}us")
        if len(times) == 2:
            print(f"{name:<26} {'speedup':<9} {times['pure'] / times['compiled']:>8.2f}x")
    _kernels.set_backend(backends[-1])


if __name__ == "__main__":
    main()
