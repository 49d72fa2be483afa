"""Compare the compiled and pure-Python Cayley-table kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times closure, homomorphism extension and coset labelling on the
Cayley table of PSL2(13) (1092 elements) and a few smaller groups.
"""
import argparse
import random
import timeit

import numpy as np

from coverforge import constructors as K, kernels


def workloads(T, rng):
    n = len(T)
    pairs = [rng.sample(range(n), 2) for _ in range(50)]
    sub = None

    def run(B):
        nonlocal sub
        P = B.prepare(T)
        for g in pairs:
            m = B.closure(P, g)
        if sub is None:
            sub = np.flatnonzero(B.closure(P, pairs[0][:1]))
        for g in pairs:
            B.extend_hom(P, g, P, g)
        for _ in range(10):
            B.coset_labels(P, sub)
        return m
    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = {"python": kernels.get_backend("python")}
    try:
        backends["cython"] = kernels.get_backend("cython")
    except ImportError:
        print("compiled kernels not built; timing the Python backend only")
    groups = {"S5": K.sym(5), "PSL2(8)": K.psl2(8), "PSL2(13)": K.psl2(13)}
    print(f"{'group':<10} {'order':>6} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, G in groups.items():
        T = G.table().table
        times = {}
        for b, B in backends.items():
            run = workloads(T, random.Random(0))
            times[b] = min(timeit.repeat(lambda: run(B), number=1, repeat=args.repeat))
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        cols = " ".join(f"{times[b] * 1e3:8.2f}ms" for b in backends)
        print(f"{name:<10} {len(T):>6} {cols}   {speed:6.1f}x")


if __name__ == "__main__":
    main()
