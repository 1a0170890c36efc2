"""Compare the compiled and pure-Python characteristic-rank kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--profiles N]
"""

import argparse
import random
import time

from charrank import catalog, engine, kernel


def workloads(n_random):
    rng = random.Random(0)
    for fam, params in [("dold", (2, 3)), ("s1_x_cp", (3,)), ("rp", (8,))]:
        rec = catalog.build(fam, *params)
        yield f"{rec.name} full universe", rec.alg, list(engine.profile_universe(rec.alg))
    for fam, params in [("dold", (4, 4)), ("dold", (6, 5))]:
        alg = catalog.build(fam, *params).alg
        profiles = [
            tuple([1] + [rng.getrandbits(alg.betti[i]) for i in range(1, alg.dim + 1)]) for _ in range(n_random)
        ]
        yield f"{alg.name} {n_random} random", alg, profiles


def timed(packed, profiles, backend, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = kernel.charrank_batch(packed, profiles, backend)
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--profiles", type=int, default=20000)
    args = ap.parse_args()

    if "cython" not in kernel.BACKENDS:
        print("compiled kernel not built; only the Python backend is available")
    print(f"{'workload':<32} {'profiles':>9} " + " ".join(f"{b:>10}" for b in kernel.BACKENDS) + "   speedup")
    for label, alg, profiles in workloads(args.profiles):
        packed = kernel.pack(alg)
        times, results = {}, {}
        for b in kernel.BACKENDS:
            times[b], results[b] = timed(packed, profiles, b, args.repeat)
        assert len({tuple(r) for r in results.values()}) == 1, "backends disagree"
        cols = " ".join(f"{times[b] * 1e3:>8.1f}ms" for b in kernel.BACKENDS)
        speed = f"{times['python'] / times['cython']:>8.1f}x" if "cython" in times else ""
        print(f"{label:<32} {len(profiles):>9} {cols} {speed}")


if __name__ == "__main__":
    main()
