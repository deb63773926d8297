"""Compare the numpy and numba Lovasz-extension kernels.

Evaluates a random set function on n=10 elements at a large batch of uniform
points with both backends and reports throughput.  Run as:

    python3 benchmarks/bench_backends.py [--points 200000] [--arity 10]
"""

import argparse
import importlib
import os
import time

import numpy as np


def load_backend(name):
    os.environ["ORDINFLUENCE_BACKEND"] = name
    import ordinfluence.backends as backends
    return importlib.reload(backends)


def bench(backends_module, values, points, repeats=3):
    # warm-up (includes numba JIT compilation when applicable)
    backends_module.lovasz_eval_batch(values, points[:1000])
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        out = backends_module.lovasz_eval_batch(values, points)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--points", type=int, default=200_000)
    parser.add_argument("--arity", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    values = rng.random(2 ** args.arity)
    values[0] = 0.0
    points = rng.random((args.points, args.arity))

    results = {}
    for name in ("numpy", "numba"):
        try:
            module = load_backend(name)
        except RuntimeError as exc:
            print("%-6s unavailable: %s" % (name, exc))
            continue
        elapsed, out = bench(module, values, points)
        results[name] = (elapsed, out)
        print("%-6s %8.1f ms  %10.2f kpts/s" %
              (name, 1e3 * elapsed, args.points / elapsed / 1e3))

    if len(results) == 2:
        a, b = results["numpy"][1], results["numba"][1]
        agree = np.allclose(a, b, rtol=1e-12, atol=1e-12)
        speedup = results["numpy"][0] / results["numba"][0]
        print("outputs agree: %s   numba speedup: %.1fx" % (agree, speedup))


if __name__ == "__main__":
    main()
