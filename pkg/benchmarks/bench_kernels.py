"""Throughput comparison of the compiled kernels against the pure-Python
(numpy) fallback.

Run:  python3 benchmarks/bench_kernels.py [--sizes 1000,100000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from quadnum import System, _kernels_py

try:
    from quadnum import _kernels as _compiled
except ImportError:
    _compiled = None


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1000,10000,100000",
                        help="comma-separated batch sizes")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",")]

    system = System.from_metric([[6, 3, 2], [3, 2, 2], [2, 2, 3]])
    coeffs = system.coeffs
    consts = system.constants.independent
    rng = np.random.default_rng(0)

    backends = [("python", _kernels_py)]
    if _compiled is not None:
        backends.append(("compiled", _compiled))
    else:
        print("compiled extension not built; benchmarking fallback only")

    header = f"{'kernel':<16}{'n':>9}" + "".join(
        f"{name + ' (ms)':>16}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)

    for n in sizes:
        q = rng.uniform(-2, 2, (n, 4))
        p = rng.uniform(-2, 2, (n, 4))
        for kernel, call in (
            ("multiply_batch", lambda mod: mod.multiply_batch(q, p, coeffs, consts)),
            ("character_batch", lambda mod: mod.character_batch(q, coeffs)),
        ):
            times = [best_time(lambda mod=mod: call(mod), args.repeat)
                     for _, mod in backends]
            if len(backends) == 2:
                ref = call(backends[0][1])
                got = call(backends[1][1])
                assert np.allclose(ref, got, atol=1e-12), kernel
            row = f"{kernel:<16}{n:>9}" + "".join(
                f"{t * 1e3:>16.3f}" for t in times)
            if len(times) == 2:
                row += f"{times[0] / times[1]:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
