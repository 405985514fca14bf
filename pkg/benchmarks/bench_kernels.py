"""Compare the compiled and pure-Python series kernels.

Usage: python benchmarks/bench_kernels.py [--order N] [--repeat R]
"""
import argparse
import time

from kappamink import _pykernels, kernels, series
from kappamink.hopf import xi_series


def workload(order: int):
    xi, xinv = xi_series(order)
    acc = xi
    for _ in range(6):
        acc = acc * xi + acc * xinv
    return acc


def timed(module, order: int, repeat: int):
    saved = series.kernels
    series.kernels = module
    try:
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = workload(order)
            best = min(best, time.perf_counter() - t0)
        return best, out
    finally:
        series.kernels = saved


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py, ref = timed(_pykernels, args.order, args.repeat)
    print(f"python   {py:.4f} s")
    if kernels.BACKEND != "cython":
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
        return
    from kappamink import _kernels

    cy, out = timed(_kernels, args.order, args.repeat)
    print(f"cython   {cy:.4f} s")
    print(f"speedup  {py / cy:.2f}x")
    print(f"results agree: {out == ref}")


if __name__ == "__main__":
    main()
