"""Compare the compiled and pure-Python kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from quadomain import kernels
from quadomain.conformal import MapParams, boundary_curve


def _curve_xy(m):
    z = boundary_curve(MapParams(0.5), m).zeta
    return np.ascontiguousarray(z.real), np.ascontiguousarray(z.imag)


def _carlson_loop(mod, n=2000):
    rng = np.random.default_rng(0)
    pts = rng.uniform(0.1, 2.0, (n, 4))
    def run():
        for x, y, z, p in pts:
            mod.rf(x, y, z)
            mod.rj(x, y, z, p)
    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if "cython" not in kernels.BACKENDS:
        print("compiled backend not built; only the pure-Python timings are shown")
    cases = []
    for m in (4096, 16384):
        x, y = _curve_xy(m)
        cases.append((f"first_crossing m={m}", lambda mod, x=x, y=y: (lambda: mod.first_crossing(x, y))))
    cases.append(("rf+rj x2000", _carlson_loop))
    print(f"{'kernel':24s} " + " ".join(f"{b:>12s}" for b in sorted(kernels.BACKENDS)) + "     speedup")
    for name, make in cases:
        times = {}
        for b, mod in sorted(kernels.BACKENDS.items()):
            fn = make(mod)
            times[b] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{name:24s} " + " ".join(f"{times[b]:12.5f}" for b in sorted(times)) + f"  {speed:9.1f}x")


if __name__ == "__main__":
    main()
