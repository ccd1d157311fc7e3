"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from logbern import _kernels
from logbern._jit import HAVE_NUMBA
from logbern.operators import logarithmic

CASES = [(10, 1001), (200, 1001), (1000, 1001), (4000, 2001)]


def bench(backend, repeat):
    _kernels.set_backend(backend)
    _kernels.warmup()
    out = {}
    for n, points in CASES:
        x = np.linspace(0.0, 1.0, points)
        coef = np.sin(np.arange(n + 1))
        t_sum = min(timeit.repeat(lambda: _kernels.bernstein_sum(coef, x), number=3, repeat=repeat)) / 3
        t_op = min(timeit.repeat(lambda: logarithmic(np.sin, 1.0, n, x), number=3, repeat=repeat)) / 3
        out[(n, points)] = (t_sum, t_op)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    res = {b: bench(b, args.repeat) for b in backends}
    print(f"{'n':>6} {'points':>7} " + " ".join(f"{b + ' sum':>12} {b + ' L_n':>12}" for b in backends)
          + ("  speedup" if len(backends) == 2 else ""))
    for key in CASES:
        row = f"{key[0]:>6} {key[1]:>7} " + " ".join(f"{res[b][key][0] * 1e3:>10.3f}ms {res[b][key][1] * 1e3:>10.3f}ms"
                                                     for b in backends)
        if len(backends) == 2:
            row += f"  {res['numpy'][key][0] / res['numba'][key][0]:6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
