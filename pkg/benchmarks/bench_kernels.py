"""Compare the numba and numpy kernel backends.

Two workloads:

* raw kernels: each tropical kernel applied to a batch of random matrices;
* end-to-end: D- and M-matrices folded along every reduced path up to a
  depth, plus the M-from-D check at each endpoint.

The backend is fixed at import time, so each measurement runs in a fresh
interpreter with ``CLUSTERDUAL_DISABLE_NUMBA`` set accordingly.

Usage::

    python benchmarks/bench_kernels.py [--depth 7] [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from clusterdual import _kernels
from clusterdual.presets import preset
from clusterdual.properties import m_from_d
from clusterdual.seeds import paths_up_to
from clusterdual.vectors import d_matrix_recursive, m_matrix_recursive

depth, repeat = int(sys.argv[1]), int(sys.argv[2])
rng = np.random.default_rng(0)

def best(fn):
    fn()  # warm-up, includes JIT compilation
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

B = np.ascontiguousarray(preset("dtilde4").entries)
Xs = [rng.integers(-50, 50, size=(5, 5)).astype(np.int64) for _ in range(20000)]

def raw():
    for i, X in enumerate(Xs):
        k = i % 5
        _kernels.tropical_column_step(X, B, k)
        _kernels.initial_row_step(X, B, k)
        _kernels.md_rhs(X, B)
        _kernels.mutate_matrix(B, k)

def sweep():
    for name in ("markov", "atilde31", "dtilde4"):
        B0 = preset(name)
        d = depth if B0.n < 5 else depth - 2
        for path in paths_up_to(B0.n, d):
            D = d_matrix_recursive(B0, path)
            m_matrix_recursive(B0, path)
            m_from_d(B0, D)

print(json.dumps({"backend": _kernels.BACKEND, "raw_kernels": best(raw), "recursive_sweep": best(sweep)}))
"""


def measure(disable: bool, depth: int, repeat: int) -> dict:
    env = dict(os.environ, CLUSTERDUAL_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(depth), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--depth", type=int, default=7)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    numpy_res = measure(True, args.depth, args.repeat)
    numba_res = measure(False, args.depth, args.repeat)
    if numba_res["backend"] != "numba":
        print("numba is not importable; only the numpy backend was measured")
    print(f"{'workload':<18}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for key in ("raw_kernels", "recursive_sweep"):
        a, b = numpy_res[key], numba_res[key]
        print(f"{key:<18}{a:>12.3f}{b:>12.3f}{a / b:>9.1f}x")


if __name__ == "__main__":
    main()
