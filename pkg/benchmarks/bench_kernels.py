"""Compare the numba and pure-numpy kernel paths.

    python benchmarks/bench_kernels.py [--repeat 5]

Both paths are timed in the same process (the env flag only picks the
default), after one warm-up call so numba compilation is excluded.
"""
import argparse
import timeit

import numpy as np

from lambda_bound import kernels
from lambda_bound.spectral import flat_torus, icosphere


def cases():
    genera = np.arange(0, 1_000_000, dtype=np.int64)
    ico = icosphere(5)
    torus = flat_torus(256, 256)
    w = np.linalg.inv(np.array([[1.0, 0.3], [0.0, 0.01]])).T
    gram = w.T @ w
    return [
        ("optimal_sweep n=4, 1e6 genera", "optimal_sweep", (4, genera)),
        ("closed_form_f5, 1e6 genera", "closed_form_f5", (genera,)),
        (f"cotan_assemble icosphere(5) F={ico.n_faces}", "cotan_assemble", (ico.vertices, ico.faces)),
        (f"cotan_assemble torus 256^2 F={torus.n_faces}", "cotan_assemble", (torus.vertices, torus.faces)),
        ("shortest_vector 401x401 window", "shortest_vector", (gram, 200, 200)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.NUMBA_KERNELS is None:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"default backend: {kernels.BACKEND}")
    print(f"{'kernel':48s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>9s}")
    for label, name, inputs in cases():
        times = {}
        for backend, table in (("numpy", kernels.NUMPY_KERNELS), ("numba", kernels.NUMBA_KERNELS)):
            fn = table[name]
            fn(*inputs)
            times[backend] = min(timeit.repeat(lambda: fn(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:48s} {times['numpy']:12.2f} {times['numba']:12.2f} {times['numpy'] / times['numba']:9.2f}")


if __name__ == "__main__":
    main()
