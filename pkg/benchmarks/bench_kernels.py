"""Benchmark: compiled vs pure-Python Jacobi kernel on real spin blocks.

The sweep workload diagonalizes the 6/4/4-dimensional blocks once per grid
point, so the kernel dominates spectrum runtime.  Run:

    python benchmarks/bench_kernels.py [--points N]
"""

import argparse
import time

import numpy as np

from sidonor.jacobi import eigensolve_block
from sidonor.spin_hamiltonian import MU_OVER_BETA, SpinParams, block_decompose, build_hamiltonian


def workload(points: int):
    blocks = []
    for beta in np.linspace(0.2, 3.0, points):
        p = SpinParams(0.3, 0.4, beta=beta, mu=MU_OVER_BETA * beta)
        for b in block_decompose(build_hamiltonian(p)):
            if len(b.indices) > 1:
                blocks.append(b.matrix)
    return blocks


def run(backend: str, blocks, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for m in blocks:
            eigensolve_block(m, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--points", type=int, default=401, help="beta grid points")
    args = parser.parse_args()

    blocks = workload(args.points)
    print(f"{len(blocks)} block diagonalizations per pass "
          f"(sizes {sorted({m.shape[0] for m in blocks})})")

    try:
        t_cy = run("cython", blocks)
    except ImportError:
        t_cy = None
        print("compiled kernel not built; showing pure Python only")
    t_py = run("python", blocks)

    print(f"python : {t_py * 1e3:8.1f} ms/pass  ({t_py / len(blocks) * 1e6:6.1f} us/solve)")
    if t_cy is not None:
        print(f"cython : {t_cy * 1e3:8.1f} ms/pass  ({t_cy / len(blocks) * 1e6:6.1f} us/solve)")
        print(f"speedup: {t_py / t_cy:.1f}x")

    # sanity: identical results from both backends
    if t_cy is not None:
        w_py, v_py = eigensolve_block(blocks[0], backend="python")
        w_cy, v_cy = eigensolve_block(blocks[0], backend="cython")
        assert np.array_equal(w_py, w_cy) and np.array_equal(v_py, v_cy)


if __name__ == "__main__":
    main()
