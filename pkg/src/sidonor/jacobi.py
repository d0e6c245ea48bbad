"""Symmetric eigensolver for the small spin blocks (cyclic Jacobi rotations).

Backend selection happens at import: the compiled extension is used when it
built successfully, unless ``SIDONOR_PURE_PYTHON=1`` forces the pure-Python
twin.  Both produce the same rotation sequence; ``benchmarks/bench_kernels.py``
compares their speed.

Conventions: eigenvalues ascending (stable order for ties), each eigenvector
normalized with its largest-magnitude component positive.
"""

from __future__ import annotations

import os

import numpy as np

from . import _jacobi_py

if os.environ.get("SIDONOR_PURE_PYTHON") == "1":
    _impl = _jacobi_py
else:
    try:
        from . import _jacobi as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _jacobi_py

BACKEND = _impl.BACKEND

DEFAULT_TOL = 1e-13
MAX_SWEEPS = 50


class ConvergenceError(RuntimeError):
    """Jacobi sweep budget exhausted before reaching the target tolerance."""


def eigensolve_block(block, tol: float = DEFAULT_TOL, backend: str | None = None):
    """Eigenvalues and orthonormal eigenvectors of a small symmetric matrix.

    Args:
        block: symmetric (n, n) array-like, n <= 16.
        tol: stop when the off-diagonal Frobenius norm is below tol * ||block||.
        backend: "cython" | "python" | None (use the import-time selection).

    Returns:
        (w, v): eigenvalues ascending, eigenvectors as columns of v.
    """
    a = np.asarray(block, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("block must be a square matrix")
    n = a.shape[0]
    if n == 0:
        return np.empty(0), np.empty((0, 0))
    if not np.array_equal(a, a.T):
        raise ValueError("block must be exactly symmetric")

    if backend is None:
        impl = _impl
    elif backend == "python":
        impl = _jacobi_py
    elif backend == "cython":
        if _impl.BACKEND != "cython":
            from . import _jacobi as impl  # raises ImportError if not built
        else:
            impl = _impl
    else:
        raise ValueError(f"unknown backend {backend!r}")

    d, vflat, sweeps = impl.jacobi_rotate(a.ravel().tolist(), n, tol, MAX_SWEEPS)
    if sweeps is None:
        raise ConvergenceError(
            f"Jacobi did not converge in {MAX_SWEEPS} sweeps (n={n}, tol={tol})"
        )

    w = np.array(d)
    v = np.array(vflat).reshape(n, n)
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for j in range(n):
        k = int(np.argmax(np.abs(v[:, j])))
        if v[k, j] < 0.0:
            v[:, j] = -v[:, j]
    return w, v
