# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi kernel; twin of ``_jacobi_py`` (same rotation order)."""

from libc.math cimport sqrt

BACKEND = "cython"


def jacobi_rotate(list a_in, int n, double tol, int max_sweeps):
    """Same contract as ``sidonor._jacobi_py.jacobi_rotate``."""
    cdef double[256] a
    cdef double[256] v
    cdef int i, j, k, p, q, sweeps
    cdef double fro, off, apq, theta, t, c, s
    cdef double akp, akq, apk, aqk, vkp, vkq
    cdef bint converged = 0

    if n > 16:
        raise ValueError("kernel supports blocks up to 16x16")
    for i in range(n * n):
        a[i] = a_in[i]
        v[i] = 0.0
    for i in range(n):
        v[i * n + i] = 1.0

    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i * n + j] * a[i * n + j]
    fro = sqrt(fro)
    if fro == 0.0:
        return [0.0] * n, [v[i] for i in range(n * n)], 0

    sweeps = 0
    while sweeps < max_sweeps:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i * n + j] * a[i * n + j]
        if sqrt(off) <= tol * fro:
            converged = 1
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p * n + q]
                if apq == 0.0:
                    continue
                theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(1.0 + theta * theta))
                else:
                    t = 1.0 / (theta - sqrt(1.0 + theta * theta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k * n + p]
                    akq = a[k * n + q]
                    a[k * n + p] = c * akp - s * akq
                    a[k * n + q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p * n + k]
                    aqk = a[q * n + k]
                    a[p * n + k] = c * apk - s * aqk
                    a[q * n + k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k * n + p]
                    vkq = v[k * n + q]
                    v[k * n + p] = c * vkp - s * vkq
                    v[k * n + q] = s * vkp + c * vkq
        sweeps += 1

    d = [a[i * n + i] for i in range(n)]
    vout = [v[i] for i in range(n * n)]
    if not converged:
        return d, vout, None
    return d, vout, sweeps
