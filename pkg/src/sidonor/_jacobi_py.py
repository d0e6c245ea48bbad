"""Pure-Python cyclic Jacobi kernel.

Twin of the compiled ``_jacobi`` extension: the arithmetic is written in the
same order so both backends produce identical rotation sequences (and, in
practice, bit-identical results).  Intended for small symmetric blocks
(n <= 16); used when the extension is not built or is disabled via
``SIDONOR_PURE_PYTHON=1``.
"""

from math import sqrt

BACKEND = "python"


def jacobi_rotate(a, n, tol, max_sweeps):
    """Diagonalize the symmetric n*n row-major matrix ``a`` (flat list) in place.

    Returns ``(d, v, sweeps)`` with the unsorted diagonal ``d``, the
    accumulated rotation matrix ``v`` (flat row-major: column j is the
    eigenvector of d[j]) and the number of sweeps used, or ``None`` for
    ``sweeps`` if the off-diagonal norm never dropped below ``tol * ||a||_F``.
    """
    v = [0.0] * (n * n)
    for i in range(n):
        v[i * n + i] = 1.0

    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i * n + j] * a[i * n + j]
    fro = sqrt(fro)
    if fro == 0.0:
        return [0.0] * n, v, 0

    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i * n + j] * a[i * n + j]
        if sqrt(off) <= tol * fro:
            converged = True
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

    if not converged:
        return [a[i * n + i] for i in range(n)], v, None
    return [a[i * n + i] for i in range(n)], v, sweeps
