# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled cyclic Jacobi sweep kernel for dense symmetric matrices."""

from libc.math cimport fabs, sqrt


def off_norm(double[:, ::1] a):
    """Frobenius norm of the off-diagonal part."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q
    cdef double s = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            s += 2.0 * a[p, q] * a[p, q]
    return sqrt(s)


def cyclic_jacobi(double[:, ::1] a, double tol, int max_sweeps):
    """Diagonalize ``a`` in place by cyclic-by-rows Jacobi rotations.

    ``tol`` is the absolute stopping threshold on the off-diagonal
    Frobenius norm.  Returns the number of sweeps performed, or -1 when
    the cap is hit before convergence.  Eigenvalues end up on the
    diagonal (unsorted); the strict lower/upper parts are destroyed.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, i, sweep
    cdef double off, g, h, t, theta, c, s, tau, apq, app, aqq

    if n < 2:
        return 0

    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        off = sqrt(off)
        if off <= tol:
            return sweep

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                g = 100.0 * fabs(apq)
                # negligible pivot: zero it directly once rotations settled
                if sweep > 3 and fabs(app) + g == fabs(app) \
                        and fabs(aqq) + g == fabs(aqq):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = 0.5 * (aqq - app) / apq
                if fabs(theta) > 1.0e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(1.0 + theta * theta))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                tau = s / (1.0 + c)
                # left rotation: rows p and q (contiguous)
                for i in range(n):
                    g = a[p, i]
                    h = a[q, i]
                    a[p, i] = g - s * (h + g * tau)
                    a[q, i] = h + s * (g - h * tau)
                # right rotation: columns p and q
                for i in range(n):
                    g = a[i, p]
                    h = a[i, q]
                    a[i, p] = g - s * (h + g * tau)
                    a[i, q] = h + s * (g - h * tau)
    return -1
