# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled quadrature kernels for the half-space solver.

Same contract as the pure-Python twin in ``_kernels_py``; see that module
for the kernel-kind table.  Bessel J0 comes from the same Cephes routine
scipy uses, so both backends agree to the last unit in the last place.
"""

from scipy.special.cython_special cimport j0

cdef extern from "complex.h" nogil:
    double complex csqrt(double complex)
    double complex cexp(double complex)


def panel(int kind, double a, double b, double rho, double d1, double d2,
          double complex eps_s, double complex eps_o, double k0sq,
          double[::1] nodes, double[::1] weights):
    """Gauss-Legendre estimate of one spectral panel over [a, b]."""
    cdef double half = 0.5 * (b - a)
    cdef double mid = 0.5 * (a + b)
    cdef double complex ks_sq = eps_s * k0sq
    cdef double complex ko_sq = eps_o * k0sq
    cdef double complex acc = 0.0
    cdef double complex u_s, u_o, coef, f
    cdef double k, ksq
    cdef Py_ssize_t i, n = nodes.shape[0]

    if kind < 0 or kind > 3:
        raise ValueError(f"unknown kernel kind {kind}")

    for i in range(n):
        k = mid + half * nodes[i]
        ksq = k * k
        u_s = csqrt(ksq - ks_sq)
        if kind == 0:
            f = (k / u_s) * cexp(-u_s * d1)
        elif kind == 1:
            f = (k * ksq / u_s) * cexp(-u_s * d1)
        elif kind == 2:
            u_o = csqrt(ksq - ko_sq)
            coef = (eps_o * u_s - eps_s * u_o) / (eps_o * u_s + eps_s * u_o)
            f = (k * ksq / u_s) * coef * cexp(-u_s * d1)
        else:
            u_o = csqrt(ksq - ko_sq)
            coef = 2.0 * eps_s * u_s / (eps_o * u_s + eps_s * u_o)
            f = (k * ksq / u_s) * coef * cexp(-u_s * d1 - u_o * d2)
        acc = acc + weights[i] * f * j0(k * rho)

    return complex(half * acc)
