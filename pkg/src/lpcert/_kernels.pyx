# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled power-iteration kernels (hot loops of the norm estimator)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport pow, sqrt

cnp.import_array()

BACKEND = "compiled"


cdef inline double _cabs(double complex z) nogil:
    cdef double re = z.real
    cdef double im = z.imag
    return sqrt(re * re + im * im)


cdef double _max_abs(double complex[::1] v) nogil:
    cdef Py_ssize_t i
    cdef double m = 0.0, a
    for i in range(v.shape[0]):
        a = _cabs(v[i])
        if a > m:
            m = a
    return m


cdef double _vec_pnorm(double complex[::1] v, double p) nogil:
    cdef Py_ssize_t i
    cdef double m = _max_abs(v)
    cdef double s = 0.0
    if m == 0.0:
        return 0.0
    for i in range(v.shape[0]):
        s += pow(_cabs(v[i]) / m, p)
    return m * pow(s, 1.0 / p)


cdef void _psi(double complex[::1] v, double complex[::1] out, double r) nogil:
    # |v|^(r-1) * phase(v) with phase(0)=0, max-rescaled against overflow.
    cdef Py_ssize_t i
    cdef double m = _max_abs(v)
    cdef double a
    if m == 0.0:
        for i in range(v.shape[0]):
            out[i] = 0.0
        return
    for i in range(v.shape[0]):
        a = _cabs(v[i])
        if a == 0.0:
            out[i] = 0.0
        else:
            out[i] = pow(a / m, r - 1.0) * (v[i] / a)


cdef void _mv_dense(double complex[:, ::1] a, double complex[::1] x,
                    double complex[::1] y) nogil:
    cdef Py_ssize_t i, j, nr = a.shape[0], nc = a.shape[1]
    cdef double complex acc
    for i in range(nr):
        acc = 0.0
        for j in range(nc):
            acc += a[i, j] * x[j]
        y[i] = acc


cdef void _mvh_dense(double complex[:, ::1] a, double complex[::1] y,
                     double complex[::1] z) nogil:
    cdef Py_ssize_t i, j, nr = a.shape[0], nc = a.shape[1]
    cdef double complex w
    for j in range(nc):
        z[j] = 0.0
    for i in range(nr):
        w = y[i]
        for j in range(nc):
            z[j] += a[i, j].conjugate() * w
    # z = A^H y


cdef void _mv_banded(long[::1] offsets, double complex[::1] coeffs, Py_ssize_t n,
                     double complex[::1] x, double complex[::1] y) nogil:
    cdef Py_ssize_t i, k, lo, hi
    cdef long d
    cdef double complex c
    for i in range(n):
        y[i] = 0.0
    for k in range(offsets.shape[0]):
        d = offsets[k]
        c = coeffs[k]
        lo = d if d > 0 else 0
        hi = n + d if d < 0 else n
        for i in range(lo, hi):
            y[i] += c * x[i - d]


cdef void _mvh_banded(long[::1] offsets, double complex[::1] coeffs, Py_ssize_t n,
                      double complex[::1] y, double complex[::1] z) nogil:
    cdef Py_ssize_t i, k, lo, hi
    cdef long d
    cdef double complex c
    for i in range(n):
        z[i] = 0.0
    for k in range(offsets.shape[0]):
        d = offsets[k]
        c = coeffs[k].conjugate()
        lo = d if d > 0 else 0
        hi = n + d if d < 0 else n
        for i in range(lo, hi):
            z[i - d] += c * y[i]


cdef _run(object mv, object mvh, double complex[::1] x0, double p,
          double tol, long max_iter, Py_ssize_t n):
    cdef double q = p / (p - 1.0)
    cdef cnp.ndarray trace_arr = np.empty(max_iter + 1, dtype=np.float64)
    cdef double[::1] trace = trace_arr
    cdef cnp.ndarray x_arr = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray y_arr = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray z_arr = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray w_arr = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray bestx_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] x = x_arr
    cdef double complex[::1] y = y_arr
    cdef double complex[::1] z = z_arr
    cdef double complex[::1] w = w_arr
    cdef double complex[::1] bestx = bestx_arr
    cdef Py_ssize_t i
    cdef long iters = 0
    cdef double nx, est, en, best, rel
    cdef bint converged = False

    nx = _vec_pnorm(x0, p)
    if nx == 0.0:
        x_arr[:] = 0.0
        return 0.0, x_arr, 0, True, np.zeros(1)
    for i in range(n):
        x[i] = x0[i] / nx
    mv(x, y)
    est = _vec_pnorm(y, p)
    trace[0] = est
    best = est
    for i in range(n):
        bestx[i] = x[i]

    while iters < max_iter:
        if est == 0.0:
            converged = True
            break
        _psi(y, w, p)
        mvh(w, z)
        if _max_abs(z) == 0.0:
            converged = True
            break
        _psi(z, x, q)
        nx = _vec_pnorm(x, p)
        if nx == 0.0:
            converged = True
            break
        for i in range(n):
            x[i] = x[i] / nx
        mv(x, y)
        en = _vec_pnorm(y, p)
        iters += 1
        trace[iters] = en
        if en > best:
            best = en
            for i in range(n):
                bestx[i] = x[i]
        rel = abs(en - est) / (en if en > 1e-300 else 1e-300)
        est = en
        if rel < tol:
            converged = True
            break

    return best, bestx_arr, int(iters), bool(converged), trace_arr[: iters + 1].copy()


def power_iterate_dense(a, x0, double p, double tol, long max_iter):
    """Boyd power iteration for the l^p -> l^p norm of a dense matrix.

    Returns (best_estimate, witness, iterations, converged, estimate_trace);
    the estimate trace is nondecreasing up to floating-point rounding.
    """
    cdef cnp.ndarray a_arr = np.ascontiguousarray(a, dtype=np.complex128)
    cdef cnp.ndarray x_arr = np.ascontiguousarray(x0, dtype=np.complex128)
    cdef double complex[:, ::1] am = a_arr
    cdef double complex[::1] xm = x_arr

    def mv(double complex[::1] xi, double complex[::1] yo):
        _mv_dense(am, xi, yo)

    def mvh(double complex[::1] yi, double complex[::1] zo):
        _mvh_dense(am, yi, zo)

    return _run(mv, mvh, xm, p, tol, max_iter, a_arr.shape[0])


def power_iterate_banded(offsets, coeffs, long n, x0, double p, double tol,
                         long max_iter):
    """Same iteration for the Toeplitz section M[t, s] = c(t - s) on n points."""
    cdef cnp.ndarray o_arr = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef cnp.ndarray c_arr = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef cnp.ndarray x_arr = np.ascontiguousarray(x0, dtype=np.complex128)
    cdef long[::1] om = o_arr
    cdef double complex[::1] cm = c_arr
    cdef double complex[::1] xm = x_arr

    def mv(double complex[::1] xi, double complex[::1] yo):
        _mv_banded(om, cm, n, xi, yo)

    def mvh(double complex[::1] yi, double complex[::1] zo):
        _mvh_banded(om, cm, n, yi, zo)

    return _run(mv, mvh, xm, p, tol, max_iter, n)
