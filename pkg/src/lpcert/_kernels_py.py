"""Pure-numpy power-iteration kernels.

Fallback implementations with the same contract as the compiled module
``lpcert._kernels``; see ``lpcert.kernels`` for the selection logic.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _vec_pnorm(v, p):
    a = np.abs(v)
    m = a.max(initial=0.0)
    if m == 0.0:
        return 0.0
    return m * float(((a / m) ** p).sum()) ** (1.0 / p)


def _psi(v, r):
    # |v|^(r-1) * phase(v) with phase(0) = 0, rescaled by the max modulus
    # so large exponents cannot overflow; callers only use the direction.
    a = np.abs(v)
    m = a.max(initial=0.0)
    if m == 0.0:
        return np.zeros_like(v)
    a = a / m
    out = np.zeros_like(v)
    nz = a > 0.0
    out[nz] = (a[nz] ** (r - 1.0)) * (v[nz] / (m * a[nz]))
    return out


def _iterate(mv, mvh, x0, p, tol, max_iter):
    q = p / (p - 1.0)
    trace = np.empty(max_iter + 1)
    x = np.asarray(x0, dtype=np.complex128).copy()
    nx = _vec_pnorm(x, p)
    if nx == 0.0:
        return 0.0, x, 0, True, trace[:1] * 0.0
    x /= nx
    y = mv(x)
    est = _vec_pnorm(y, p)
    trace[0] = est
    best = est
    bestx = x.copy()
    iters = 0
    converged = False
    while iters < max_iter:
        if est == 0.0:
            converged = True
            break
        z = mvh(_psi(y, p))
        if np.abs(z).max(initial=0.0) == 0.0:
            converged = True
            break
        xn = _psi(z, q)
        nx = _vec_pnorm(xn, p)
        if nx == 0.0:
            converged = True
            break
        xn /= nx
        y = mv(xn)
        en = _vec_pnorm(y, p)
        iters += 1
        trace[iters] = en
        if en > best:
            best = en
            bestx = xn.copy()
        rel = abs(en - est) / max(en, 1e-300)
        x, est = xn, en
        if rel < tol:
            converged = True
            break
    return best, bestx, iters, converged, trace[: iters + 1].copy()


def power_iterate_dense(a, x0, p, tol, max_iter):
    """Boyd power iteration for the l^p -> l^p norm of a dense matrix.

    One step maps x to normalize_p(psi_q(A^H psi_p(A x))); the estimate
    ||A x||_p / ||x||_p is nondecreasing along the iteration. Returns
    (best_estimate, witness, iterations, converged, estimate_trace).
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    ah = a.conj().T
    return _iterate(lambda v: a @ v, lambda v: ah @ v, x0, p, tol, max_iter)


def power_iterate_banded(offsets, coeffs, n, x0, p, tol, max_iter):
    """Same iteration for the Toeplitz section M[t, s] = c(t - s) on n points."""
    offsets = np.asarray(offsets, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)

    def mv(x):
        y = np.zeros_like(x)
        for d, c in zip(offsets, coeffs):
            if d >= 0:
                y[d:] += c * (x[: n - d] if d > 0 else x)
            else:
                y[: n + d] += c * x[-d:]
        return y

    def mvh(y):
        z = np.zeros_like(y)
        for d, c in zip(offsets, coeffs):
            cc = np.conj(c)
            if d >= 0:
                z[: n - d] += cc * (y[d:] if d > 0 else y)
            else:
                z[-d:] += cc * y[: n + d]
        return z

    return _iterate(mv, mvh, x0, p, tol, max_iter)
