"""Brute-force ground truth for small-matrix l^p norms.

Independent of the power iteration: the l^p unit sphere of C^n is
parameterized by magnitudes on the simplex (p-th powers) and phases with
the first phase pinned to zero, sampled at >= 2^20 scrambled-Sobol points;
the best candidates are then polished by coordinate-wise golden-section
climbing on the real and imaginary parts (the ratio is scale invariant, so
no renormalization is needed between coordinate moves).
"""

from __future__ import annotations

import numpy as np
from scipy.stats import qmc

from .exponents import PExponent
from .pnorm import as_matrix, vector_pnorm

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo, hi, iters=60):
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    t = (a + b) / 2.0
    return t, f(t)


def _ratio(a, x, p):
    nx = vector_pnorm(x, p)
    if nx == 0.0:
        return 0.0
    return vector_pnorm(a @ x, p) / nx


def _climb(a, p, x0, max_sweeps=40, tol=1e-14):
    """Coordinate-wise golden-section ascent on re/im parts of x."""
    n = a.shape[1]
    x = np.asarray(x0, dtype=np.complex128).copy()
    x /= vector_pnorm(x, p)
    cur = _ratio(a, x, p)
    for sweep in range(max_sweeps):
        prev = cur
        span = max(0.7**sweep, 1e-8)
        for c in range(n):
            for part in range(2):
                base = x[c]
                t0 = base.real if part == 0 else base.imag

                def f(t, c=c, part=part, base=base):
                    xx = x.copy()
                    xx[c] = complex(t, base.imag) if part == 0 else complex(base.real, t)
                    return _ratio(a, xx, p)

                t, val = _golden_max(f, t0 - span, t0 + span)
                if val > cur:
                    x[c] = complex(t, base.imag) if part == 0 else complex(base.real, t)
                    cur = val
        x /= vector_pnorm(x, p)
        cur = _ratio(a, x, p)
        if abs(cur - prev) <= tol * max(1.0, cur):
            break
    return cur, x


def sphere_oracle(a, p, n_points: int = 1 << 20, n_refine: int = 100, seed: int = 0):
    """Best ratio ||A x||_p / ||x||_p found by dense sphere search.

    Returns (value, argmax vector). Intended for n <= 4; cost is one
    (n_points x n) matrix product plus n_refine local climbs.
    """
    a = as_matrix(a)
    p = PExponent.coerce(p)
    if p.is_inf:
        raise ValueError("sphere oracle requires finite p")
    n = a.shape[1]
    pv = p.value

    if n == 1:
        x = np.ones(1, dtype=np.complex128)
        return _ratio(a, x, p), x

    dim = 2 * (n - 1)
    eng = qmc.Sobol(d=dim, scramble=True, seed=seed)
    u = eng.random(n_points)
    # magnitudes: uniform simplex weights via sorted-cut gaps, then w^(1/p)
    cuts = np.sort(u[:, : n - 1], axis=1)
    pad = np.zeros((n_points, 1))
    w = np.diff(np.concatenate([pad, cuts, pad + 1.0], axis=1), axis=1)
    phases = np.concatenate([pad, 2.0 * np.pi * u[:, n - 1 :]], axis=1)
    xs = (w ** (1.0 / pv)) * np.exp(1j * phases)

    vals = (np.abs(xs @ a.T) ** pv).sum(axis=1) ** (1.0 / pv)
    order = np.argsort(vals)[::-1][:n_refine]

    best = float(vals[order[0]])
    bestx = xs[order[0]].copy()
    for idx in order:
        v, x = _climb(a, p, xs[idx])
        if v > best:
            best, bestx = v, x
    return best, bestx
