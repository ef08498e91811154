"""Convolution operators on l^p(Z) by finite sections, and the averaging
machinery that witnesses the quotient Z -> Z_m at the level of norms.

A finitely supported coefficient function f on Z acts by convolution on
l^p(Z). Its compressions to windows [-L, L] give certified lower bounds
(nondecreasing in L, never exceeding the operator norm); upper bounds come
from interpolation between the l^1 endpoint ||f||_1 and the l^2 endpoint
sup |f_hat| on the unit circle.

For the quotient Z -> Z_m with kernel mZ, the section sigma(j) = j on
{0..m-1} has 2-cocycle values in {0, m}, and the Folner sets
F_k = {0, m, ..., (k-1)m} give averages T_k of norm one. Lifting an element
of the Z_m algebra through T_k produces elements of the Z algebra whose
norms sandwich the quotient norm: the defect operators theta_k have exact
l^1 norm sup_{x in Im(c)} |F_k symdiff (F_k + x)| / |F_k| = 2/k, and
interpolation turns that decay into an a priori upper bound.

Symmetric-difference counts are exact rational arithmetic; floating point
enters only through norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exponents import PExponent, interpolation_theta
from .groupalg import GroupAlgebraElement, cyclic_group, fp_lambda_norm
from .kernels import power_iterate_banded
from .pnorm import CertifiedInterval, vector_pnorm

# relative inflation of the numerically evaluated circle supremum, so it
# remains a valid upper endpoint under trig-evaluation rounding
SYMBOL_GUARD = 1e-12

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True)
class LaurentElement:
    """Finitely supported coefficient function on Z."""

    offsets: np.ndarray = field(repr=False)
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        off = np.asarray(self.offsets, dtype=np.int64)
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if off.ndim != 1 or off.shape != c.shape:
            raise ValueError("offsets and coefficients must be matching vectors")
        if len(set(off.tolist())) != off.size:
            raise ValueError("duplicate support points")
        if not np.all(np.isfinite(c.view(np.float64))):
            raise ValueError("coefficients must be finite")
        keep = c != 0
        order = np.argsort(off[keep])
        object.__setattr__(self, "offsets", off[keep][order])
        object.__setattr__(self, "coeffs", c[keep][order])

    @classmethod
    def from_dict(cls, d: dict) -> "LaurentElement":
        items = sorted(d.items())
        return cls(np.array([k for k, _ in items], dtype=np.int64),
                   np.array([v for _, v in items], dtype=np.complex128))

    @classmethod
    def delta(cls, s: int) -> "LaurentElement":
        return cls(np.array([s]), np.array([1.0 + 0j]))

    @property
    def radius(self) -> int:
        return int(np.abs(self.offsets).max(initial=0))

    def l1(self) -> float:
        return math.fsum(np.abs(self.coeffs).tolist())

    def symbol(self, theta) -> np.ndarray:
        """f_hat(theta) = sum_d c_d exp(i d theta)."""
        theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
        return np.exp(1j * np.outer(theta, self.offsets)) @ self.coeffs


@dataclass(frozen=True)
class TruncationWindow:
    """Finite section window [-L, L] of l^p(Z), dimension 2L + 1."""

    half_width: int

    def __post_init__(self):
        if self.half_width < 1:
            raise ValueError("window half-width must be >= 1")

    @property
    def dim(self) -> int:
        return 2 * self.half_width + 1


def _as_window(window) -> TruncationWindow:
    return window if isinstance(window, TruncationWindow) else TruncationWindow(int(window))


def truncated_rep(f: LaurentElement, window) -> np.ndarray:
    """Dense matrix of the compression to [-L, L]: M[t][s] = f(t - s)."""
    w = _as_window(window)
    if w.half_width < f.radius:
        raise ValueError(
            f"window half-width {w.half_width} is smaller than the support radius {f.radius}"
        )
    n = w.dim
    m = np.zeros((n, n), dtype=np.complex128)
    for d, c in zip(f.offsets.tolist(), f.coeffs):
        idx = np.arange(max(0, d), min(n, n + d))
        m[idx, idx - d] = c
    return m


def symbol_sup(f: LaurentElement, grid: int = 4096) -> float:
    """sup over the unit circle of |f_hat|, by grid scan plus golden-section
    refinement around the best grid points; inflated by a small guard so the
    result upper-bounds the true supremum."""
    if f.offsets.size == 0:
        return 0.0
    theta = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    vals = np.abs(f.symbol(theta))
    best = float(vals.max())
    step = 2.0 * np.pi / grid
    gr = (np.sqrt(5.0) - 1.0) / 2.0
    for j in np.argsort(vals)[::-1][:5]:
        a, b = theta[j] - step, theta[j] + step
        c, d = b - gr * (b - a), a + gr * (b - a)
        fc = float(np.abs(f.symbol(c))[0])
        fd = float(np.abs(f.symbol(d))[0])
        for _ in range(80):
            if fc > fd:
                b, d, fd = d, c, fc
                c = b - gr * (b - a)
                fc = float(np.abs(f.symbol(c))[0])
            else:
                a, c, fc = c, d, fd
                d = a + gr * (b - a)
                fd = float(np.abs(f.symbol(d))[0])
        best = max(best, fc, fd)
    return best * (1.0 + SYMBOL_GUARD)


def _section_starts(f: LaurentElement, n: int, n_random: int, seed: int, extra=()):
    starts = [np.ones(n, dtype=np.complex128)]
    e = np.zeros(n, dtype=np.complex128)
    e[n // 2] = 1.0
    starts.append(e)
    # symbol-peak Fourier modes, plain and smoothly windowed
    theta = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
    th0 = float(theta[np.argmax(np.abs(f.symbol(theta)))])
    t = np.arange(n)
    mode = np.exp(1j * th0 * t)
    starts.append(mode.copy())
    starts.append(np.sin(np.pi * (t + 1) / (n + 1)) * mode)
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        starts.append(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    starts.extend(np.asarray(x, dtype=np.complex128) for x in extra)
    return starts


def section_lower(
    f: LaurentElement,
    p,
    window,
    n_random: int = 8,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    extra_starts=(),
):
    """Best power-iteration ratio on the finite section; a certified lower
    bound for the operator norm on l^p(Z), nondecreasing in the window."""
    w = _as_window(window)
    if w.half_width < f.radius:
        raise ValueError("window smaller than the support radius")
    n = w.dim
    p = PExponent.coerce(p)
    best, bestx, conv = 0.0, None, True
    for x0 in _section_starts(f, n, n_random, seed, extra_starts):
        est, x, _, ok, _ = power_iterate_banded(
            f.offsets, f.coeffs, n, x0, p.value, tol, max_iter
        )
        if est > best:
            best, bestx, conv = est, x, ok
    if bestx is None:
        bestx = np.zeros(n, dtype=np.complex128)
        bestx[0] = 1.0
    return best, bestx, conv


def fpz_norm(
    f: LaurentElement,
    p,
    window,
    n_random: int = 8,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    extra_starts=(),
) -> CertifiedInterval:
    """Certified interval for the norm of f acting by convolution on l^p(Z).

    Lower: section bound at the given window (exact column/row sums at the
    l^1 and l^inf endpoints, power iteration otherwise, the generic
    iteration doubling as the singular-value method at p=2). Upper: the
    exact operator norms ||f||_1 at p in {1, inf} and sup |f_hat| at p=2,
    combined by interpolation for intermediate p.
    """
    w = _as_window(window)
    p = PExponent.coerce(p)
    n = w.dim
    if f.offsets.size == 0:
        z = np.zeros(n, dtype=np.complex128)
        z[0] = 1.0
        return CertifiedInterval(0.0, 0.0, p, z)
    if w.half_width < f.radius:
        raise ValueError("window smaller than the support radius")
    l1 = f.l1()
    if p.is_one or p.is_inf:
        # the central column (row) of the section carries the full mass, so
        # the section norm equals the operator norm ||f||_1 exactly
        if p.is_one:
            witness = np.zeros(n, dtype=np.complex128)
            witness[n // 2] = 1.0
        else:
            witness = np.zeros(n, dtype=np.complex128)
            for d, c in zip(f.offsets.tolist(), f.coeffs.tolist()):
                witness[n // 2 - d] = np.conj(c) / abs(c)
        return CertifiedInterval(l1, l1, p, witness)
    endpoints = {1.0: l1, 2.0: symbol_sup(f), math.inf: l1}
    if p.is_two:
        upper = endpoints[2.0]
    else:
        upper = math.inf
        for pair in ((1.0, 2.0), (2.0, math.inf), (1.0, math.inf)):
            try:
                theta = interpolation_theta(p, pair[0], pair[1])
            except ValueError:
                continue
            v0, v1 = endpoints[pair[0]], endpoints[pair[1]]
            upper = min(upper, v0 if v0 == v1 else v0 ** (1.0 - theta) * v1**theta)
    lower, witness, conv = section_lower(
        f, p, w, n_random=n_random, seed=seed, tol=tol, max_iter=max_iter,
        extra_starts=extra_starts,
    )
    return CertifiedInterval(lower, max(upper, lower), p, witness, conv)


# -- quotient Z -> Z_m ------------------------------------------------------


@dataclass(frozen=True)
class QuotientSetupZ:
    """Section and 2-cocycle data for Z -> Z_m with sigma(j) = j on {0..m-1}.

    c(t, r) = sigma(t) + sigma(r) - sigma(t + r mod m) takes values in
    {0, m}; its image is finite, which drives the averaging argument.
    """

    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")

    def sigma(self, j: int) -> int:
        if not 0 <= j < self.modulus:
            raise ValueError("sigma is defined on {0..m-1}")
        return j

    def cocycle(self, t: int, r: int) -> int:
        return self.sigma(t) + self.sigma(r) - self.sigma((t + r) % self.modulus)

    def cocycle_image(self, s: int | None = None) -> set[int]:
        """Values c(s, t) over t (all s if s is None)."""
        m = self.modulus
        ss = range(m) if s is None else [s]
        return {self.cocycle(a, t) for a in ss for t in range(m)}


@dataclass(frozen=True)
class FolnerSequenceZ:
    """F_k = {0, m, 2m, ..., (k-1)m} inside the kernel mZ."""

    modulus: int

    def set(self, k: int) -> list[int]:
        if k < 1:
            raise ValueError("k must be >= 1")
        return [j * self.modulus for j in range(k)]

    def symdiff_ratio(self, k: int, x: int) -> Fraction:
        """|F_k symdiff (F_k + x)| / |F_k| in exact rational arithmetic."""
        fk = set(self.set(k))
        shifted = {v + x for v in fk}
        return Fraction(len(fk ^ shifted), k)


def folner_average(k: int, m: int) -> LaurentElement:
    """T_k: uniform coefficients 1/k on F_k; norm one at every p."""
    fol = FolnerSequenceZ(m)
    offs = np.array(fol.set(k), dtype=np.int64)
    return LaurentElement(offs, np.full(k, 1.0 / k, dtype=np.complex128))


def folner_lift(f: GroupAlgebraElement, k: int) -> LaurentElement:
    """(1/k) sum_s sum_{n in F_k} f(s) delta_{n + sigma(s)}: a lift of f
    through the averaging element; pushing back along Z -> Z_m returns f."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m = f.group.order
    setup = QuotientSetupZ(m) if m >= 2 else None
    d: dict[int, complex] = {}
    for s in range(m):
        c = complex(f.coeffs[s]) / k
        if c == 0:
            continue
        off = s if setup is None else setup.sigma(s)
        for j in range(k):
            d[j * m + off] = d.get(j * m + off, 0.0) + c
    return LaurentElement.from_dict(d)


def quotient_push_z(g: LaurentElement, m: int) -> GroupAlgebraElement:
    """Fiber sums of a Z element along Z -> Z_m."""
    out = np.zeros(m, dtype=np.complex128)
    for d, c in zip(g.offsets.tolist(), g.coeffs.tolist()):
        out[d % m] += c
    return GroupAlgebraElement(cyclic_group(m), out)


def theta_l1(k: int, m: int, s: int) -> Fraction:
    """Exact l^1 -> l^1 norm of the averaging defect operator theta_k for
    the generator class s: sup over x in {c(s, t) : t} of
    |F_k symdiff (F_k + x)| / |F_k|. Equals 2/k whenever the cocycle is
    nonzero somewhere on row s (every s != 0), and 0 at s = 0."""
    if not 0 <= s < m:
        raise ValueError("s must lie in {0..m-1}")
    setup = QuotientSetupZ(m)
    fol = FolnerSequenceZ(m)
    return max(fol.symdiff_ratio(k, x) for x in setup.cocycle_image(s))


def theta_columns(k: int, m: int, s: int) -> dict[int, dict[int, Fraction]]:
    """theta_k as exact columns over one fiber representative per class.

    theta_k delta_x = (1/k) sum_{n in F_k} (delta_{x + n + s} -
    delta_{x + n + s - c(s, x mod m)}); the sum telescopes whenever the
    cocycle is nonzero. Keys are input classes t in {0..m-1} (represented by
    x = t); values map output offsets to exact coefficients.
    """
    setup = QuotientSetupZ(m)
    cols: dict[int, dict[int, Fraction]] = {}
    for t in range(m):
        c_val = setup.cocycle(s, t)
        col: dict[int, Fraction] = {}
        for j in range(k):
            n = j * m
            for off, sign in ((t + n + s, 1), (t + n + s - c_val, -1)):
                col[off] = col.get(off, Fraction(0)) + Fraction(sign, k)
        cols[t] = {o: v for o, v in col.items() if v != 0}
    return cols


def theta_l1_windowed(k: int, m: int, s: int) -> Fraction:
    """l^1 norm of theta_k as max column mass over fiber representatives,
    computed in exact rational arithmetic; equals theta_l1(k, m, s)."""
    cols = theta_columns(k, m, s)
    return max(
        (sum((abs(v) for v in col.values()), Fraction(0)) for col in cols.values()),
        default=Fraction(0),
    )


def theta_matrix(k: int, m: int, s: int, window) -> np.ndarray:
    """Float matrix of theta_k compressed to [-L, L] (block-Toeplitz of
    period m), for section lower bounds against the interpolation bound."""
    w = _as_window(window)
    n = w.dim
    cols = theta_columns(k, m, s)
    mat = np.zeros((n, n), dtype=np.complex128)
    for col_idx in range(n):
        x = col_idx - w.half_width
        for off, val in cols[x % m].items():
            row = (x - (x % m) + off) + w.half_width
            if 0 <= row < n:
                mat[row, col_idx] += float(val)
    return mat


def theta_p_bound(k: int, m: int, p) -> float:
    """Interpolation bound 2 * (sup_s theta_l1)^(1/p) for the l^p norm of
    the defect operators; the worst-case l^1 value over s is 2/k."""
    p = PExponent.coerce(p)
    if p.is_inf:
        raise ValueError("theta_p_bound requires p in [1, inf)")
    worst = max((theta_l1(k, m, s) for s in range(m)), default=Fraction(0))
    return 2.0 * float(worst) ** (1.0 / p.value)


@dataclass(frozen=True)
class QuotientGap:
    """Sandwich record for one (f, p, k, L): the certified quotient-side
    norm, the section lower bound of the lift, and the a priori upper bound
    target.upper + sum_s |f(s)| * 2 * theta_l1(k, m, s)^(1/p)."""

    modulus: int
    p: float
    k: int
    half_width: int
    target: CertifiedInterval
    lift_lower: float
    lift_upper_apriori: float

    def to_dict(self) -> dict:
        return {
            "m": self.modulus,
            "p": self.p,
            "k": self.k,
            "L": self.half_width,
            "target_lower": self.target.lower,
            "target_upper": self.target.upper,
            "lift_lower": self.lift_lower,
            "lift_upper_apriori": self.lift_upper_apriori,
        }


def lift_window(k: int, m: int, radius: int = 0, factor: int = 4) -> TruncationWindow:
    """Default window for lifted elements: support radius plus factor*k*m
    margin (band operators feel the boundary within one bandwidth)."""
    return TruncationWindow(max(radius, (k - 1) * m + m - 1) + factor * k * m)


def _tensor_starts(vstar: np.ndarray, m: int, n: int):
    """Quotient-structured starts x(m j + t) = v*_t w(m j + t): the
    quotient-side witness modulated by smooth or flat envelopes."""
    t = np.arange(n)
    flat = np.ones(n)
    sine = np.sin(np.pi * (t + 1) / (n + 1))
    bump = 1.0 - (2.0 * t / (n - 1) - 1.0) ** 2
    out = []
    for env in (sine, bump**2, flat):
        x = env.astype(np.complex128) * vstar[t % m]
        out.append(x)
    return out


def quotient_gap(
    f: GroupAlgebraElement,
    p,
    k: int,
    window=None,
    seed: int = 0,
    n_random: int = 4,
    tol: float = DEFAULT_TOL,
    max_iter: int = 600,
) -> QuotientGap:
    """Certified sandwich for the lift of f through the k-th averaging
    element.

    target is the certified norm of f on Z_m; lift_lower the section bound
    of the lift at the window (defaults to ``lift_window``); and
    lift_upper_apriori = target.upper + sum_s |f(s)| * 2 * (2/k)^(1/p),
    using the per-generator exact defect norms. The quotient-side witness
    seeds the section search through tensor starts, so moderate iteration
    budgets suffice even on wide windows.
    """
    p = PExponent.coerce(p)
    m = f.group.order
    if m < 2:
        raise ValueError("quotient machinery requires modulus >= 2")
    target = fp_lambda_norm(f, p, seed=seed)
    lift = folner_lift(f, k)
    w = _as_window(window) if window is not None else lift_window(k, m, lift.radius)
    extra = _tensor_starts(target.witness, m, w.dim)
    iv = fpz_norm(lift, p, w, n_random=n_random, seed=seed, tol=tol,
                  max_iter=max_iter, extra_starts=extra)
    penalty = 0.0
    for s in range(m):
        tl1 = theta_l1(k, m, s)
        if tl1 == 0:
            continue
        bound = 2.0 if p.is_inf else 2.0 * float(tl1) ** (1.0 / p.value)
        penalty += abs(complex(f.coeffs[s])) * bound
    return QuotientGap(
        modulus=m,
        p=p.value,
        k=k,
        half_width=w.half_width,
        target=target,
        lift_lower=iv.lower,
        lift_upper_apriori=target.upper + penalty,
    )
