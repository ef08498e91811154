"""Finite groups, their group algebras, and norms on l^p of the group.

A finite group is a validated multiplication table over indices 0..n-1.
The left regular representation turns a coefficient vector f into the
matrix M[t][s] = f(t s^-1) acting by convolution on l^p; its certified
norm is the group-algebra norm of f. For cyclic groups the same algebra
is carried to diagonal (Gelfand) coordinates by the DFT, where circulant
conjugation u_n d(xi) u_n^-1 realizes the same operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .exponents import PExponent
from .pnorm import CertifiedInterval, as_matrix, pnorm


class GroupValidationError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """Multiplication table group: table[a, b] = a * b on indices 0..n-1."""

    name: str
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        object.__setattr__(self, "table", t)
        n = self.order
        if t.shape != (n, n) or n == 0:
            raise GroupValidationError("multiplication table must be square and nonempty")
        if t.min() < 0 or t.max() >= n:
            raise GroupValidationError("table entries must be element indices")
        ident = [e for e in range(n) if np.all(t[e] == np.arange(n)) and np.all(t[:, e] == np.arange(n))]
        if len(ident) != 1:
            raise GroupValidationError("table has no two-sided identity")
        object.__setattr__(self, "_identity", ident[0])
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(t[a] == ident[0])[0]
            if len(hits) != 1 or t[hits[0], a] != ident[0]:
                raise GroupValidationError(f"element {a} has no two-sided inverse")
            inv[a] = hits[0]
        object.__setattr__(self, "_inverse", inv)
        # associativity, exhaustive over all triples: (ab)c == a(bc)
        left = t[t.reshape(-1), :].reshape(n, n, n)
        right = t[:, t.reshape(-1)].reshape(n, n, n)
        if not np.array_equal(left, right):
            raise GroupValidationError("multiplication table is not associative")

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inverse[a])

    @property
    def inverse_table(self) -> np.ndarray:
        return self._inverse.copy()

    def elements(self) -> range:
        return range(self.order)


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n with addition modulo n."""
    if n < 1:
        raise GroupValidationError("cyclic group order must be >= 1")
    idx = np.arange(n)
    return FiniteGroup(f"Z{n}", (idx[:, None] + idx[None, :]) % n)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n; elements are permutations of {0..n-1} in lexicographic order,
    composed as functions (p * q)(i) = p(q(i))."""
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    table = np.zeros((m, m), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[k]] for k in range(n))]
    return FiniteGroup(f"S{n}", table)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with element (a, b) encoded as a * |H| + b."""
    nh = h.order
    n = g.order * nh
    table = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        a1, a2 = divmod(a, nh)
        for b in range(n):
            b1, b2 = divmod(b, nh)
            table[a, b] = g.mul(a1, b1) * nh + h.mul(a2, b2)
    return FiniteGroup(f"{g.name}x{h.name}", table)


@dataclass(frozen=True)
class GroupAlgebraElement:
    """Finitely supported coefficient function on a finite group."""

    group: FiniteGroup
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (self.group.order,):
            raise ValueError(
                f"coefficient vector length {c.shape} does not match group order {self.group.order}"
            )
        if not np.all(np.isfinite(c.view(np.float64))):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def delta(cls, group: FiniteGroup, s: int) -> "GroupAlgebraElement":
        c = np.zeros(group.order, dtype=np.complex128)
        c[s] = 1.0
        return cls(group, c)

    @classmethod
    def random(cls, group: FiniteGroup, rng) -> "GroupAlgebraElement":
        n = group.order
        return cls(group, rng.standard_normal(n) + 1j * rng.standard_normal(n))


def convolve(f: GroupAlgebraElement, g: GroupAlgebraElement) -> GroupAlgebraElement:
    """(f * g)(t) = sum_s f(s) g(s^-1 t)."""
    if f.group is not g.group and not np.array_equal(f.group.table, g.group.table):
        raise ValueError("convolution requires elements of the same group")
    grp = f.group
    out = np.zeros(grp.order, dtype=np.complex128)
    for s in grp.elements():
        si = grp.inv(s)
        for t in grp.elements():
            out[t] += f.coeffs[s] * g.coeffs[grp.mul(si, t)]
    return GroupAlgebraElement(grp, out)


def involution(f: GroupAlgebraElement) -> GroupAlgebraElement:
    """f_check(s) = f(s^-1); its representation is the transpose of f's."""
    return GroupAlgebraElement(f.group, f.coeffs[f.group.inverse_table])


def regular_rep(f: GroupAlgebraElement) -> np.ndarray:
    """Matrix of left convolution by f on the canonical basis: M[t][s] = f(t s^-1)."""
    grp = f.group
    idx = grp.table[:, grp.inverse_table]  # idx[t, s] = t * s^-1
    return f.coeffs[idx]


def fp_lambda_norm(f: GroupAlgebraElement, p, **kwargs) -> CertifiedInterval:
    """Certified group-algebra norm of f: the induced p-norm of its left
    regular representation (for finite groups this equals the universal
    norm over all l^p representations)."""
    return pnorm(regular_rep(f), p, **kwargs)


# -- cyclic groups in diagonal coordinates ---------------------------------


def dft_matrix(n: int) -> np.ndarray:
    """u_n with entries omega^(jk) / sqrt(n), omega = exp(2 pi i / n); unitary."""
    if n < 1:
        raise ValueError("n must be >= 1")
    j = np.arange(n)
    return np.exp(2j * np.pi * np.outer(j, j) / n) / np.sqrt(n)


@dataclass(frozen=True)
class CirculantElement:
    """Element of the cyclic-group algebra in diagonal (Gelfand) coordinates.

    Sign convention: u_n as above satisfies u_n^-1 R(delta_1) u_n =
    d(1, conj(omega), conj(omega)^2, ...), so coordinates are the forward
    DFT of the coefficients (numpy convention) and coefficients are the
    inverse DFT of the coordinates.
    """

    gelfand: np.ndarray = field(repr=False)

    def __post_init__(self):
        x = np.asarray(self.gelfand, dtype=np.complex128)
        if x.ndim != 1 or x.size == 0:
            raise ValueError("gelfand coordinates must be a nonempty vector")
        object.__setattr__(self, "gelfand", x)

    @property
    def n(self) -> int:
        return int(self.gelfand.size)


def to_gelfand(f: GroupAlgebraElement) -> CirculantElement:
    """Diagonal coordinates of an element of a cyclic group algebra."""
    _require_cyclic(f.group)
    return CirculantElement(np.fft.fft(f.coeffs))


def from_gelfand(xi: CirculantElement) -> GroupAlgebraElement:
    """Coefficients on Z_n recovered from diagonal coordinates."""
    return GroupAlgebraElement(cyclic_group(xi.n), np.fft.ifft(xi.gelfand))


def _require_cyclic(group: FiniteGroup):
    n = group.order
    if not np.array_equal(group.table, (np.arange(n)[:, None] + np.arange(n)[None, :]) % n):
        raise ValueError("operation requires a cyclic group in standard form")


def circulant_matrix(xi: CirculantElement) -> np.ndarray:
    """u_n d(xi) u_n^-1, the represented operator in matrix form."""
    u = dft_matrix(xi.n)
    return u @ np.diag(xi.gelfand) @ u.conj().T


def circulant_norm(xi: CirculantElement, p, **kwargs) -> CertifiedInterval:
    """Certified norm of xi as an element of the cyclic-group algebra on l^p."""
    return pnorm(circulant_matrix(xi), p, **kwargs)


def cyclic_shift(xi: CirculantElement) -> CirculantElement:
    """tau(x_0, ..., x_{n-1}) = (x_{n-1}, x_0, ..., x_{n-2}); an isometry of
    the algebra norm for every p."""
    return CirculantElement(np.roll(xi.gelfand, 1))


# -- subgroups and quotients ------------------------------------------------


def _check_homomorphism(src: FiniteGroup, dst: FiniteGroup, phi: np.ndarray):
    for a in src.elements():
        for b in src.elements():
            if phi[src.mul(a, b)] != dst.mul(int(phi[a]), int(phi[b])):
                raise GroupValidationError(
                    f"map is not a homomorphism at pair ({a}, {b})"
                )


def subgroup_embed(
    f: GroupAlgebraElement, big: FiniteGroup, iota
) -> GroupAlgebraElement:
    """Transport f along a verified injective homomorphism iota: H -> G.

    The result is supported on iota(H) with f's coefficients; its regular
    representation is permutation-similar to [G:H] diagonal copies of f's
    (see ``coset_block_permutation``), so the certified norms agree.
    """
    small = f.group
    iota = np.asarray(iota, dtype=np.int64)
    if iota.shape != (small.order,):
        raise GroupValidationError("iota must list an image for every element of H")
    if len(set(iota.tolist())) != small.order:
        raise GroupValidationError("iota is not injective")
    _check_homomorphism(small, big, iota)
    out = np.zeros(big.order, dtype=np.complex128)
    out[iota] = f.coeffs
    return GroupAlgebraElement(big, out)


def coset_block_permutation(small: FiniteGroup, big: FiniteGroup, iota) -> np.ndarray:
    """Basis order for which the embedded representation is block diagonal.

    Returns perm of length |G| grouping G into right cosets H x, smallest
    representative first, each coset enumerated as iota(h) x in H's element
    order. For any f on H, regular_rep(embedded f)[perm][:, perm] equals a
    direct sum of [G:H] copies of regular_rep(f), entrywise exactly.
    """
    iota = np.asarray(iota, dtype=np.int64)
    image = iota.tolist()
    seen = set()
    perm = []
    for x in big.elements():
        if x in seen:
            continue
        coset = [big.mul(h, x) for h in image]
        seen.update(coset)
        perm.extend(coset)
    return np.asarray(perm, dtype=np.int64)


def quotient_push(
    f: GroupAlgebraElement, quot: FiniteGroup, pi
) -> GroupAlgebraElement:
    """Fiber-sum push-forward along a verified surjective homomorphism:
    (push f)(q) = sum over pi(s) = q of f(s). Contractive for every
    certified norm."""
    src = f.group
    pi = np.asarray(pi, dtype=np.int64)
    if pi.shape != (src.order,):
        raise GroupValidationError("pi must list an image for every element of G")
    if set(pi.tolist()) != set(range(quot.order)):
        raise GroupValidationError("pi is not surjective")
    _check_homomorphism(src, quot, pi)
    out = np.zeros(quot.order, dtype=np.complex128)
    np.add.at(out, pi, f.coeffs)
    return GroupAlgebraElement(quot, out)


def cyclic_quotient_map(n: int, m: int) -> np.ndarray:
    """The reduction Z_n -> Z_m, x -> x mod m; requires m | n."""
    if n % m:
        raise GroupValidationError(f"no reduction homomorphism Z_{n} -> Z_{m}")
    return np.arange(n, dtype=np.int64) % m


def positive_norm_check(f: GroupAlgebraElement, p, tol: float = 1e-7, **kwargs) -> bool:
    """For nonnegative real coefficients the algebra norm is the same at
    every p; verify the certified intervals at p and at 2 overlap."""
    c = f.coeffs
    if np.any(c.imag != 0.0) or np.any(c.real < 0.0):
        raise ValueError("positive_norm_check requires nonnegative real coefficients")
    ip = fp_lambda_norm(f, p, **kwargs)
    i2 = fp_lambda_norm(f, 2.0, **kwargs)
    return ip.overlaps(i2, tol)
