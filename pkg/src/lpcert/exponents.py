"""Holder exponents in [1, inf] and their conjugates."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PExponent:
    """An exponent p in [1, inf], with 1/p + 1/p' = 1 defining the conjugate p'."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v) or v < 1.0:
            raise ValueError(f"exponent must lie in [1, inf], got {self.value!r}")
        object.__setattr__(self, "value", v)

    @classmethod
    def coerce(cls, p) -> "PExponent":
        return p if isinstance(p, PExponent) else cls(float(p))

    @property
    def conjugate(self) -> "PExponent":
        v = self.value
        if v == 1.0:
            return PExponent(math.inf)
        if math.isinf(v):
            return PExponent(1.0)
        return PExponent(v / (v - 1.0))

    @property
    def reciprocal(self) -> float:
        """1/p, with 1/inf = 0."""
        return 0.0 if math.isinf(self.value) else 1.0 / self.value

    @property
    def is_one(self) -> bool:
        return self.value == 1.0

    @property
    def is_two(self) -> bool:
        return self.value == 2.0

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.value)

    @property
    def is_endpoint(self) -> bool:
        """True for p in {1, 2, inf}, where the induced matrix norm is exact."""
        return self.is_one or self.is_two or self.is_inf

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"PExponent({'inf' if self.is_inf else self.value})"


def interpolation_theta(p, p0, p1) -> float:
    """Solve 1/p = (1-theta)/p0 + theta/p1 for theta in [0, 1].

    Raises ValueError if 1/p does not lie between the endpoint reciprocals.
    """
    p, p0, p1 = PExponent.coerce(p), PExponent.coerce(p0), PExponent.coerce(p1)
    r, r0, r1 = p.reciprocal, p0.reciprocal, p1.reciprocal
    if r0 == r1:
        if r != r0:
            raise ValueError(f"p={p.value} outside degenerate endpoint pair ({p0.value}, {p1.value})")
        return 0.0
    theta = (r - r0) / (r1 - r0)
    if theta < -1e-15 or theta > 1.0 + 1e-15:
        raise ValueError(f"p={p.value} is not between endpoints ({p0.value}, {p1.value})")
    return min(max(theta, 0.0), 1.0)
