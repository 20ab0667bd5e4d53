"""Closed-form cardinality bounds for spherical s-distance sets.

Everything here is exact: integers are Python ints and the one bound that
is not obviously integral (Barg-Musin) is a :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


def binom(a: int, b: int) -> int:
    """Binomial coefficient with the conventions used by the bound formulas.

    ``b < 0`` gives 0 regardless of ``a`` (checked first), ``b > a >= 0``
    gives 0. A negative ``a`` with ``b >= 0`` is rejected.
    """
    if b < 0:
        return 0
    if a < 0:
        raise ValueError(f"binom({a}, {b}) undefined: negative upper index")
    if b > a:
        return 0
    return math.comb(a, b)


def subspace_dimensions(n: int, d: int) -> tuple[int, int]:
    """Return ``(dim Gamma_{<=d}, dim Gamma_d)`` for the coordinate ring of S^{n-1}."""
    if n < 2:
        raise ValueError(f"dimension n must be >= 2, got {n}")
    if d < 0:
        raise ValueError(f"degree d must be >= 0, got {d}")
    m_le = binom(n + d - 1, d) + binom(n + d - 2, d - 1)
    m_eq = binom(n + d - 2, d) + binom(n + d - 3, d - 1)
    return m_le, m_eq


def gerzon_bound(n: int) -> int:
    return binom(n + 1, 2)


def dgs_bound(n: int, s: int) -> int:
    return subspace_dimensions(n, s)[0]


def hegedus_bound(n: int, s: int) -> int:
    return binom(n + s - 1, s)


def barg_musin_bound(n: int, s: int) -> Fraction:
    return (
        binom(n + s - 3, s - 2)
        + binom(n + s - 4, s - 3)
        + Fraction(n + 2 * s - 2, s) * binom(n + s - 3, s - 1)
    )


def dm_bound(n: int, s: int) -> int:
    """Bound on |F| for an s-distance set on S^{n-1} whose inner products sum to zero."""
    return binom(n + s - 1, s) + binom(n + s - 4, s - 3)


APPLICABILITY = {
    "gerzon": "s = 2 with P(F) = {alpha, -alpha}",
    "musin": "s = 2 with t1 + t2 >= 0 (same value as gerzon)",
    "dgs": "any spherical s-distance set",
    "hegedus": "s even and P(F) = {+-alpha_1, ..., +-alpha_l}",
    "barg_musin": "s even and sum(t) >= 0",
    "dm": "sum(t) = 0",
}


@dataclass(frozen=True)
class BoundsReport:
    n: int
    s: int
    gerzon: int
    dgs: int
    hegedus: int
    barg_musin: Fraction
    dm: int
    applicability_notes: dict[str, str] = field(default_factory=lambda: dict(APPLICABILITY))

    def as_row(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "gerzon": self.gerzon,
            "dgs": self.dgs,
            "hegedus": self.hegedus,
            "barg_musin": format_fraction(self.barg_musin),
            "dm": self.dm,
        }


def format_fraction(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _check_ns(n: int, s: int) -> None:
    if n < 2:
        raise ValueError(f"dimension n must be >= 2, got {n}")
    if s < 1:
        raise ValueError(f"number of distances s must be >= 1, got {s}")


def compute_bounds(n: int, s: int) -> BoundsReport:
    _check_ns(n, s)
    return BoundsReport(
        n=n,
        s=s,
        gerzon=gerzon_bound(n),
        dgs=dgs_bound(n, s),
        hegedus=hegedus_bound(n, s),
        barg_musin=barg_musin_bound(n, s),
        dm=dm_bound(n, s),
    )


def check_identities(n: int, s: int) -> bool:
    """Check Pascal's rule for row ``n``, the Barg-Musin rearrangement and
    ``dm == barg_musin`` exactly. False means a bug, not bad input."""
    _check_ns(n, s)
    for r in range(1, n):
        if binom(n - 1, r - 1) + binom(n - 1, r) != binom(n, r):
            return False
    if s >= 2:
        lhs = binom(n + s - 3, s - 2) + Fraction(n + 2 * s - 2, s) * binom(n + s - 3, s - 1)
        if lhs != binom(n + s - 1, s):
            return False
        if Fraction(dm_bound(n, s)) != barg_musin_bound(n, s):
            return False
    return True
