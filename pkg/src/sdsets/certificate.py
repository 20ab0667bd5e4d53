"""Instance-level linear-independence certificates.

For a configuration ``v_1, ..., v_m`` with distinct inner products
``t_1, ..., t_s`` each point gets the polynomial

    f_i(x) = prod_k (<x, v_i> - t_k) / prod_k (1 - t_k)

which is 1 at ``v_i`` and 0 at every other point. After canonical reduction
the ``f_i`` live in the space of polynomial functions of degree <= s on the
sphere. When the ``t_k`` sum to zero no reduced ``f_i`` has a degree ``s-1``
component, so their span meets the degree ``s-1`` subspace trivially and
``m`` is at most ``dim Gamma_{<=s} - dim Gamma_{s-1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .bounds import compute_bounds, format_fraction, subspace_dimensions
from .configurations import EXACT, InnerProductProfile, PointConfiguration, profile
from .sphere_poly import UP_TO, BasisOrder, Polynomial, canonical_reduce, coefficient_vector, enumerate_basis, evaluate

FLOAT_RANK_RTOL = 1e-8
FLOAT_GAP_RTOL = 1e-6
DELTA_TOL_FACTOR = 10


class CertificateError(ValueError):
    pass


# -- rank ---------------------------------------------------------------------


def exact_rank(matrix: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers by the lcm of their denominators, which
    does not change the rank. Every division in the elimination is exact.
    """
    rows = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * scale) for x in row])
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, n_rows):
            a = rows[i][col]
            ri = rows[i]
            pr = rows[rank]
            for j in range(col + 1, n_cols):
                ri[j] = (p * ri[j] - a * pr[j]) // prev
            ri[col] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def float_rank(matrix, rtol: float = FLOAT_RANK_RTOL) -> int:
    """Rank by elimination with complete pivoting.

    A pivot counts as zero once it falls below ``rtol`` times the largest
    absolute entry of the original matrix.
    """
    a = np.array(matrix, dtype=float)
    if a.size == 0:
        return 0
    threshold = rtol * np.abs(a).max()
    if threshold == 0:
        return 0
    rank = 0
    n_rows, n_cols = a.shape
    while rank < min(n_rows, n_cols):
        sub = np.abs(a[rank:, rank:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= threshold:
            break
        i += rank
        j += rank
        a[[rank, i]] = a[[i, rank]]
        a[:, [rank, j]] = a[:, [j, rank]]
        factors = a[rank + 1:, rank] / a[rank, rank]
        a[rank + 1:, rank:] -= np.outer(factors, a[rank, rank:])
        rank += 1
    return rank


# -- certificate --------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    config: PointConfiguration
    profile: InnerProductProfile
    c: object
    polys: tuple[Polynomial, ...]
    reduced_polys: tuple[Polynomial, ...]
    basis: BasisOrder
    matrix: tuple[tuple, ...]
    rank: int

    @property
    def exact(self) -> bool:
        return self.config.mode == EXACT


def _delta_polynomial(v: Sequence, values: Sequence, c) -> Polynomial:
    form = Polynomial.linear_form(v)
    prod = Polynomial.constant(len(v), 1)
    for t in values:
        prod = prod * (form - t)
    return prod / c


def build_certificate(F: PointConfiguration) -> Certificate:
    if F.m < 2:
        raise CertificateError("a certificate needs at least two points")
    prof = profile(F)
    values = prof.values
    for t in values:
        if t == 1 or (F.mode != EXACT and abs(1 - t) < F.tolerance):
            raise CertificateError(f"inner product {t} equals 1: duplicate points")
    c = Fraction(1) if F.mode == EXACT else 1.0
    for t in values:
        c *= 1 - t
    polys = tuple(_delta_polynomial(v, values, c) for v in F.points)
    reduced = tuple(canonical_reduce(f) for f in polys)
    basis = enumerate_basis(F.n, prof.s, UP_TO)
    matrix = tuple(tuple(coefficient_vector(f, basis)) for f in reduced)
    rank = exact_rank(matrix) if F.mode == EXACT else float_rank(matrix)
    return Certificate(F, prof, c, polys, reduced, basis, matrix, rank)


@dataclass
class BoundCheck:
    name: str
    value: object
    applicable: bool
    respected: bool | None


@dataclass
class CheckReport:
    m: int
    n: int
    s: int
    mode: str
    values: tuple
    sum: object
    sum_zero: bool
    rank: int
    delta: bool
    delta_max_error: float
    degree_gap: bool | None  # None when the sum-zero hypothesis fails
    degree_gap_max: float | None
    dimension_ok: bool | None
    independent: bool
    dm: int
    bound_status: str  # attained | strict | violated | not applicable
    bounds: list[BoundCheck] = field(default_factory=list)
    severity: str = "ok"

    @property
    def passed(self) -> bool:
        return (
            self.delta
            and self.independent
            and self.degree_gap is not False
            and self.dimension_ok is not False
            and self.bound_status != "violated"
            and all(b.respected is not False for b in self.bounds)
        )

    def _scalar(self, x):
        if isinstance(x, Fraction):
            return format_fraction(x)
        return x

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "s": self.s,
            "mode": self.mode,
            "inner_products": [self._scalar(t) for t in self.values],
            "sum": self._scalar(self.sum),
            "sum_zero": self.sum_zero,
            "checks": {
                "delta": self.delta,
                "delta_max_error": self.delta_max_error,
                "degree_gap": "not applicable" if self.degree_gap is None else self.degree_gap,
                "degree_gap_max": self.degree_gap_max,
                "dimension_inequality": "not applicable" if self.dimension_ok is None else self.dimension_ok,
                "independent": self.independent,
            },
            "rank": self.rank,
            "dm": self.dm,
            "bound": self.bound_status,
            "bounds": [
                {"name": b.name, "value": self._scalar(b.value), "applicable": b.applicable, "respected": b.respected}
                for b in self.bounds
            ],
            "severity": self.severity,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def bound_line(self) -> str:
        if self.bound_status == "attained":
            return f"bound: attained ({self.m} = {self.dm})"
        if self.bound_status == "strict":
            return f"bound: strict ({self.m} < {self.dm})"
        if self.bound_status == "violated":
            return f"bound: VIOLATED ({self.m} > {self.dm})"
        return f"bound: not applicable (sum of inner products = {self._scalar(self.sum)})"

    def to_text(self) -> str:
        def mark(ok):
            return "not applicable" if ok is None else ("pass" if ok else "FAIL")

        vals = ", ".join(str(self._scalar(t)) for t in self.values)
        lines = [
            f"points: {self.m}  dim: {self.n}  s: {self.s}  mode: {self.mode}",
            f"inner products: {vals}",
            f"sum: {self._scalar(self.sum)}  sum_zero: {str(self.sum_zero).lower()}",
            f"delta: {mark(self.delta)} (max error {self.delta_max_error:.3e})",
            f"degree_gap: {mark(self.degree_gap)}"
            + ("" if self.degree_gap_max is None else f" (max degree-{self.s - 1} coefficient {self.degree_gap_max:.3e})"),
            f"dimension_inequality: {mark(self.dimension_ok)}",
            f"independent: {mark(self.independent)} (rank {self.rank} of {self.m})",
            self.bound_line(),
        ]
        for b in self.bounds:
            status = "hypothesis not met" if not b.applicable else ("respected" if b.respected else "EXCEEDED")
            lines.append(f"  {b.name}: {self._scalar(b.value)} ({status})")
        lines.append(f"severity: {self.severity}")
        lines.append(f"result: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def verify_certificate(cert: Certificate) -> CheckReport:
    F, prof = cert.config, cert.profile
    exact = cert.exact
    m, n, s = F.m, F.n, prof.s

    # delta: reduced f_i evaluated at every point
    max_err = 0.0
    delta_ok = True
    for i, f in enumerate(cert.reduced_polys):
        for j, v in enumerate(F.points):
            err = evaluate(f, v) - (1 if i == j else 0)
            if exact:
                delta_ok &= err == 0
            max_err = max(max_err, abs(float(err)))
    if not exact:
        delta_ok = max_err <= DELTA_TOL_FACTOR * F.tolerance

    gap_ok = gap_max = dim_ok = None
    if prof.sum_zero:
        cols = cert.basis.columns_of_degree(s - 1)
        residues = [cert.matrix[i][k] for i in range(m) for k in cols]
        gap_max = max((abs(float(x)) for x in residues), default=0.0)
        if exact:
            gap_ok = all(x == 0 for x in residues)
        else:
            scale = max((abs(x) for row in cert.matrix for x in row), default=0.0)
            gap_ok = gap_max <= FLOAT_GAP_RTOL * scale
        if gap_ok:
            m_le, _ = subspace_dimensions(n, s)
            _, m_gap = subspace_dimensions(n, s - 1)
            dim_ok = cert.rank + m_gap <= m_le

    report_bounds = compute_bounds(n, s)
    dm = report_bounds.dm
    if prof.sum_zero:
        status = "attained" if m == dm else ("strict" if m < dm else "violated")
    else:
        status = "not applicable"

    hyp = prof.hypotheses()
    checks = [
        BoundCheck("dgs", report_bounds.dgs, hyp["dgs"], None),
        BoundCheck("gerzon", report_bounds.gerzon, hyp["gerzon"], None),
        BoundCheck("musin", report_bounds.gerzon, hyp["musin"], None),
        BoundCheck("hegedus", report_bounds.hegedus, hyp["hegedus"], None),
        BoundCheck("barg_musin", report_bounds.barg_musin, hyp["barg_musin"], None),
        BoundCheck("dm", dm, hyp["dm"], None),
    ]
    for b in checks:
        if b.applicable:
            b.respected = m <= b.value

    severity = "ok"
    if status == "violated":
        severity = "critical"
    elif not (delta_ok and cert.rank == m) or gap_ok is False or dim_ok is False:
        severity = "error"

    return CheckReport(
        m=m,
        n=n,
        s=s,
        mode=F.mode,
        values=prof.values,
        sum=prof.sum,
        sum_zero=prof.sum_zero,
        rank=cert.rank,
        delta=bool(delta_ok),
        delta_max_error=max_err,
        degree_gap=gap_ok,
        degree_gap_max=gap_max,
        dimension_ok=dim_ok,
        independent=cert.rank == m,
        dm=dm,
        bound_status=status,
        bounds=checks,
        severity=severity,
    )


def certify(F: PointConfiguration) -> CheckReport:
    return verify_certificate(build_certificate(F))
