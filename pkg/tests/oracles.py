"""Independent reference computations used to produce expected values.

Nothing here imports the package's arithmetic paths: binomials come from
Pascal's triangle, basis counts from brute-force exponent enumeration and
ranks from plain Gaussian elimination over Fractions.
"""

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def pascal(a, b):
    if b < 0 or a < 0 or b > a:
        return 0
    if b == 0 or b == a:
        return 1
    return pascal(a - 1, b - 1) + pascal(a - 1, b)


def brute_basis_counts(n, d):
    """(#reduced monomials of degree <= d, #of degree exactly d) by enumeration.

    Walks every exponent vector with first exponent <= 1 and total degree
    <= d, one coordinate at a time.
    """
    counts = [0] * (d + 1)

    def walk(k, used):
        if k == n:
            counts[used] += 1
            return
        top = 1 if k == 0 else d - used
        for e in range(min(top, d - used) + 1):
            walk(k + 1, used + e)

    walk(0, 0)
    return sum(counts), counts[d]


def gauss_rank(matrix):
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    rank = 0
    for col in range(len(rows[0])):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def dm_pascal(n, s):
    return pascal(n + s - 1, s) + (pascal(n + s - 4, s - 3) if s >= 3 else 0)


def bm_pascal(n, s):
    def c(a, b):
        return pascal(a, b) if b >= 0 else 0

    return c(n + s - 3, s - 2) + c(n + s - 4, s - 3) + Fraction(n + 2 * s - 2, s) * c(n + s - 3, s - 1)


def eval_poly_dict(terms, point):
    """Evaluate {exponent tuple: coeff} directly."""
    total = Fraction(0)
    for exps, c in terms.items():
        term = Fraction(c)
        for x, e in zip(point, exps):
            term *= Fraction(x) ** e
        total += term
    return total
