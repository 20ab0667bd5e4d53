"""Sparse polynomials over the rationals and the coordinate ring of S^{n-1}.

A polynomial in ``n`` variables is a map from exponent tuples to nonzero
coefficients. Coefficients are :class:`fractions.Fraction` in exact work and
``float`` when a configuration only has floating-point coordinates; the
arithmetic is the same for both.

The sphere ideal is generated by ``x1^2 + ... + xn^2 - 1``. Canonical
reduction rewrites every ``x1^2`` as ``1 - x2^2 - ... - xn^2``, leaving a
combination of monomials with first exponent at most one. Those monomials
form a basis of the coordinate ring.

Monomials are ordered graded-lexicographically: total degree first, then
ascending lexicographic order of the exponent tuple. With that order
``1 < x2 < x1`` for ``n = 2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .bounds import format_fraction, subspace_dimensions

Exponents = tuple[int, ...]

NEG_INF = float("-inf")

UP_TO = "up-to-degree"
EXACT = "exact-degree"


def monomial_key(exps: Exponents) -> tuple:
    """Sort key realising the graded-lex order."""
    return (sum(exps), exps)


def is_reduced(exps: Exponents) -> bool:
    return exps[0] <= 1


class Polynomial:
    """Immutable sparse polynomial in ``n`` variables.

    Zero coefficients are dropped on construction, so ``terms`` never holds
    a zero. The zero polynomial has degree ``-inf``.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponents, object] | None = None):
        if n < 1:
            raise ValueError(f"number of variables must be positive, got {n}")
        self.n = n
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for n={n}")
            if c != 0:
                clean[exps] = c
        self._terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, n: int, c) -> Polynomial:
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, k: int) -> Polynomial:
        """The coordinate function ``x_{k+1}`` (``k`` is zero-based)."""
        exps = [0] * n
        exps[k] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> Polynomial:
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def linear_form(cls, v: Sequence) -> Polynomial:
        """``<x, v>`` as a polynomial in x."""
        n = len(v)
        terms = {}
        for k, c in enumerate(v):
            exps = [0] * n
            exps[k] = 1
            terms[tuple(exps)] = c
        return cls(n, terms)

    @classmethod
    def sphere_relation(cls, n: int) -> Polynomial:
        """``x1^2 + ... + xn^2 - 1``, the generator of the sphere ideal."""
        terms = {(0,) * n: -1}
        for k in range(n):
            exps = [0] * n
            exps[k] = 2
            terms[tuple(exps)] = 1
        return cls(n, terms)

    # -- accessors ------------------------------------------------------

    @property
    def terms(self) -> dict[Exponents, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exps: Exponents):
        return self._terms.get(tuple(exps), 0)

    def sorted_terms(self) -> list[tuple[Exponents, object]]:
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]))

    @property
    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_reduced(self) -> bool:
        return all(is_reduced(e) for e in self._terms)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
            return other
        return Polynomial.constant(self.n, other)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return Polynomial(self.n, acc)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial(self.n, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        acc: dict[Exponents, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Polynomial(self.n, acc)

    def __rmul__(self, other) -> Polynomial:
        return self * other

    def __truediv__(self, scalar) -> Polynomial:
        if isinstance(scalar, Polynomial):
            raise TypeError("polynomial division is not supported")
        return Polynomial(self.n, {e: c / scalar for e, c in self._terms.items()})

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction, float)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __call__(self, point: Sequence):
        return evaluate(self, point)

    def __repr__(self) -> str:
        return f"Polynomial({self.n}, {str(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


# -- text form --------------------------------------------------------------


def format_monomial(exps: Exponents) -> str:
    factors = []
    for k, e in enumerate(exps):
        if e == 1:
            factors.append(f"x{k + 1}")
        elif e > 1:
            factors.append(f"x{k + 1}^{e}")
    return "*".join(factors) or "1"


def _format_coeff(c) -> str:
    if isinstance(c, float):
        return repr(c)
    return format_fraction(c)


def format_polynomial(f: Polynomial) -> str:
    """Render terms in graded-lex order, e.g. ``1 - x2^2`` or ``3/2*x1*x3``."""
    if f.is_zero():
        return "0"
    out = []
    for i, (exps, c) in enumerate(f.sorted_terms()):
        negative = c < 0
        mag = -c if negative else c
        mono = format_monomial(exps)
        if sum(exps) == 0:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f"{'-' if negative else '+'} {body}")
    return " ".join(out)


class PolynomialSyntaxError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+/\d+|\d+\.\d*|\.\d+|\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at column {pos + 1}: {text[pos:pos + 10]!r}")
        raw = m.group(0)
        col = m.start() + len(raw) - len(raw.lstrip()) + 1
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), col))
        elif m.group("var") is not None:
            tokens.append(("var", m.group("idx"), col))
        else:
            tokens.append(("op", m.group("op"), col))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Parse ``3/2*x1^2*x3 - x2 + 1`` style input in ``n`` variables.

    Coefficients may be integers, ``p/q`` or decimals (converted exactly).
    Variables are ``x1`` .. ``xn``; ``^E`` needs an integer ``E >= 1``.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialSyntaxError("empty expression")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        if tok is None:
            raise PolynomialSyntaxError("unexpected end of expression")
        pos += 1
        return tok

    def factor() -> Polynomial:
        kind, val, col = take()
        if kind == "num":
            return Polynomial.constant(n, Fraction(val))
        if kind == "var":
            k = int(val)
            if not 1 <= k <= n:
                raise PolynomialSyntaxError(f"variable x{k} at column {col} outside x1..x{n}")
            exps = [0] * n
            exps[k - 1] = 1
            tok = peek()
            if tok is not None and tok[:2] == ("op", "^"):
                take()
                ekind, eval_, ecol = take()
                if ekind != "num" or not eval_.isdigit() or int(eval_) < 1:
                    raise PolynomialSyntaxError(f"exponent at column {ecol} must be an integer >= 1")
                exps[k - 1] = int(eval_)
            return Polynomial.monomial(exps)
        raise PolynomialSyntaxError(f"unexpected {val!r} at column {col}")

    def term() -> Polynomial:
        result = factor()
        while (tok := peek()) is not None and tok[:2] == ("op", "*"):
            take()
            result = result * factor()
        return result

    sign = 1
    tok = peek()
    if tok[0] == "op" and tok[1] in "+-":
        take()
        sign = -1 if tok[1] == "-" else 1
    total = term() * sign
    while (tok := peek()) is not None:
        if tok[0] != "op" or tok[1] not in "+-":
            raise PolynomialSyntaxError(f"expected + or - at column {tok[2]}, got {tok[1]!r}")
        take()
        total = total + term() * (-1 if tok[1] == "-" else 1)
    return total


# -- the sphere quotient ----------------------------------------------------


@lru_cache(maxsize=None)
def _relation_power(n: int, t: int) -> Polynomial:
    """``(1 - x2^2 - ... - xn^2)^t`` with integer coefficients."""
    if t == 0:
        return Polynomial.constant(n, 1)
    base = Polynomial.constant(n, 1)
    for k in range(1, n):
        exps = [0] * n
        exps[k] = 2
        base = base - Polynomial.monomial(exps)
    return _relation_power(n, t - 1) * base


def canonical_reduce(f: Polynomial) -> Polynomial:
    """Rewrite each ``x1^(2t+r)`` as ``(1 - x2^2 - ... - xn^2)^t * x1^r``.

    The result agrees with ``f`` at every point of the unit sphere and only
    contains monomials with first exponent 0 or 1.
    """
    n = f.n
    if n < 2:
        raise ValueError("canonical reduction needs n >= 2")
    acc: dict[Exponents, object] = {}
    for exps, c in f.items():
        t, r = divmod(exps[0], 2)
        if t == 0:
            acc[exps] = acc.get(exps, 0) + c
            continue
        for rexps, rc in _relation_power(n, t).items():
            e = (r,) + tuple(a + b for a, b in zip(exps[1:], rexps[1:]))
            acc[e] = acc.get(e, 0) + c * rc
    return Polynomial(n, acc)


def evaluate(f: Polynomial, point: Sequence):
    if len(point) != f.n:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.n} variables")
    total = 0
    for exps, c in f.items():
        term = c
        for x, e in zip(point, exps):
            if e:
                term *= x**e
        total += term
    return total


# -- monomial bases ---------------------------------------------------------


@dataclass(frozen=True)
class BasisOrder:
    n: int
    d: int
    mode: str
    monomials: tuple[Exponents, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {m: k for k, m in enumerate(self.monomials)})

    def __len__(self) -> int:
        return len(self.monomials)

    def columns_of_degree(self, d: int) -> list[int]:
        return [k for k, m in enumerate(self.monomials) if sum(m) == d]


def _exponents_of_degree(parts: int, total: int) -> Iterable[Exponents]:
    """All exponent tuples of length ``parts`` summing to ``total``."""
    for combo in combinations_with_replacement(range(parts), total):
        exps = [0] * parts
        for k in combo:
            exps[k] += 1
        yield tuple(exps)


def enumerate_basis(n: int, d: int, mode: str = UP_TO) -> BasisOrder:
    """Reduced monomials (first exponent <= 1) of degree <= d, or exactly d."""
    subspace_dimensions(n, d)  # domain check
    if mode not in (UP_TO, EXACT):
        raise ValueError(f"unknown basis mode {mode!r}")
    degrees = range(d + 1) if mode == UP_TO else (d,)
    monos = []
    for deg in degrees:
        for first in (0, 1):
            if first > deg:
                continue
            for rest in _exponents_of_degree(n - 1, deg - first):
                monos.append((first,) + rest)
    monos.sort(key=monomial_key)
    return BasisOrder(n, d, mode, tuple(monos))


def coefficient_vector(f: Polynomial, basis: BasisOrder) -> list:
    """Coordinates of a reduced polynomial in ``basis`` (an up-to-degree basis)."""
    if basis.mode != UP_TO:
        raise ValueError("coefficient vectors are taken over an up-to-degree basis")
    if f.n != basis.n:
        raise ValueError(f"dimension mismatch: polynomial n={f.n}, basis n={basis.n}")
    zero = 0.0 if any(isinstance(c, float) for _, c in f.items()) else Fraction(0)
    vec = [zero] * len(basis)
    for exps, c in f.items():
        k = basis.index.get(exps)
        if k is None:
            reason = "not reduced" if not is_reduced(exps) else f"degree above {basis.d}"
            raise ValueError(f"monomial {format_monomial(exps)} is outside the basis ({reason})")
        vec[k] = c
    return vec


def from_coefficients(vec: Sequence, basis: BasisOrder) -> Polynomial:
    if len(vec) != len(basis):
        raise ValueError("vector length does not match basis size")
    return Polynomial(basis.n, dict(zip(basis.monomials, vec)))
