"""Finite point sets on the unit sphere and their inner-product profiles.

Two scalar modes are supported. In ``exact`` mode coordinates are
:class:`~fractions.Fraction` and every check is an equality. In ``float`` mode
coordinates are floats and checks use the configuration's tolerance; this is
the only option for configurations with irrational coordinates such as the
six diagonals of the icosahedron.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Sequence

from .bounds import format_fraction

EXACT = "exact"
FLOAT = "float"
DEFAULT_TOL = 1e-9

KNOWN_CONFIGURATIONS = ("orthonormal", "simplex", "cross_polytope", "hexagon_lines", "icosahedron_lines")


class ConfigurationError(ValueError):
    """Invalid point configuration or pointset file."""


class PointsetParseError(ConfigurationError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class NotOnSphereError(ConfigurationError):
    pass


class DuplicatePointError(ConfigurationError):
    pass


class ProfileError(ValueError):
    """The inner-product profile is undefined or ambiguous."""


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class PointConfiguration:
    n: int
    mode: str
    points: tuple[tuple, ...]
    tolerance: float = 0.0

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise ConfigurationError(f"unknown mode {self.mode!r}")
        if self.n < 2:
            raise ConfigurationError(f"dimension must be >= 2, got {self.n}")
        if self.mode == EXACT:
            pts = tuple(tuple(Fraction(c) for c in p) for p in self.points)
            if self.tolerance != 0:
                raise ConfigurationError("exact configurations carry tolerance 0")
        else:
            pts = tuple(tuple(float(c) for c in p) for p in self.points)
            if not self.tolerance >= 0:
                raise ConfigurationError(f"tolerance must be non-negative, got {self.tolerance}")
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ConfigurationError("configuration has no points")
        for k, p in enumerate(pts):
            if len(p) != self.n:
                raise ConfigurationError(f"point {k + 1} has {len(p)} coordinates, expected {self.n}")
            sq = _dot(p, p)
            if self.mode == EXACT:
                if sq != 1:
                    raise NotOnSphereError(
                        f"point {k + 1} is not on the sphere: squared norm {format_fraction(sq)} "
                        f"(deviation {format_fraction(sq - 1)})"
                    )
            elif abs(math.sqrt(sq) - 1) > self.tolerance:
                raise NotOnSphereError(
                    f"point {k + 1} is not on the sphere: norm deviation {math.sqrt(sq) - 1:.3e} "
                    f"exceeds tolerance {self.tolerance:g}"
                )
        self._check_distinct(pts)

    def _check_distinct(self, pts) -> None:
        if self.mode == EXACT:
            seen: dict[tuple, int] = {}
            for k, p in enumerate(pts):
                if p in seen:
                    raise DuplicatePointError(f"points {seen[p] + 1} and {k + 1} coincide")
                seen[p] = k
            return
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if math.dist(pts[i], pts[j]) <= self.tolerance:
                    raise DuplicatePointError(
                        f"points {i + 1} and {j + 1} coincide within tolerance {self.tolerance:g}"
                    )

    @property
    def m(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def gram(self) -> list[list]:
        return [[_dot(p, q) for q in self.points] for p in self.points]

    def to_text(self) -> str:
        return write_config(self)


@dataclass(frozen=True)
class InnerProductProfile:
    values: tuple
    multiplicities: tuple[int, ...]
    s: int
    sum: object
    distances: tuple[float, ...]
    squared_distances: tuple
    sum_zero: bool
    symmetric_pm: bool
    mode: str
    tolerance: float

    def hypotheses(self) -> dict[str, bool]:
        """Which bound hypotheses this profile satisfies."""
        even = self.s % 2 == 0
        nonneg = self.sum >= 0 if self.mode == EXACT else self.sum >= -self.tolerance
        return {
            "dgs": True,
            "gerzon": self.s == 2 and self.symmetric_pm,
            "musin": self.s == 2 and nonneg,
            "hegedus": even and self.symmetric_pm,
            "barg_musin": even and nonneg,
            "dm": self.sum_zero,
        }


def _cluster(values: list[float], tol: float) -> list[list[float]]:
    """Single-linkage clusters of sorted floats; gaps in (tol, 3 tol) are ambiguous."""
    clusters = [[values[0]]]
    for prev, cur in zip(values, values[1:]):
        gap = cur - prev
        if gap <= tol:
            clusters[-1].append(cur)
        elif gap < 3 * tol:
            raise ProfileError(
                f"ambiguous inner-product clustering: values {prev!r} and {cur!r} are {gap:.3e} apart, "
                f"between tolerance {tol:g} and 3x tolerance"
            )
        else:
            clusters.append([cur])
    return clusters


def profile(F: PointConfiguration) -> InnerProductProfile:
    """Distinct inner products P(F), distances D(F) and derived flags."""
    if F.m < 2:
        raise ProfileError("inner-product set needs at least two points")
    pts = F.points
    pairs = [(i, j) for i in range(F.m) for j in range(i + 1, F.m)]
    dots = [_dot(pts[i], pts[j]) for i, j in pairs]
    sqd = [sum((a - b) ** 2 for a, b in zip(pts[i], pts[j])) for i, j in pairs]

    if F.mode == EXACT:
        counts = Counter(dots)
        values = tuple(sorted(counts))
        mults = tuple(counts[v] for v in values)
        sq_by_value = {}
        for t, d2 in zip(dots, sqd):
            if d2 != 2 - 2 * t:
                raise ProfileError(f"distance/inner-product mismatch: {d2} vs 2 - 2*{t}")
            sq_by_value[t] = d2
        total = sum(values, Fraction(0))
        sum_zero = total == 0
        vs = set(values)
        symmetric = len(values) % 2 == 0 and 0 not in vs and all(-v in vs for v in values)
        squared = tuple(sq_by_value[v] for v in reversed(values))
        tol = 0.0
    else:
        tol = F.tolerance
        order = sorted(range(len(dots)), key=lambda k: dots[k])
        clusters = _cluster([dots[k] for k in order], tol)
        values, mults, squared = [], [], []
        start = 0
        for cl in clusters:
            idx = order[start:start + len(cl)]
            start += len(cl)
            t = math.fsum(cl) / len(cl)
            d2 = math.fsum(sqd[k] for k in idx) / len(idx)
            if abs(d2 - (2 - 2 * t)) > 2 * tol + 1e-15:
                raise ProfileError(f"distance/inner-product mismatch: {d2!r} vs 2 - 2*{t!r}")
            values.append(t)
            mults.append(len(cl))
            squared.append(d2)
        values, mults = tuple(values), tuple(mults)
        squared = tuple(reversed(squared))
        total = math.fsum(values)
        sum_zero = abs(total) <= tol
        s = len(values)
        symmetric = (
            s % 2 == 0
            and all(abs(v) > tol for v in values)
            and all(abs(values[k] + values[s - 1 - k]) <= tol for k in range(s // 2))
        )

    for t in values:
        if t >= 1:
            raise ProfileError(f"inner product {t} >= 1 indicates coincident points")
    return InnerProductProfile(
        values=values,
        multiplicities=mults,
        s=len(values),
        sum=total,
        distances=tuple(math.sqrt(d2) for d2 in squared),
        squared_distances=squared,
        sum_zero=sum_zero,
        symmetric_pm=symmetric,
        mode=F.mode,
        tolerance=tol,
    )


def rational_sphere_point(t: Sequence) -> tuple[Fraction, ...]:
    """Inverse stereographic projection of ``t`` in Q^{n-1} onto S^{n-1}."""
    t = [Fraction(x) for x in t]
    q = sum(x * x for x in t)
    den = 1 + q
    return tuple(2 * x / den for x in t) + ((1 - q) / den,)


# -- fixtures ----------------------------------------------------------------


def _unit(n: int, k: int, sign: int = 1) -> tuple[Fraction, ...]:
    return tuple(Fraction(sign) if i == k else Fraction(0) for i in range(n))


def _simplex_points(n: int) -> list[tuple[float, ...]]:
    # Helmert basis of the hyperplane orthogonal to (1, ..., 1) in R^{n+1}.
    scale = math.sqrt((n + 1) / n)
    pts = []
    for i in range(n + 1):
        coords = []
        for k in range(1, n + 1):
            norm = math.sqrt(k * (k + 1))
            if i < k:
                h = 1 / norm
            elif i == k:
                h = -k / norm
            else:
                h = 0.0
            coords.append(h * scale)
        pts.append(tuple(coords))
    return pts


def known_configuration(name: str, n: int) -> PointConfiguration:
    """Reference configurations used as fixtures.

    ``simplex``, ``hexagon_lines`` and ``icosahedron_lines`` have irrational
    coordinates and come back in float mode with the default tolerance.
    """
    if name not in KNOWN_CONFIGURATIONS:
        raise ConfigurationError(f"unknown configuration {name!r}; choose from {', '.join(KNOWN_CONFIGURATIONS)}")
    if name == "orthonormal":
        return PointConfiguration(n, EXACT, tuple(_unit(n, k) for k in range(n)))
    if name == "cross_polytope":
        pts = [_unit(n, k, sign) for k in range(n) for sign in (1, -1)]
        return PointConfiguration(n, EXACT, tuple(pts))
    if name == "simplex":
        return PointConfiguration(n, FLOAT, tuple(_simplex_points(n)), DEFAULT_TOL)
    if name == "hexagon_lines":
        if n != 2:
            raise ConfigurationError("hexagon_lines lives in dimension 2")
        pts = [(math.cos(a), math.sin(a)) for a in (0.0, math.pi / 3, 2 * math.pi / 3)]
        return PointConfiguration(2, FLOAT, tuple(pts), DEFAULT_TOL)
    if n != 3:
        raise ConfigurationError("icosahedron_lines lives in dimension 3")
    phi = (1 + math.sqrt(5)) / 2
    r = math.sqrt(1 + phi * phi)
    raw = [(0, 1, phi), (0, -1, phi), (1, phi, 0), (-1, phi, 0), (phi, 0, 1), (phi, 0, -1)]
    pts = [tuple(c / r for c in p) for p in raw]
    return PointConfiguration(3, FLOAT, tuple(pts), DEFAULT_TOL)


# -- pointset text format ----------------------------------------------------


def _parse_scalar(token: str, mode: str, lineno: int):
    try:
        if "/" in token:
            num, den = token.split("/")
            value = Fraction(int(num), int(den))
            return value if mode == EXACT else float(value)
        if mode == EXACT:
            if any(ch in token for ch in ".eE"):
                raise PointsetParseError(lineno, f"decimal literal {token!r} not allowed in exact mode")
            return Fraction(int(token))
        return float(token)
    except ZeroDivisionError:
        raise PointsetParseError(lineno, f"zero denominator in {token!r}") from None
    except ValueError as exc:
        if isinstance(exc, PointsetParseError):
            raise
        raise PointsetParseError(lineno, f"bad number {token!r}") from None


def parse_config(text: str | bytes) -> PointConfiguration:
    """Read the line-oriented pointset format.

    ::

        # comment
        mode exact
        dim 2
        point 3/5 4/5
        point 5/13 12/13
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    mode = dim = tol = None
    raw_points: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, *args = line.split()
        if key == "mode":
            if mode is not None:
                raise PointsetParseError(lineno, "mode given twice")
            if args not in ([EXACT], [FLOAT]):
                raise PointsetParseError(lineno, "mode must be 'exact' or 'float'")
            mode = args[0]
        elif key == "dim":
            if dim is not None:
                raise PointsetParseError(lineno, "dim given twice")
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 2:
                raise PointsetParseError(lineno, "dim must be an integer >= 2")
            dim = int(args[0])
        elif key == "tol":
            if tol is not None:
                raise PointsetParseError(lineno, "tol given twice")
            try:
                (tol,) = (float(a) for a in args)
            except ValueError:
                raise PointsetParseError(lineno, "tol takes one non-negative float") from None
            if not tol >= 0:
                raise PointsetParseError(lineno, "tol must be non-negative")
            tol_line = lineno
        elif key == "point":
            if dim is None:
                raise PointsetParseError(lineno, "point before dim")
            if mode is None:
                raise PointsetParseError(lineno, "point before mode")
            if len(args) != dim:
                raise PointsetParseError(lineno, f"point has {len(args)} coordinates, expected {dim}")
            raw_points.append((lineno, args))
        else:
            raise PointsetParseError(lineno, f"unknown directive {key!r}")
    if mode is None:
        raise ConfigurationError("missing 'mode' line")
    if dim is None:
        raise ConfigurationError("missing 'dim' line")
    if tol is not None and mode == EXACT:
        raise PointsetParseError(tol_line, "tol is only valid in float mode")
    if not raw_points:
        raise ConfigurationError("pointset has no points")
    points = tuple(tuple(_parse_scalar(tok, mode, ln) for tok in args) for ln, args in raw_points)
    tolerance = 0.0 if mode == EXACT else (DEFAULT_TOL if tol is None else tol)
    return PointConfiguration(dim, mode, points, tolerance)


def _format_float(x: float) -> str:
    return format(Decimal(repr(float(x))), "f")


def write_config(F: PointConfiguration) -> str:
    lines = [f"mode {F.mode}", f"dim {F.n}"]
    if F.mode == FLOAT:
        lines.append(f"tol {F.tolerance!r}")
        fmt = _format_float
    else:
        fmt = format_fraction
    for p in F.points:
        lines.append("point " + " ".join(fmt(c) for c in p))
    return "\n".join(lines) + "\n"
