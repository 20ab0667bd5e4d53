"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage or expression
parse error, 3 bad input data (unreadable or invalid pointset file).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from fractions import Fraction

from . import __doc__ as package_doc
from .bounds import compute_bounds, format_fraction
from .certificate import CertificateError, build_certificate, verify_certificate
from .configurations import EXACT, ConfigurationError, ProfileError, parse_config, profile, write_config
from .extremal_search import search
from .sphere_poly import UP_TO, PolynomialSyntaxError, canonical_reduce, enumerate_basis, format_monomial, parse_polynomial

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3

BOUND_COLUMNS = ("n", "s", "gerzon", "dgs", "hegedus", "barg_musin", "dm")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_range(text: str) -> range:
    """``A..B`` (inclusive) or a single integer ``A``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected A..B") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _read_pointset(path: str, stdin):
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_config(text)
    except ConfigurationError as exc:
        raise DataError(f"{path}: {exc}") from None


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_fraction(x)
    return repr(x) if isinstance(x, float) else str(x)


# -- subcommands ---------------------------------------------------------------


def cmd_bounds(args, out, err, stdin) -> int:
    if args.n.start < 2 or args.s.start < 1:
        raise UsageError("bounds: need n >= 2 and s >= 1")
    rows = [compute_bounds(n, s).as_row() for n in args.n for s in args.s]
    if args.format == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        out.write("\t".join(BOUND_COLUMNS) + "\n")
        for row in rows:
            out.write("\t".join(str(row[c]) for c in BOUND_COLUMNS) + "\n")
    return EXIT_OK


def cmd_verify(args, out, err, stdin) -> int:
    F = _read_pointset(args.file, stdin)
    if args.tol is not None:
        if F.mode == EXACT:
            err.write("note: --tol ignored for an exact-mode pointset\n")
        else:
            try:
                F = type(F)(F.n, F.mode, F.points, args.tol)
            except ConfigurationError as exc:
                raise DataError(f"{args.file}: {exc}") from None
    try:
        prof = profile(F)
    except ProfileError as exc:
        raise DataError(f"{args.file}: {exc}") from None
    out.write(f"points: {F.m}  dim: {F.n}  mode: {F.mode}  tolerance: {F.tolerance!r}\n")
    out.write(f"s: {prof.s}\n")
    for t, d, k in zip(prof.values, reversed(prof.distances), prof.multiplicities):
        out.write(f"  t = {_fmt(t)}  distance = {d!r}  pairs = {k}\n")
    out.write(f"sum: {_fmt(prof.sum)}  sum_zero: {str(prof.sum_zero).lower()}\n")
    out.write(f"symmetric_pm: {str(prof.symmetric_pm).lower()}\n")
    bounds = compute_bounds(F.n, prof.s)
    values = {
        "dgs": bounds.dgs,
        "gerzon": bounds.gerzon,
        "musin": bounds.gerzon,
        "hegedus": bounds.hegedus,
        "barg_musin": bounds.barg_musin,
        "dm": bounds.dm,
    }
    out.write("hypotheses:\n")
    for name, holds in prof.hypotheses().items():
        mark = "holds" if holds else "fails"
        out.write(f"  {name}: {mark} (bound {_fmt(values[name])}: {bounds.applicability_notes[name]})\n")
    return EXIT_OK


def cmd_certify(args, out, err, stdin) -> int:
    F = _read_pointset(args.file, stdin)
    try:
        report = verify_certificate(build_certificate(F))
    except (ProfileError, CertificateError) as exc:
        raise DataError(f"{args.file}: {exc}") from None
    out.write(report.to_json() + "\n" if args.format == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_reduce(args, out, err, stdin) -> int:
    if args.n < 2:
        raise UsageError("reduce: need --n >= 2")
    try:
        f = parse_polynomial(args.expr, args.n)
    except PolynomialSyntaxError as exc:
        raise UsageError(f"reduce: {exc}") from None
    out.write(str(canonical_reduce(f)) + "\n")
    return EXIT_OK


def cmd_basis(args, out, err, stdin) -> int:
    if args.n < 2 or args.d < 0:
        raise UsageError("basis: need --n >= 2 and --d >= 0")
    basis = enumerate_basis(args.n, args.d, "exact-degree" if args.exact_degree else UP_TO)
    for mono in basis.monomials:
        out.write(format_monomial(mono) + "\n")
    out.write(f"count: {len(basis)}\n")
    return EXIT_OK


def cmd_search(args, out, err, stdin) -> int:
    targets = None
    if args.targets:
        try:
            targets = [float(Fraction(t)) for t in args.targets.split(",")]
        except ValueError:
            raise UsageError(f"search: bad --targets {args.targets!r}") from None
    try:
        result = search(
            args.n,
            args.s,
            args.m,
            restarts=args.restarts,
            seed=args.seed,
            max_iterations=args.max_iterations,
            targets=targets,
        )
    except ValueError as exc:
        raise UsageError(f"search: {exc}") from None
    err.write(result.report())
    if result.best is not None:
        out.write(write_config(result.best))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sdsets", description=package_doc.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="tabulate cardinality bounds")
    p.add_argument("--n", type=parse_range, required=True, help="dimension range A..B")
    p.add_argument("--s", type=parse_range, required=True, help="distance-count range C..D")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="inner-product profile of a pointset file")
    p.add_argument("file", help="pointset file, or - for stdin")
    p.add_argument("--tol", type=float, help="override the float-mode tolerance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="build and check the linear-independence certificate")
    p.add_argument("file", help="pointset file, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("reduce", help="canonical reduction modulo the sphere relation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("expr")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("basis", help="list reduced basis monomials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--exact-degree", action="store_true")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("search", help="heuristic search for sum-zero configurations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iterations", type=int, default=2000)
    p.add_argument("--targets", help="comma-separated sum-zero targets, e.g. -1/2,1/2")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
        return args.func(args, out, err, stdin)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except DataError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def dispatch(argv: list[str], stdin: bytes | str = b"") -> tuple[int, bytes, bytes]:
    """Run the CLI in-process, returning ``(exit_code, stdout, stderr)``."""
    if isinstance(stdin, bytes):
        stdin = stdin.decode("utf-8")
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), io.StringIO(stdin), out, err)
    return code, out.getvalue().encode(), err.getvalue().encode()


if __name__ == "__main__":
    sys.exit(main())
