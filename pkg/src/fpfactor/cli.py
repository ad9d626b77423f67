"""Command-line interface.

Values are written exactly: ``M*b^q`` (e.g. ``7*2^-2``), a decimal or
``num/den`` literal that must be representable in the format, or ``inf``,
``-inf``, ``0``. Intervals are ``lo:hi``; a single value means a singleton.

Exit codes: 0 success, 1 empty or infeasible result, 2 usage error,
3 unmet precondition or unsupported query, 4 resource limit.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, NotRepresentableError, PreconditionError, ResourceError
from .exact import rat_mod, to_decimal_string
from .feasibility import is_feasible
from .floats import BINARY64, Float, FloatFormat, FloatInterval
from .oracle import oracle_feasible, oracle_next_feasible, oracle_prev_feasible, oracle_solve
from .propagator import solve_mul_constraint
from .rounding import Rounding, round_down, round_up
from .solver import next_feasible, prev_feasible

EXIT_OK, EXIT_EMPTY, EXIT_USAGE, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 1, 2, 3, 4

MODES = {"rd": Rounding.RD, "ru": Rounding.RU, "rne": Rounding.RNE}

_SCALED = re.compile(r"^([+-]?\d+)\*(\d+)\^([+-]?\d+)$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_RATIO = re.compile(r"^[+-]?\d+/\d+$")


class UsageError(Exception):
    pass


def parse_format(text: str) -> FloatFormat:
    fields = {}
    for part in text.split(","):
        key, sep, val = part.partition("=")
        if not sep:
            raise UsageError(f"bad format field {part!r}")
        try:
            fields[key.strip()] = int(val)
        except ValueError:
            raise UsageError(f"bad format field {part!r}") from None
    try:
        return FloatFormat(fields["b"], fields["p"], fields["emin"], fields["emax"])
    except KeyError as e:
        raise UsageError(f"format is missing {e.args[0]}") from None
    except DomainError as e:
        raise UsageError(str(e)) from None


def parse_value(fmt: FloatFormat, token: str) -> Float:
    t = token.strip().lower()
    if t in ("inf", "+inf"):
        return fmt.pos_inf
    if t == "-inf":
        return fmt.neg_inf
    m = _SCALED.match(t)
    if m:
        M, b, q = int(m.group(1)), int(m.group(2)), int(m.group(3))
        value = M * Fraction(b) ** q
    elif _DECIMAL.match(t) or _RATIO.match(t):
        value = Fraction(t)
    else:
        raise UsageError(f"cannot parse value {token!r}")
    try:
        return fmt.from_value(value)
    except NotRepresentableError:
        raise UsageError(f"{token!r} is not representable in {fmt}") from None


def parse_interval(fmt: FloatFormat, token: str) -> FloatInterval:
    lo, sep, hi = token.partition(":")
    a = parse_value(fmt, lo)
    b = parse_value(fmt, hi) if sep else a
    if b < a:
        raise UsageError(f"interval {token!r} has lo > hi")
    return FloatInterval(a, b)


def format_value(fmt: FloatFormat, x: Float) -> str:
    """Exact text that parses back to x."""
    if x.is_inf:
        return "inf" if x.M > 0 else "-inf"
    if x.is_zero:
        return "0"
    if fmt.beta == 10:
        if x.q >= 0:
            return str(x.M * 10**x.q)
        digits = str(abs(x.M)).rjust(-x.q + 1, "0")
        return ("-" if x.M < 0 else "") + digits[:x.q] + "." + digits[x.q:]
    return f"{x.M}*{fmt.beta}^{x.q}"


def format_interval(fmt: FloatFormat, I: Optional[FloatInterval]) -> str:
    if I is None:
        return "∅"
    return f"[{format_value(fmt, I.lo)}, {format_value(fmt, I.hi)}]"


def _cmd_info(args, out) -> int:
    fmt = args.format
    print(f"format\t{fmt}", file=out)
    print(f"qmin\t{fmt.qmin}\nqmax\t{fmt.qmax}", file=out)
    print(f"max\t{format_value(fmt, fmt.max_float)}", file=out)
    print(f"min_positive\t{format_value(fmt, fmt.make(1, fmt.qmin))}", file=out)
    print(f"min_normal\t{format_value(fmt, fmt.from_value(fmt.min_normal_value))}", file=out)
    print(f"count\t{fmt.count()}", file=out)
    return EXIT_OK


def _cmd_feasible(args, out) -> int:
    fmt, mode = args.format, args.mode
    x, Z = parse_value(fmt, args.x), parse_interval(fmt, args.z)
    if args.oracle:
        ok = oracle_feasible(fmt, mode, x, Z)
    else:
        ok, witness = is_feasible(fmt, mode, x, Z)
        if ok:
            print(f"witness y = {format_value(fmt, witness)}", file=sys.stderr)
    print("yes" if ok else "no", file=out)
    return EXIT_OK if ok else EXIT_EMPTY


def _cmd_next_factor(args, out) -> int:
    fmt, mode = args.format, args.mode
    x, Z = parse_value(fmt, args.start), parse_interval(fmt, args.z)
    up = args.direction == "up"
    if args.oracle:
        r = (oracle_next_feasible if up else oracle_prev_feasible)(fmt, mode, x, Z)
    else:
        r = (next_feasible if up else prev_feasible)(fmt, mode, x, Z)
    if r.is_inf and not is_feasible(fmt, mode, r, Z)[0]:
        print("none", file=out)
        return EXIT_EMPTY
    print(format_value(fmt, r), file=out)
    return EXIT_OK


def _cmd_propagate(args, out) -> int:
    fmt, mode = args.format, args.mode
    X, Y, Z = (parse_interval(fmt, t) for t in (args.x, args.y, args.z))
    r = (oracle_solve if args.oracle else solve_mul_constraint)(fmt, mode, X, Y, Z)
    for name, bounds, opt in (("x", r.x_bounds, r.x_optimal), ("y", r.y_bounds, r.y_optimal),
                              ("z", r.z_bounds, r.z_optimal)):
        print(f"{name} ∈ {format_interval(fmt, bounds)}  ({'optimal' if opt else 'relaxed'})", file=out)
    return EXIT_EMPTY if r.is_empty else EXIT_OK


def emit_error_profile(fmt: FloatFormat, z: Float, out) -> None:
    """Exact products x*RD(z/x) and x*RU(z/x) for every positive finite x."""
    if not z.is_finite or z.is_zero:
        raise DomainError("z must be finite and nonzero")
    print("x\tx*RD(z/x)\tx*RU(z/x)", file=out)
    for x in fmt.enumerate_floats():
        if not x.is_finite or x.sign <= 0:
            continue
        quotient = z.value / x.value
        if abs(quotient) > fmt.max_value:
            print(f"{to_decimal_string(x.value)}\toverflow\toverflow", file=out)
            continue
        lo = x.value * round_down(fmt, quotient).value
        hi = x.value * round_up(fmt, quotient).value
        print(f"{to_decimal_string(x.value)}\t{to_decimal_string(lo)}\t{to_decimal_string(hi)}", file=out)


def emit_mod_profile(a: int, n_max: int, out) -> None:
    """Rows n, (-a mod n), floor(-a/n) for n = 1..n_max."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    print("n\tmod\tfloor", file=out)
    for n in range(1, n_max + 1):
        print(f"{n}\t{to_decimal_string(rat_mod(-a, n))}\t{-a // n}", file=out)


def _cmd_error_profile(args, out) -> int:
    emit_error_profile(args.format, parse_value(args.format, args.z), out)
    return EXIT_OK


def _cmd_mod_profile(args, out) -> int:
    emit_mod_profile(args.a, args.n_max, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fpfactor", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, oracle=False):
        p.add_argument("--format", default=str(BINARY64), help="b=..,p=..,emin=..,emax=..")
        p.add_argument("--round", dest="round", default="rne", choices=sorted(MODES))
        if oracle:
            p.add_argument("--oracle", action="store_true", help="answer by exhaustive enumeration")

    p = sub.add_parser("info", help="describe a format")
    common(p)
    p.set_defaults(run=_cmd_info)

    p = sub.add_parser("feasible", help="is x a factor of some member of Z")
    common(p, oracle=True)
    p.add_argument("--x", required=True)
    p.add_argument("--z", required=True)
    p.set_defaults(run=_cmd_feasible)

    p = sub.add_parser("next-factor", help="nearest feasible float from a start value")
    common(p, oracle=True)
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--direction", choices=("up", "down"), default="up")
    p.set_defaults(run=_cmd_next_factor)

    p = sub.add_parser("propagate", help="bounds for x * y = z")
    common(p, oracle=True)
    for name in ("x", "y", "z"):
        p.add_argument(f"--{name}", required=True)
    p.set_defaults(run=_cmd_propagate)

    p = sub.add_parser("error-profile", help="TSV of x*RD(z/x) and x*RU(z/x)")
    common(p)
    p.add_argument("--z", required=True)
    p.set_defaults(run=_cmd_error_profile)

    p = sub.add_parser("mod-profile", help="TSV of (-a mod n) and floor(-a/n)")
    p.add_argument("--a", type=int, default=1000)
    p.add_argument("--n-max", type=int, default=100)
    p.set_defaults(run=_cmd_mod_profile)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if hasattr(args, "format"):
            args.format = parse_format(args.format)
            args.mode = MODES[args.round]
        return args.run(args, out)
    except (UsageError, DomainError) as e:
        print(f"fpfactor: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as e:
        print(f"fpfactor: unsupported: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ResourceError as e:
        print(f"fpfactor: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
