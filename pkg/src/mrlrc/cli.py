"""Command-line interface.

Exit codes:
  0  success (for ``verify``: the code is maximally recoverable)
  1  ``verify`` found an uncorrectable maximal erasure pattern
  2  invalid parameters, malformed input or length mismatch
  3  no suitable field found
  4  verification budget exceeded
  5  erasure pattern not correctable
  6  unerased symbols are inconsistent with the code
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import textio
from .constructions import construct_h2, construct_h3
from .elliptic import matching_collinear_family, triples_to_code
from .errors import (BudgetExceeded, FieldOverflow, FormatError, Inconsistent, LengthMismatch,
                     MrlrcError, NotFound, OmegaTooSmall, SweepExhausted, Uncorrectable)
from .field import field_of_order, subgroup_with_cosets
from .fieldsearch import FieldSearchResult, find_field_h2, find_field_h3
from .lrc import decode_erasures, encode, lower_bound_q
from .ntheory import prime_power
from .verify import budget_from_env, verify_mr

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INVALID, EXIT_SEARCH = 0, 1, 2, 3
EXIT_BUDGET, EXIT_UNCORRECTABLE, EXIT_INCONSISTENT = 4, 5, 6

ELLIPTIC_MIN_Q = 61
ELLIPTIC_MAX_Q = 1 << 16


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _field_from_q(q: int, min_size: int, min_cosets: int) -> FieldSearchResult:
    if prime_power(q) is None:
        raise UsageError(f"--q {q} is not a prime power")
    S = subgroup_with_cosets(field_of_order(q), min_size, min_cosets)
    return FieldSearchResult(q, S.order, min_cosets, None, "given")


def _elliptic_family(g: int, q: int | None):
    """Smallest prime power ``q >= 61`` whose family has ``g`` triples, truncated to ``g``."""
    candidates = [q] if q is not None else range(ELLIPTIC_MIN_Q, ELLIPTIC_MAX_Q)
    for cand in candidates:
        if prime_power(cand) is None:
            if q is not None:
                raise UsageError(f"--q {q} is not a prime power")
            continue
        if cand < ELLIPTIC_MIN_Q:
            raise UsageError("the elliptic construction needs q >= 61")
        fam = matching_collinear_family(field_of_order(cand))
        if fam.g >= g:
            return fam.truncate(g)
    raise SweepExhausted(f"no family with {g} triples found")


def cmd_construct(args) -> int:
    n, r, a, h = args.n, args.r, args.a, args.h
    if r < 1 or n < 1 or n % r:
        raise UsageError("r must divide n")
    g = n // r
    if args.elliptic:
        if (h, r, a) != (3, 3, 1):
            raise UsageError("--elliptic needs h=3, r=3, a=1")
        if args.char2:
            raise UsageError("--elliptic and --char2 are mutually exclusive")
        if g < 2:
            raise UsageError("--elliptic needs at least two groups")
        code = triples_to_code(_elliptic_family(g, args.q))
    elif h == 2:
        if n - g * a - 2 <= 0 or a >= r or a < 0:
            raise UsageError(f"invalid parameters: n - g*a - 2 = {n - g * a - 2}, a={a}, r={r}")
        if args.q is not None:
            found = _field_from_q(args.q, r, g)
        else:
            found = find_field_h2(n, r, args.char2)
        code = construct_h2(n, r, a, found)
    elif h == 3:
        if n - g * a - 3 <= 0 or a >= r or a < 0:
            raise UsageError(f"invalid parameters: n - g*a - 3 = {n - g * a - 3}, a={a}, r={r}")
        if args.q is not None:
            if args.q < 2 * r + 3:
                raise UsageError(f"--q must be at least 2r+3 = {2 * r + 3}")
            found = _field_from_q(args.q, r + 2, g)
        else:
            found = find_field_h3(n, r, char2=args.char2)
        code = construct_h3(n, r, a, found)
    else:
        raise UsageError("only h=2 and h=3 are supported")
    textio.write_code(code, args.out)
    print(f"q={code.field.order}")
    for line in textio.field_header_lines(code.field):
        print(line)
    try:
        print(lower_bound_q(n, r, a, h).line())
    except MrlrcError as exc:
        print(f"bound n/a ({exc})")
    return EXIT_OK


def cmd_verify(args) -> int:
    code = textio.read_code(args.path)
    budget = args.budget if args.budget is not None else budget_from_env()
    try:
        res = verify_mr(code, budget=budget, threads=args.threads, method=args.method)
    except BudgetExceeded as exc:
        print(f"budget-exceeded patterns={exc.patterns} checks={exc.checks} budget={exc.budget}")
        return EXIT_BUDGET
    print(f"patterns={res.patterns} checks={res.checks} method={res.method}")
    if res.ok:
        print("ok")
    else:
        print(f"counterexample {res.counterexample}")
    print(f"time={res.seconds:.3f}s")
    return EXIT_OK if res.ok else EXIT_COUNTEREXAMPLE


def _read_text(path) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, newline="") as fh:
        return fh.read()


def _emit(text: str, out) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _parse_indices(text: str | None) -> list:
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"bad index list {text!r}") from exc


def cmd_encode(args) -> int:
    code = textio.read_code(args.path)
    msg = textio.parse_symbols(code.field, _read_text(args.data))
    if any(v is None for v in msg):
        raise UsageError("messages cannot contain erasures")
    _emit(textio.symbols_text(code.field, encode(code, msg)), args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    code = textio.read_code(args.path)
    word = textio.parse_symbols(code.field, _read_text(args.data))
    n = code.params.n
    if len(word) != n:
        raise LengthMismatch(f"word has {len(word)} symbols, expected {n}")
    erased = set(_parse_indices(args.erased))
    if any(not 0 <= i < n for i in erased):
        raise UsageError("erased index out of range")
    erased |= {i for i, v in enumerate(word) if v is None}
    filled = decode_erasures(code, [0 if v is None else v for v in word], sorted(erased))
    _emit(textio.symbols_text(code.field, filled), args.out)
    return EXIT_OK


def cmd_bound(args) -> int:
    print(lower_bound_q(args.n, args.r, args.a, args.h).line())
    return EXIT_OK


def cmd_search_field(args) -> int:
    if args.r < 1 or args.n % args.r:
        raise UsageError("r must divide n")
    if args.h == 3:
        found = find_field_h3(args.n, args.r, char2=args.char2)
    else:
        found = find_field_h2(args.n, args.r, args.char2)
    print(found.line())
    return EXIT_OK


def cmd_triples(args) -> int:
    if args.q < ELLIPTIC_MIN_Q or prime_power(args.q) is None:
        raise UsageError("--q must be a prime power of at least 61")
    fam = matching_collinear_family(field_of_order(args.q))
    _emit(textio.family_text(fam), args.out)
    if args.out not in (None, "-"):
        print(f"triples={fam.g} points={3 * fam.g}")
    return EXIT_OK


def cmd_bench(args) -> int:
    """Time construction plus verification on a few fixed parameter points."""
    points = [(2, 48, 24, 3), (2, 48, 16, 3), (3, 16, 8, 2), (3, 16, 4, 1)]
    for h, n, r, a in points:
        t0 = time.perf_counter()
        code = (construct_h2(n, r, a, find_field_h2(n, r)) if h == 2
                else construct_h3(n, r, a, find_field_h3(n, r)))
        t1 = time.perf_counter()
        res = verify_mr(code, threads=args.threads, cache={})
        print(f"h={h} n={n} r={r} a={a} q={code.field.order} patterns={res.patterns} "
              f"checks={res.checks} ok={res.ok} construct={t1 - t0:.3f}s verify={res.seconds:.3f}s")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrlrc",
        description="Maximally recoverable local reconstruction codes.",
        epilog=__doc__.split("\n", 2)[2],
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and write it as a .lrc file",
                       description="Prints q=<q>, the field header and the field-size lower bound.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--h", type=int, required=True, choices=(2, 3))
    p.add_argument("--char2", action="store_true", help="use a field of characteristic two")
    p.add_argument("--elliptic", action="store_true",
                   help="h=3, r=3, a=1 code from matching collinear triples")
    p.add_argument("--q", type=int, help="field order (base field order for h=3)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check maximal recoverability of a .lrc file",
                       description="Prints 'patterns=.. checks=.. method=..', then 'ok' or "
                                   "'counterexample i,j,..', then 'time=..s'.")
    p.add_argument("path")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--budget", type=int, help="maximum rank checks (default $MRLRC_BUDGET or 1e8)")
    p.add_argument("--method", choices=("reduced", "direct"), default="reduced")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode", help="encode k symbols into a codeword")
    p.add_argument("path")
    p.add_argument("--data", required=True, help="file with whitespace-separated symbols, '-' for stdin")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="fill erased positions of a word",
                       description="Erased positions are those given by --erased and those holding '?'.")
    p.add_argument("path")
    p.add_argument("--data", required=True)
    p.add_argument("--erased", help="comma-separated 0-based indices, e.g. 0,5,7")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bound", help="field-size lower bound",
                       description="Prints 'exact q>=<v>' or 'exponent q>=Omega(n^<e>)'.")
    for name in ("n", "r", "a", "h"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("search-field", help="find a field with a suitable subgroup",
                       description="Prints 'q=<q> subgroup=<d> cosets=<c>' plus ' A=<A> B=<B>' "
                                   "when the field comes from an explicit factorization.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--h", type=int, choices=(2, 3), default=2)
    p.add_argument("--char2", action="store_true")
    p.set_defaults(func=cmd_search_field)

    p = sub.add_parser("triples", help="write a matching collinear triple family",
                       description="Prints 'triples=<g> points=<3g>' when writing to a file.")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("bench", help="time construction and verification")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, LengthMismatch) as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID
    except (SweepExhausted, NotFound, FieldOverflow, OmegaTooSmall) as exc:
        _err(f"search failed: {exc}")
        return EXIT_SEARCH
    except Uncorrectable as exc:
        _err(f"uncorrectable: {exc}")
        return EXIT_UNCORRECTABLE
    except Inconsistent as exc:
        _err(f"inconsistent: {exc}")
        return EXIT_INCONSISTENT
    except (MrlrcError, ValueError, OSError) as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
