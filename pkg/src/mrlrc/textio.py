"""Canonical text forms for elements, fields, matrices, codes and triple families.

All writers emit LF line endings and a trailing newline; reading a file and
writing it back reproduces it byte for byte.
"""

from __future__ import annotations

import re

from .errors import FormatError, MrlrcError
from .field import ExtensionField, Field, is_irreducible, make_field, prime_field
from .lrc import LrcCode, LrcParams, assemble, split_parity_check
from .matrix import Matrix

_HEADER = re.compile(r"^field p=(\d+) m=(\d+)(?: poly=([\d,]+))?$")
_PARAMS = re.compile(r"^params n=(\d+) r=(\d+) a=(\d+) h=(\d+)$")


# -- elements ------------------------------------------------------------------

def render_element(F: Field, x: int) -> str:
    if F.is_prime_field:
        return str(x)
    return ",".join(map(str, F.digits(x)))


def parse_element(F: Field, token: str) -> int:
    try:
        if F.is_prime_field:
            if "," in token:
                raise ValueError
            return F.element(int(token))
        parts = [int(t) for t in token.split(",")]
        return F.from_digits(parts)
    except ValueError as exc:
        raise FormatError(f"bad field element {token!r}") from exc


# -- fields ----------------------------------------------------------------------

def _header_line(F: Field) -> str:
    if F.is_prime_field:
        return f"field p={F.characteristic} m=1"
    if F.tower_base is not None:
        return f"field p={F.characteristic} m={F.degree} poly={','.join(map(str, F.modulus))}"
    return f"field p={F.characteristic} m={F.prime_degree} poly={','.join(map(str, F.modulus))}"


def field_header_lines(F: Field) -> list:
    """One header line, plus a ``tower`` line describing the base of a tower field."""
    lines = [_header_line(F)]
    if F.tower_base is not None:
        lines.extend("tower " + ln for ln in field_header_lines(F.tower_base))
    return lines


def _parse_header(line: str):
    m = _HEADER.match(line)
    if not m:
        raise FormatError(f"bad field header {line!r}")
    p, deg = int(m.group(1)), int(m.group(2))
    poly = tuple(int(c) for c in m.group(3).split(",")) if m.group(3) else None
    if (deg == 1) != (poly is None):
        raise FormatError("poly must be given exactly when m > 1")
    return p, deg, poly


def _extension(base: Field, poly) -> Field:
    if len(poly) < 2 or poly[-1] != 1 or any(not 0 <= c < base.order for c in poly):
        raise FormatError(f"modulus {poly} is not a monic polynomial over the base")
    if not is_irreducible(base, list(poly)):
        raise FormatError(f"modulus {poly} is reducible")
    if base.is_prime_field:
        standard = make_field(base.characteristic, len(poly) - 1)
        if standard.modulus == poly:
            return standard
    return ExtensionField(base, poly)


def parse_field_header(lines: list, pos: int = 0):
    """Parse a field header starting at ``lines[pos]``; returns ``(field, next_pos)``."""
    if pos >= len(lines):
        raise FormatError("missing field header")
    p, deg, poly = _parse_header(lines[pos])
    pos += 1
    try:
        if pos < len(lines) and lines[pos].startswith("tower "):
            sub = [ln[len("tower "):] for ln in lines[pos:] if ln.startswith("tower ")]
            base, used = parse_field_header(sub, 0)
            pos += used
            if base.characteristic != p or poly is None:
                raise FormatError("tower base does not match the outer header")
            return _extension(base, poly), pos
        if poly is None:
            return prime_field(p), pos
        return _extension(prime_field(p), poly), pos
    except FormatError:
        raise
    except MrlrcError as exc:
        raise FormatError(str(exc)) from exc


def parse_field_text(text: str) -> Field:
    return parse_field_header(_lines(text))[0]


# -- matrices --------------------------------------------------------------------

def matrix_lines(M: Matrix) -> list:
    F = M.field
    return [f"matrix {M.nrows} {M.ncols}"] + [" ".join(render_element(F, v) for v in row)
                                             for row in M.rows]


def parse_matrix(F: Field, lines: list, pos: int = 0):
    if pos >= len(lines):
        raise FormatError("missing matrix header")
    parts = lines[pos].split()
    if len(parts) != 3 or parts[0] != "matrix" or not parts[1].isdigit() or not parts[2].isdigit():
        raise FormatError(f"bad matrix header {lines[pos]!r}")
    nr, nc = int(parts[1]), int(parts[2])
    rows = []
    for k in range(nr):
        if pos + 1 + k >= len(lines):
            raise FormatError("matrix is truncated")
        toks = lines[pos + 1 + k].split(" ")
        if len(toks) != nc:
            raise FormatError(f"matrix row {k} has {len(toks)} entries, expected {nc}")
        rows.append([parse_element(F, t) for t in toks])
    return Matrix(F, rows, nc), pos + 1 + nr


# -- codes -------------------------------------------------------------------------

def code_text(code: LrcCode) -> str:
    p = code.params
    lines = ["lrc v1", *field_header_lines(code.field),
             f"params n={p.n} r={p.r} a={p.a} h={p.h}", *matrix_lines(code.H)]
    return "\n".join(lines) + "\n"


def _lines(text: str) -> list:
    if "\r" in text:
        raise FormatError("only LF line endings are accepted")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def parse_code(text: str) -> LrcCode:
    """Read a code file.  Local blocks are not required to be MDS here."""
    lines = _lines(text)
    if not lines or lines[0] != "lrc v1":
        raise FormatError("missing 'lrc v1' magic line")
    F, pos = parse_field_header(lines, 1)
    if pos >= len(lines):
        raise FormatError("missing params line")
    m = _PARAMS.match(lines[pos])
    if not m:
        raise FormatError(f"bad params line {lines[pos]!r}")
    n, r, a, h = map(int, m.groups())
    try:
        params = LrcParams(n, r, a, h, F)
    except MrlrcError as exc:
        raise FormatError(str(exc)) from exc
    H, pos = parse_matrix(F, lines, pos + 1)
    if pos != len(lines):
        raise FormatError("trailing content after the matrix")
    try:
        A_blocks, B_blocks = split_parity_check(params, H)
    except MrlrcError as exc:
        raise FormatError(str(exc)) from exc
    return assemble(params, A_blocks, B_blocks, check_mds=False)


def write_code(code: LrcCode, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(code_text(code))


def read_code(path) -> LrcCode:
    with open(path, newline="") as fh:
        return parse_code(fh.read())


# -- triple families ------------------------------------------------------------

def family_text(fam) -> str:
    F = fam.field
    lines = ["triples v1", *field_header_lines(F)]
    for i in range(fam.g):
        lines.append(" ".join(render_element(F, c) for P in fam.triple_points(i) for c in P.coords))
    return "\n".join(lines) + "\n"


def parse_family(text: str):
    from .elliptic import ProjectivePoint, TripleFamily
    lines = _lines(text)
    if not lines or lines[0] != "triples v1":
        raise FormatError("missing 'triples v1' magic line")
    F, pos = parse_field_header(lines, 1)
    pts, triples = [], []
    for ln in lines[pos:]:
        toks = ln.split(" ")
        if len(toks) != 9:
            raise FormatError("each triple line needs nine coordinates")
        vals = [parse_element(F, t) for t in toks]
        triples.append(tuple(range(len(pts), len(pts) + 3)))
        for k in range(3):
            P = ProjectivePoint(*vals[3 * k:3 * k + 3])
            try:
                if ProjectivePoint.normalized(F, *P.coords) != P:
                    raise FormatError(f"point {P.coords} is not normalized")
            except ValueError as exc:
                raise FormatError(str(exc)) from exc
            pts.append(P)
    return TripleFamily(F, tuple(pts), tuple(triples))


# -- symbol vectors -------------------------------------------------------------

def symbols_text(F: Field, values) -> str:
    return " ".join("?" if v is None else render_element(F, v) for v in values) + "\n"


def parse_symbols(F: Field, text: str) -> list:
    """Whitespace-separated symbols; ``?`` marks an erased position (returned as None)."""
    return [None if t == "?" else parse_element(F, t) for t in text.split()]
