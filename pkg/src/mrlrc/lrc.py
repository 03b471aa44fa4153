"""Local reconstruction codes in block parity-check form.

A code of length ``n`` is split into ``g = n / r`` groups of ``r`` consecutive
coordinates.  Group ``i`` carries an ``a x r`` local block ``A_i`` and an
``h x r`` heavy block ``B_i``; the parity-check matrix is

    [ A_1   0  ...   0  ]
    [  0   A_2 ...   0  ]
    [  .    .   .    .  ]
    [  0    0  ...  A_g ]
    [ B_1  B_2 ...  B_g ]
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, comb

from .errors import (Inconsistent, LengthMismatch, LocalNotMDS, NoSolution, OutOfScope,
                     PreconditionViolated, RankDeficient, ShapeMismatch, TooManyErasures,
                     Uncorrectable)
from .field import Field
from .matrix import Matrix, det, null_space, rank, rref, vec_mat


@dataclass(frozen=True)
class LrcParams:
    n: int
    r: int
    a: int
    h: int
    field: Field

    def __post_init__(self):
        n, r, a, h = self.n, self.r, self.a, self.h
        if min(n, r) < 1 or a < 0 or h < 0:
            raise PreconditionViolated("n, r must be positive and a, h non-negative")
        if n % r:
            raise PreconditionViolated(f"r={r} does not divide n={n}")
        if a >= r:
            raise PreconditionViolated(f"need a < r, got a={a}, r={r}")
        if n - self.g * a - h <= 0:
            raise PreconditionViolated(f"no data symbols left: n - g*a - h = {n - self.g * a - h}")

    @property
    def g(self) -> int:
        return self.n // self.r

    @property
    def k(self) -> int:
        return self.n - self.g * self.a - self.h

    @property
    def redundancy(self) -> int:
        return self.g * self.a + self.h

    def group_of(self, index: int) -> int:
        return index // self.r

    def group_positions(self, i: int) -> range:
        return range(i * self.r, (i + 1) * self.r)


@dataclass(frozen=True)
class ErasurePattern:
    """Sorted distinct erased coordinates."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(x >= y for x, y in zip(idx, idx[1:])) or (idx and idx[0] < 0):
            raise ValueError("pattern indices must be strictly increasing and non-negative")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, indices):
        return cls(tuple(sorted(set(int(i) for i in indices))))

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def group_counts(self, r: int, g: int) -> tuple:
        counts = [0] * g
        for i in self.indices:
            counts[i // r] += 1
        return tuple(counts)

    def __str__(self):
        return ",".join(map(str, self.indices))


@dataclass(frozen=True, eq=False)
class LrcCode:
    params: LrcParams
    A_blocks: tuple
    B_blocks: tuple
    H: Matrix = dc_field(repr=False)

    @property
    def field(self) -> Field:
        return self.params.field

    @cached_property
    def generator(self) -> Matrix:
        return generator_matrix(self)

    def group_columns(self, i: int) -> range:
        return self.params.group_positions(i)


def build_parity_check(params: LrcParams, A_blocks, B_blocks) -> Matrix:
    n, r, a, h, g = params.n, params.r, params.a, params.h, params.g
    rows = []
    for i, A in enumerate(A_blocks):
        for row in A.rows:
            rows.append([0] * (i * r) + row + [0] * (n - (i + 1) * r))
    for k in range(h):
        rows.append([v for B in B_blocks for v in B.rows[k]])
    return Matrix(params.field, rows, n)


def local_mds_violation(A: Matrix):
    """First column set whose ``a x a`` minor vanishes, or ``None``."""
    a = A.nrows
    if a == 0:
        return None
    for cols in combinations(range(A.ncols), a):
        if det(A.select_columns(cols)) == 0:
            return cols
    return None


def assemble(params: LrcParams, A_blocks, B_blocks, check_mds: bool = True) -> LrcCode:
    """Lay the blocks out as a parity-check matrix; checks shapes and local MDS."""
    A_blocks, B_blocks = tuple(A_blocks), tuple(B_blocks)
    g = params.g
    if len(A_blocks) != g or len(B_blocks) != g:
        raise ShapeMismatch(f"expected {g} blocks of each kind")
    F = params.field
    for A, B in zip(A_blocks, B_blocks):
        if A.field != F or B.field != F:
            raise ShapeMismatch("block field differs from the code field")
        if A.shape != (params.a, params.r) or B.shape != (params.h, params.r):
            raise ShapeMismatch(f"blocks must be {params.a}x{params.r} and {params.h}x{params.r}")
    if check_mds:
        seen = {}
        for i, A in enumerate(A_blocks):
            key = tuple(map(tuple, A.rows))
            if key not in seen:
                seen[key] = local_mds_violation(A)
            if seen[key] is not None:
                raise LocalNotMDS(i, seen[key])
    return LrcCode(params, A_blocks, B_blocks, build_parity_check(params, A_blocks, B_blocks))


def split_parity_check(params: LrcParams, H: Matrix):
    """Recover the blocks from a parity-check matrix, checking the zero layout."""
    n, r, a, h, g = params.n, params.r, params.a, params.h, params.g
    if H.shape != (g * a + h, n):
        raise ShapeMismatch(f"parity-check matrix must be {g * a + h}x{n}")
    A_blocks, B_blocks = [], []
    for i in range(g):
        rows = H.rows[i * a:(i + 1) * a]
        for row in rows:
            if any(v for j, v in enumerate(row) if not i * r <= j < (i + 1) * r):
                raise ShapeMismatch(f"local row of group {i} has entries outside its group")
        A_blocks.append(Matrix(H.field, [row[i * r:(i + 1) * r] for row in rows], r))
        B_blocks.append(Matrix(H.field, [row[i * r:(i + 1) * r] for row in H.rows[g * a:]], r))
    return A_blocks, B_blocks


# ---------------------------------------------------------------------------
# erasure patterns


def count_vectors(params: LrcParams):
    """Per-group erasure counts of maximal patterns, in ascending lexicographic order."""
    g, a, h, r = params.g, params.a, params.h, params.r
    cap = min(r, a + h)

    def rec(i, remaining):
        if i == g:
            if remaining == 0:
                yield ()
            return
        left = g - i - 1
        for c in range(a, cap + 1):
            rest = remaining - c
            if a * left <= rest <= cap * left:
                for tail in rec(i + 1, rest):
                    yield (c,) + tail

    yield from rec(0, g * a + h)


def count_mr_patterns(params: LrcParams) -> int:
    total = 0
    for cv in count_vectors(params):
        p = 1
        for c in cv:
            p *= comb(params.r, c)
        total += p
    return total


def enumerate_mr_patterns(params: LrcParams):
    """Every maximal erasure pattern exactly once, in canonical order."""
    r = params.r
    for cv in count_vectors(params):
        choices = [combinations(range(i * r, (i + 1) * r), c) for i, c in enumerate(cv)]
        for parts in product(*choices):
            yield ErasurePattern(tuple(x for part in parts for x in part))


def is_correctable(code: LrcCode, pattern) -> bool:
    idx = list(pattern)
    if not idx:
        return True
    return rank(code.H.select_columns(idx)) == len(idx)


def verify_mr(code: LrcCode, **kwargs):
    from .verify import verify_mr as _verify
    return _verify(code, **kwargs)


# ---------------------------------------------------------------------------
# encoding and decoding


def generator_matrix(code: LrcCode) -> Matrix:
    """Systematic ``k x n`` generator with ``H G^T = 0``."""
    p = code.params
    if rank(code.H) != p.redundancy:
        raise RankDeficient(f"parity-check matrix has rank below {p.redundancy}")
    N = null_space(code.H)
    G, _ = rref(N.transpose())
    return G


def information_set(code: LrcCode) -> list:
    _, pivots = rref(code.generator)
    return pivots


def encode(code: LrcCode, message) -> list:
    message = [code.field.element(m) for m in message]
    G = code.generator
    if len(message) != G.nrows:
        raise LengthMismatch(f"message has {len(message)} symbols, expected {G.nrows}")
    return vec_mat(code.field, message, G)


def syndrome(code: LrcCode, word) -> list:
    return code.H @ word


def decode_erasures(code: LrcCode, word, erased) -> list:
    """Fill the erased coordinates of ``word``; values there are ignored."""
    F = code.field
    n = code.params.n
    if len(word) != n:
        raise LengthMismatch(f"word has {len(word)} symbols, expected {n}")
    E = sorted(set(int(i) for i in erased))
    if any(not 0 <= i < n for i in E):
        raise LengthMismatch("erased index out of range")
    Eset = set(E)
    known = [0 if i in Eset else F.element(word[i]) for i in range(n)]
    rhs = [F.neg(v) for v in code.H @ known]
    if not E:
        if any(rhs):
            raise Inconsistent("word does not satisfy the parity checks")
        return known
    HE = code.H.select_columns(E)
    aug = Matrix(F, [row + [v] for row, v in zip(HE.rows, rhs)], len(E) + 1)
    R, pivots = rref(aug)
    if len([c for c in pivots if c < len(E)]) < len(E):
        raise Uncorrectable(f"erasure pattern {E} is not correctable")
    if pivots[-1] == len(E):
        raise Inconsistent("unerased symbols violate the parity checks")
    out = known[:]
    for row, c in enumerate(pivots):
        out[E[c]] = R.rows[row][len(E)]
    return out


def local_repair(code: LrcCode, group_index: int, word, erased=None) -> list:
    """Recover group ``group_index`` from its own symbols and its local block.

    Only the group's positions of ``word`` are read.  When ``erased`` is None
    the erased positions are those holding ``None``; otherwise ``erased``
    lists global indices and those positions are not read at all.
    """
    p = code.params
    F = code.field
    if not 0 <= group_index < p.g:
        raise IndexError(f"group {group_index} out of range")
    positions = p.group_positions(group_index)
    if erased is None:
        values = [word[j] for j in positions]
        local_erased = [k for k, v in enumerate(values) if v is None]
    else:
        local_erased = sorted({int(e) - positions.start for e in erased if int(e) in positions})
        skip = set(local_erased)
        values = [None if k in skip else word[j] for k, j in enumerate(positions)]
    if len(local_erased) > p.a:
        raise TooManyErasures(f"{len(local_erased)} erasures in group {group_index}, local limit {p.a}")
    A = code.A_blocks[group_index]
    if not local_erased:
        return [F.element(v) for v in values]
    kept = [k for k in range(p.r) if k not in set(local_erased)]
    known = [F.element(values[k]) for k in kept]
    rhs = [F.neg(v) for v in A.select_columns(kept) @ known]
    try:
        from .matrix import solve
        x = solve(A.select_columns(local_erased), rhs)
    except NoSolution as exc:
        raise Inconsistent("local symbols violate the local parity") from exc
    out = [None] * p.r
    for k, v in zip(kept, known):
        out[k] = v
    for k, v in zip(local_erased, x):
        out[k] = v
    return out


# ---------------------------------------------------------------------------
# field-size lower bound


@dataclass(frozen=True)
class BoundReport:
    """``exact`` holds a numeric lower bound on q, or None when only the growth exponent is known."""

    exact: int | None
    exponent: Fraction | None
    formula: str

    def line(self) -> str:
        if self.exact is not None:
            return f"exact q>={self.exact}"
        return f"exponent q>=Omega(n^{self.exponent})"


def lower_bound_q(n: int, r: int, a: int, h: int) -> BoundReport:
    """Lower bound on the field size of any maximally recoverable code with these parameters."""
    if h < 2:
        raise OutOfScope("the bound needs h >= 2")
    if r < 1 or n % r:
        raise OutOfScope("r must divide n")
    g = n // r
    if g < 2:
        raise OutOfScope("the bound needs at least two groups")
    if g >= h:
        if a + 2 <= h:
            value = (Fraction(g, h - 1) - 1) * comb(r, a + 1) - 4
            return BoundReport(ceil(value), None, "local-dimension bound, a+2 <= h")
        value = (Fraction(g, h - 1) - 1) * comb(r - a + h - 2, h - 1) - 4
        return BoundReport(ceil(value), None, "local-dimension bound, h < a+2")
    s = -(-h // g)
    alpha = Fraction(min(a, h - 2 * s), s)
    return BoundReport(None, 1 + alpha, "growth exponent, g < h")
