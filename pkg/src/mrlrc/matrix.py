"""Dense matrices over a finite field and the structured matrices built from them.

Entries are canonical ints of the owning field.  All routines are exact and
use Gaussian elimination with first-nonzero pivoting, so outputs are
deterministic.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import Collision, DuplicateElements, NoSolution, NotSquare, ShapeMismatch
from .field import Field


class Matrix:
    """A ``nrows x ncols`` matrix stored as a list of rows of ints."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        rows = [list(map(int, r)) for r in rows]
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        self.ncols = ncols
        for r in rows:
            if len(r) != ncols:
                raise ShapeMismatch("ragged matrix rows")

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, columns, nrows: int):
        return cls(field, [[c[i] for c in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.shape == other.shape and self.rows == other.rows)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows!r})"

    def copy(self):
        return Matrix(self.field, self.rows, self.ncols)

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return Matrix(self.field, [self.column(j) for j in range(self.ncols)], self.nrows)

    T = property(transpose)

    def select_columns(self, cols):
        cols = list(cols)
        return Matrix(self.field, [[r[j] for j in cols] for r in self.rows], len(cols))

    def select_rows(self, rows):
        return Matrix(self.field, [self.rows[i] for i in rows], self.ncols)

    def __matmul__(self, other):
        F = self.field
        if isinstance(other, Matrix):
            if other.field != F or self.ncols != other.nrows:
                raise ShapeMismatch("incompatible product")
            cols = other.columns()
            return Matrix(F, [[_dot(F, r, c) for c in cols] for r in self.rows], other.ncols)
        vec = list(other)
        if len(vec) != self.ncols:
            raise ShapeMismatch("vector length does not match column count")
        return [_dot(F, r, vec) for r in self.rows]

    def to_numpy(self):
        return np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)

    def is_zero(self):
        return all(v == 0 for r in self.rows for v in r)


def _dot(F, u, v):
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def vec_mat(F, v, M: Matrix):
    """Row vector times matrix."""
    if len(v) != M.nrows:
        raise ShapeMismatch("vector length does not match row count")
    out = [0] * M.ncols
    for x, row in zip(v, M.rows):
        if x:
            for j, m in enumerate(row):
                if m:
                    out[j] = F.add(out[j], F.mul(x, m))
    return out


def hstack(blocks):
    F = blocks[0].field
    n = blocks[0].nrows
    if any(b.nrows != n for b in blocks):
        raise ShapeMismatch("hstack needs equal row counts")
    return Matrix(F, [sum((b.rows[i] for b in blocks), []) for i in range(n)],
                  sum(b.ncols for b in blocks))


def vstack(blocks):
    F = blocks[0].field
    m = blocks[0].ncols
    if any(b.ncols != m for b in blocks):
        raise ShapeMismatch("vstack needs equal column counts")
    return Matrix(F, [r for b in blocks for r in b.rows], m)


# ---------------------------------------------------------------------------
# elimination


def rref(M: Matrix):
    """Reduced row echelon form and the list of pivot columns."""
    F = M.field
    A = [r[:] for r in M.rows]
    pivots = []
    row = 0
    for col in range(M.ncols):
        if row == len(A):
            break
        piv = next((i for i in range(row, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = F.inv(A[row][col])
        A[row] = [F.mul(inv, v) for v in A[row]]
        prow = A[row]
        for i in range(len(A)):
            if i != row and A[i][col]:
                c = A[i][col]
                A[i] = [F.sub(x, F.mul(c, y)) if y else x for x, y in zip(A[i], prow)]
        pivots.append(col)
        row += 1
    return Matrix(F, A, M.ncols), pivots


def rank(M: Matrix) -> int:
    F = M.field
    A = [r[:] for r in M.rows]
    rk = 0
    for col in range(M.ncols):
        piv = next((i for i in range(rk, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        inv = F.inv(A[rk][col])
        prow = A[rk]
        for i in range(rk + 1, len(A)):
            if A[i][col]:
                c = F.mul(A[i][col], inv)
                A[i] = [F.sub(x, F.mul(c, y)) if y else x for x, y in zip(A[i], prow)]
        rk += 1
        if rk == len(A):
            break
    return rk


def det(M: Matrix) -> int:
    if M.nrows != M.ncols:
        raise NotSquare(f"{M.nrows}x{M.ncols} matrix has no determinant")
    F = M.field
    A = [r[:] for r in M.rows]
    n = M.nrows
    result = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            result = F.neg(result)
        pv = A[col][col]
        result = F.mul(result, pv)
        inv = F.inv(pv)
        prow = A[col]
        for i in range(col + 1, n):
            if A[i][col]:
                c = F.mul(A[i][col], inv)
                A[i] = [F.sub(x, F.mul(c, y)) if y else x for x, y in zip(A[i], prow)]
    return result


def solve(M: Matrix, b) -> list:
    """Some ``x`` with ``M x = b``; free variables are set to zero."""
    b = list(b)
    if len(b) != M.nrows:
        raise ShapeMismatch("right-hand side length does not match row count")
    aug = Matrix(M.field, [r + [v] for r, v in zip(M.rows, b)], M.ncols + 1)
    R, pivots = rref(aug)
    if pivots and pivots[-1] == M.ncols:
        raise NoSolution("inconsistent linear system")
    x = [0] * M.ncols
    for i, c in enumerate(pivots):
        x[c] = R.rows[i][M.ncols]
    return x


def null_space(M: Matrix) -> Matrix:
    """Basis of ``{x : M x = 0}`` as the columns of the result.

    Each basis vector is scaled so its first nonzero entry is 1.
    """
    F = M.field
    R, pivots = rref(M)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    cols = []
    for f in free:
        v = [0] * M.ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = F.neg(R.rows[i][f])
        lead = next(x for x in v if x)
        if lead != 1:
            s = F.inv(lead)
            v = [F.mul(s, x) for x in v]
        cols.append(v)
    return Matrix.from_columns(F, cols, M.ncols)


def inverse(M: Matrix) -> Matrix:
    if M.nrows != M.ncols:
        raise NotSquare("only square matrices are invertible")
    n = M.nrows
    aug = hstack([M, Matrix.identity(M.field, n)])
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise NoSolution("singular matrix")
    return R.select_columns(range(n, 2 * n))


# ---------------------------------------------------------------------------
# structured matrices


def vandermonde(F: Field, elems, num_rows: int, start_power: int = 0) -> Matrix:
    """Entry ``(j, i)`` is ``elems[i] ** (start_power + j)``."""
    elems = [int(e) for e in elems]
    if len(set(elems)) != len(elems):
        raise DuplicateElements("Vandermonde nodes must be distinct")
    if start_power >= 1 and 0 in elems:
        raise DuplicateElements("zero node with positive start power")
    rows = [[F.pow(e, start_power + j) for e in elems] for j in range(num_rows)]
    return Matrix(F, rows, len(elems))


def cauchy(F: Field, alphas, betas) -> Matrix:
    """Entry ``(j, i)`` is ``1 / (alphas[i] - betas[j])``."""
    alphas, betas = [int(x) for x in alphas], [int(x) for x in betas]
    allv = alphas + betas
    if len(set(allv)) != len(allv):
        raise Collision("Cauchy parameters must be pairwise distinct")
    return Matrix(F, [[F.inv(F.sub(a, b)) for a in alphas] for b in betas], len(alphas))


def cauchy_det_closed_form(F: Field, alphas, betas) -> int:
    alphas, betas = [int(x) for x in alphas], [int(x) for x in betas]
    if len(alphas) != len(betas):
        raise NotSquare("closed form needs as many alphas as betas")
    allv = alphas + betas
    if len(set(allv)) != len(allv):
        raise Collision("Cauchy parameters must be pairwise distinct")
    num = 1
    for j, i in combinations(range(len(alphas)), 2):
        num = F.mul(num, F.mul(F.sub(alphas[i], alphas[j]), F.sub(betas[j], betas[i])))
    den = 1
    for a in alphas:
        for b in betas:
            den = F.mul(den, F.sub(a, b))
    return F.div(num, den)


def _block_shapes(C_list, D_list):
    if not C_list or len(C_list) != len(D_list):
        raise ShapeMismatch("need one D block per C block")
    a = C_list[0].nrows
    h = D_list[0].nrows
    ts = []
    for C, D in zip(C_list, D_list):
        if C.nrows != a or D.nrows != h or C.ncols != D.ncols:
            raise ShapeMismatch("block shapes disagree")
        t = C.ncols - a
        if t < 1:
            raise ShapeMismatch("each block needs at least a+1 columns")
        ts.append(t)
    if sum(ts) != h:
        raise ShapeMismatch("column excesses must sum to the D height")
    return a, h, ts


def block_det_lhs(C_list, D_list) -> int:
    """Determinant of C blocks on the diagonal above a strip of D blocks."""
    a, h, ts = _block_shapes(C_list, D_list)
    F = C_list[0].field
    ell = len(C_list)
    width = sum(C.ncols for C in C_list)
    rows = []
    offset = 0
    for C in C_list:
        for r in C.rows:
            rows.append([0] * offset + r + [0] * (width - offset - C.ncols))
        offset += C.ncols
    for k in range(h):
        rows.append(sum((D.rows[k] for D in D_list), []))
    assert len(rows) == a * ell + h == width
    return det(Matrix(F, rows, width))


def _ordered_partitions(items, sizes):
    if not sizes:
        yield ()
        return
    for first in combinations(items, sizes[0]):
        rest = [x for x in items if x not in first]
        for tail in _ordered_partitions(rest, sizes[1:]):
            yield (first,) + tail


def permutation_sign(seq) -> int:
    """+1 or -1 according to the parity of inversions in ``seq``."""
    inv = sum(1 for i, j in combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def block_det_rhs(C_list, D_list) -> int:
    """Expansion of :func:`block_det_lhs` as a signed sum over row partitions."""
    a, h, ts = _block_shapes(C_list, D_list)
    F = C_list[0].field
    ell = len(C_list)
    total = 0
    for parts in _ordered_partitions(list(range(h)), ts):
        term = 1 if permutation_sign([x for p in parts for x in p]) > 0 else F.neg(1)
        for C, D, S in zip(C_list, D_list, parts):
            term = F.mul(term, det(vstack([C, D.select_rows(S)])))
            if not term:
                break
        total = F.add(total, term)
    exponent = a * sum(t * (ell - 1 - i) for i, t in enumerate(ts))
    return F.neg(total) if exponent % 2 else total
