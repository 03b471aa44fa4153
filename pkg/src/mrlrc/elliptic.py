"""Point sets in the projective plane with matching collinear triples.

Pipeline: a 3-AP-free set ``B`` gives a subset of ``Z/NZ`` whose only
zero-sum triples are prescribed ones.  On the singular cubic
``(Y - aX)(Y - bX)Z = X^3`` the non-singular points form a group isomorphic
to ``F_q^*`` via ``phi``, and three points sum to the identity iff they are
collinear.  Mapping the residues through ``k -> phi^-1(g^k)`` therefore
yields points whose only collinear triples are the prescribed ones.  Such a
family is equivalent to a maximally recoverable code with ``r = 3``,
``a = 1``, ``h = 3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import isqrt

import numpy as np

from .errors import (DegenerateScaling, NotCollinear, NotOnCurve, ShapeMismatch, SingularPoint,
                     ZeroInput)
from .field import Field, primitive_element
from .lrc import LrcCode, LrcParams, assemble
from .matrix import Matrix, det, null_space

GREEDY_LIMIT = 5000


# ---------------------------------------------------------------------------
# 3-AP-free sets


def has_three_ap(values) -> bool:
    """True if some distinct ``x, y, z`` in ``values`` satisfy ``x + z = 2y``."""
    s = sorted(set(values))
    members = set(s)
    for i, x in enumerate(s):
        for z in s[i + 1:]:
            if (x + z) % 2 == 0 and (x + z) // 2 in members:
                return True
    return False


def greedy_ap_free(M: int) -> list:
    """Greedy 3-AP-free subset of ``{1..M}``: add each integer unless it completes a progression."""
    out, members = [], set()
    for x in range(1, M + 1):
        if not any(2 * z - x in members and 2 * z - x < z for z in out):
            out.append(x)
            members.add(x)
    return out


def _small_digit_numbers(d: int, D: int, k: int, limit: int):
    """Values ``<= limit`` with ``k`` base-``d`` digits in ``[0, D]``, and their digit square sums."""
    digit = np.arange(D + 1, dtype=np.int64)
    vals = np.zeros(1, dtype=np.int64)
    norms = np.zeros(1, dtype=np.int64)
    for pos in range(k - 1, -1, -1):
        vals = (vals[:, None] + digit[None, :] * d ** pos).ravel()
        norms = (norms[:, None] + digit[None, :] ** 2).ravel()
        keep = vals <= limit
        vals, norms = vals[keep], norms[keep]
    return vals, norms


def sphere_ap_free(M: int) -> list:
    """Behrend-style set in ``{1..M}``: one norm shell of small-digit numbers, best ``(d, k)``.

    Numbers whose base-``d`` digits are all below ``d/2`` add without carries,
    so ``x + z = 2y`` forces the digit vectors to satisfy the same relation;
    on a sphere that means ``x = z``.
    """
    best = []
    for d in range(3, 2 * isqrt(M) + 4):
        D = (d - 1) // 2
        k0 = 1
        while d ** k0 < 2 * M:
            k0 += 1
        for k in (k0 - 1, k0, k0 + 1):
            if k < 2 or (D + 1) ** k > 2_000_000:
                continue
            vals, norms = _small_digit_numbers(d, D, k, M - 1)
            if len(vals):
                counts = np.bincount(norms)
                shell = int(np.argmax(counts))
                if counts[shell] > len(best):
                    best = sorted(int(v) + 1 for v in vals[norms == shell])
    return best


def behrend_set(M: int) -> list:
    """3-AP-free subset of ``{1..M}`` (greedy for small ``M``, sphere construction above)."""
    if M < 1:
        raise ValueError("M must be positive")
    out = greedy_ap_free(M) if M <= GREEDY_LIMIT else sphere_ap_free(M)
    if has_three_ap(out):  # pragma: no cover - construction guarantees it
        raise AssertionError("constructed set contains a 3-term progression")
    return out


@dataclass(frozen=True)
class TriSumSet:
    modulus: int
    triples: tuple

    @property
    def elements(self) -> list:
        return [x for t in self.triples for x in t]

    def __len__(self):
        return 3 * len(self.triples)


def zero_sum_violations(N: int, triples) -> list:
    """3-subsets summing to 0 mod N other than the given triples (pair-based scan)."""
    elems = sorted(x for t in triples for x in t)
    members = set(elems)
    matched = {frozenset(t) for t in triples}
    bad = []
    for i, u in enumerate(elems):
        for v in elems[i + 1:]:
            w = (-u - v) % N
            if w > v and w in members and frozenset((u, v, w)) not in matched:
                bad.append((u, v, w))
    return bad


def matching_trisum_set(N: int) -> TriSumSet:
    """Triples ``{x, N//3 + x, N - N//3 - 2x}`` for ``x`` in a 3-AP-free ``B`` of ``{1..N//20}``."""
    if N < 60:
        raise ValueError("N must be at least 60")
    k = N // 3
    B = behrend_set(N // 20)
    triples = tuple((x, k + x, N - k - 2 * x) for x in B)
    blocks = [set(t[j] for t in triples) for j in range(3)]
    if any(blocks[i] & blocks[j] for i, j in combinations(range(3), 2)):  # pragma: no cover
        raise AssertionError("translated blocks overlap")
    if zero_sum_violations(N, triples):  # pragma: no cover
        raise AssertionError("unexpected zero-sum triple")
    return TriSumSet(N, triples)


# ---------------------------------------------------------------------------
# projective plane and the singular cubic


@dataclass(frozen=True)
class ProjectivePoint:
    """``(x : y : z)`` scaled so the last nonzero coordinate is 1."""

    x: int
    y: int
    z: int

    @classmethod
    def normalized(cls, F: Field, x, y, z):
        coords = [int(x), int(y), int(z)]
        last = next((c for c in reversed(coords) if c), None)
        if last is None:
            raise ValueError("(0:0:0) is not a projective point")
        if last != 1:
            s = F.inv(last)
            coords = [F.mul(s, c) for c in coords]
        return cls(*coords)

    @property
    def coords(self) -> tuple:
        return (self.x, self.y, self.z)


def collinear(F: Field, P, Q, R) -> bool:
    return det(Matrix(F, [P.coords, Q.coords, R.coords], 3)) == 0


def cross(F: Field, u, v) -> tuple:
    return (F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
            F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
            F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])))


@dataclass(frozen=True)
class SingularCurve:
    field: Field
    alpha: int = 0
    beta: int = 1

    def __post_init__(self):
        if self.alpha == self.beta:
            raise ValueError("alpha and beta must differ")

    @property
    def identity(self) -> ProjectivePoint:
        return ProjectivePoint(0, 1, 0)

    def contains(self, P: ProjectivePoint) -> bool:
        F, x, y, z = self.field, P.x, P.y, P.z
        lhs = F.mul(F.mul(F.sub(y, F.mul(self.alpha, x)), F.sub(y, F.mul(self.beta, x))), z)
        return lhs == F.pow(x, 3)


def curve_phi(curve: SingularCurve, P: ProjectivePoint) -> int:
    """``(y - beta x) / (y - alpha x)`` on affine points, 1 at the point at infinity."""
    F = curve.field
    if not curve.contains(P):
        raise NotOnCurve(f"{P} is not on the curve")
    if P.coords == (0, 0, 1):
        raise SingularPoint("(0:0:1) is the singular point")
    if P.z == 0:
        return 1
    return F.div(F.sub(P.y, F.mul(curve.beta, P.x)), F.sub(P.y, F.mul(curve.alpha, P.x)))


def phi_inverse(curve: SingularCurve, u: int) -> ProjectivePoint:
    F = curve.field
    if u == 0:
        raise ZeroInput("0 has no preimage")
    if u == 1:
        return curve.identity
    al, be = curve.alpha, curve.beta
    k = F.div(F.sub(be, F.mul(u, al)), F.sub(1, u))
    x = F.mul(F.sub(k, al), F.sub(k, be))
    P = ProjectivePoint(x, F.mul(k, x), 1)
    if not curve.contains(P) or curve_phi(curve, P) != u:  # pragma: no cover
        raise AssertionError("inverse map postcondition failed")
    return P


# ---------------------------------------------------------------------------
# triple families


@dataclass(frozen=True)
class TripleFamily:
    field: Field
    points: tuple
    triples: tuple

    @property
    def g(self) -> int:
        return len(self.triples)

    def triple_points(self, i: int) -> tuple:
        return tuple(self.points[j] for j in self.triples[i])

    def truncate(self, g: int) -> "TripleFamily":
        keep = self.triples[:g]
        pts = [self.points[j] for t in keep for j in t]
        return TripleFamily(self.field, tuple(pts), tuple((3 * i, 3 * i + 1, 3 * i + 2)
                                                          for i in range(len(keep))))

    def point_sets(self) -> list:
        return [frozenset(self.triple_points(i)) for i in range(self.g)]


def family_violations(fam: TripleFamily) -> list:
    """Problems with the matching-collinear property, found by hashing lines through pairs.

    Returns descriptions of unmatched collinear 3-subsets and of triples that
    are not collinear; an empty list means the family is valid.
    """
    F = fam.field
    pts = fam.points
    if len(set(pts)) != len(pts):
        return ["repeated point"]
    lines: dict = {}
    for i, j in combinations(range(len(pts)), 2):
        ln = ProjectivePoint.normalized(F, *cross(F, pts[i].coords, pts[j].coords))
        s = lines.setdefault(ln, set())
        s.add(i)
        s.add(j)
    matched = {frozenset(t) for t in fam.triples}
    problems = []
    for members in lines.values():
        if len(members) >= 3 and (len(members) > 3 or frozenset(members) not in matched):
            problems.append(f"collinear points {sorted(members)}")
    found = {frozenset(m) for m in lines.values() if len(m) == 3}
    for t in fam.triples:
        if frozenset(t) not in found:
            problems.append(f"triple {t} not collinear")
    return problems


def matching_collinear_family(F: Field, curve: SingularCurve | None = None) -> TripleFamily:
    """Image of the matching tri-sum set of ``Z/(q-1)`` on the singular cubic."""
    if F.order < 61:
        raise ValueError("field order must be at least 61")
    curve = curve or SingularCurve(F, 0, 1)
    T = matching_trisum_set(F.order - 1)
    g = primitive_element(F)
    pts, triples = [], []
    for t in T.triples:
        triples.append(tuple(range(len(pts), len(pts) + 3)))
        pts.extend(phi_inverse(curve, F.pow(g, k)) for k in t)
    fam = TripleFamily(F, tuple(pts), tuple(triples))
    problems = family_violations(fam)
    if problems:  # pragma: no cover
        raise AssertionError(f"family invariant broken: {problems[:3]}")
    return fam


def triples_to_code(fam: TripleFamily) -> LrcCode:
    """Code with ``A_i = [1 1 1]`` and ``B_i = [0 | -b_i | c_i]`` after scaling ``a_i + b_i + c_i = 0``."""
    F = fam.field
    if fam.g < 2:
        raise ShapeMismatch("need at least two triples")
    params = LrcParams(3 * fam.g, 3, 1, 3, F)
    A_blocks, B_blocks = [], []
    ones = Matrix(F, [[1, 1, 1]], 3)
    for i in range(fam.g):
        P, Q, R = fam.triple_points(i)
        M = Matrix.from_columns(F, [P.coords, Q.coords, R.coords], 3)
        if det(M) != 0:
            raise NotCollinear(f"triple {i} is not collinear")
        N = null_space(M)
        if N.ncols != 1:
            raise DegenerateScaling(f"triple {i} spans a space of the wrong dimension")
        c = N.column(0)
        if 0 in c:
            raise DegenerateScaling(f"triple {i} has a zero scaling coefficient")
        b = [F.mul(c[1], v) for v in Q.coords]
        cc = [F.mul(c[2], v) for v in R.coords]
        cols = [[0, 0, 0], [F.neg(v) for v in b], cc]
        A_blocks.append(ones)
        B_blocks.append(Matrix.from_columns(F, cols, 3))
    return assemble(params, A_blocks, B_blocks)


def code_to_triples(code: LrcCode) -> TripleFamily:
    """Differences of heavy columns within each group, after scaling local rows to all ones."""
    p = code.params
    if (p.r, p.a, p.h) != (3, 1, 3):
        raise ShapeMismatch("need a code with r=3, a=1, h=3")
    F = code.field
    pts, triples = [], []
    for A, B in zip(code.A_blocks, code.B_blocks):
        scale = A.rows[0]
        if 0 in scale:
            raise ShapeMismatch("local row has a zero entry")
        # Column scaling by 1/A[j] turns the local row into all ones.
        v = [[F.div(B.rows[k][j], scale[j]) for k in range(3)] for j in range(3)]
        diffs = [[F.sub(v[1][k], v[0][k]) for k in range(3)],
                 [F.sub(v[2][k], v[1][k]) for k in range(3)],
                 [F.sub(v[0][k], v[2][k]) for k in range(3)]]
        triples.append(tuple(range(len(pts), len(pts) + 3)))
        for d in diffs:
            pts.append(ProjectivePoint.normalized(F, *d))
    fam = TripleFamily(F, tuple(pts), tuple(triples))
    problems = family_violations(fam)
    if problems:
        raise NotCollinear(f"code does not yield a matching family: {problems[:3]}")
    return fam
