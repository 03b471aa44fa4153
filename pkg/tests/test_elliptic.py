from itertools import combinations

import numpy as np
import pytest

from mrlrc.elliptic import (ProjectivePoint, SingularCurve, TripleFamily, behrend_set,
                            code_to_triples, collinear, curve_phi, family_violations,
                            greedy_ap_free, matching_collinear_family, matching_trisum_set,
                            phi_inverse, sphere_ap_free, triples_to_code)
from mrlrc.errors import NotCollinear, NotOnCurve, ShapeMismatch, SingularPoint, ZeroInput
from mrlrc.field import field_of_order, make_field
from mrlrc.lrc import LrcParams, assemble
from mrlrc.matrix import Matrix
from mrlrc.verify import verify_mr

from oracle import NaiveField, is_three_ap_free, leibniz_det

GF7 = make_field(7)


def reference_greedy(M):
    out = []
    for x in range(1, M + 1):
        if is_three_ap_free(out + [x]):
            out.append(x)
    return out


def collinear_subsets(F, pts):
    N = NaiveField(F.characteristic, F.modulus)
    return {frozenset(c) for c in combinations(range(len(pts)), 3)
            if leibniz_det(N, [pts[i].coords for i in c]) == 0}


# -- 3-AP-free sets -------------------------------------------------------------------

def test_behrend_small_examples():
    assert behrend_set(3) == [1, 2] == reference_greedy(3)
    assert behrend_set(14) == [1, 2, 4, 5, 10, 11, 13, 14] == reference_greedy(14)


@pytest.mark.parametrize("M", [1, 2, 30, 100, 300])
def test_greedy_matches_reference(M):
    assert greedy_ap_free(M) == reference_greedy(M)


@pytest.mark.parametrize("M", [5000, 5001, 12000, 60000])
def test_behrend_outputs_are_ap_free(M):
    B = behrend_set(M)
    assert B and all(1 <= x <= M for x in B) and B == sorted(set(B))
    assert is_three_ap_free(B)


def test_sphere_construction_is_ap_free():
    B = sphere_ap_free(20000)
    assert len(B) > 50 and is_three_ap_free(B)


# -- matching tri-sums ---------------------------------------------------------------------

def test_trisum_n60():
    T = matching_trisum_set(60)
    assert T.triples == ((1, 21, 38), (2, 22, 36))
    elems = T.elements
    zero = [c for c in combinations(elems, 3) if sum(c) % 60 == 0]
    assert sorted(map(sorted, zero)) == [[1, 21, 38], [2, 22, 36]]


@pytest.mark.parametrize("N", [60, 61, 100, 240, 601, 1000, 3000])
def test_trisum_exhaustive(N):
    T = matching_trisum_set(N)
    elems = T.elements
    assert len(set(elems)) == len(T) == 3 * len(behrend_set(N // 20))
    assert all(sum(t) % N == 0 for t in T.triples)
    matched = {frozenset(t) for t in T.triples}
    for c in combinations(elems, 3):
        assert (sum(c) % N == 0) == (frozenset(c) in matched)


def test_trisum_needs_n60():
    with pytest.raises(ValueError):
        matching_trisum_set(59)


# -- the singular cubic ----------------------------------------------------------------------

def test_phi_examples():
    E = SingularCurve(GF7, 0, 1)
    assert curve_phi(E, E.identity) == 1
    P = ProjectivePoint(6, 4, 1)
    assert (4 * (4 - 6)) % 7 == 6 ** 3 % 7
    assert curve_phi(E, P) == (4 - 6) * pow(4, -1, 7) % 7 == 3


def test_phi_errors():
    E = SingularCurve(GF7, 0, 1)
    with pytest.raises(NotOnCurve):
        curve_phi(E, ProjectivePoint(1, 1, 1))
    with pytest.raises(SingularPoint):
        curve_phi(E, ProjectivePoint(0, 0, 1))
    with pytest.raises(ValueError):
        SingularCurve(GF7, 2, 2)


def test_phi_inverse_examples():
    E = SingularCurve(GF7, 0, 1)
    assert phi_inverse(E, 1) == E.identity
    assert phi_inverse(E, 3) == ProjectivePoint(6, 4, 1)
    with pytest.raises(ZeroInput):
        phi_inverse(E, 0)


@pytest.mark.parametrize("q", [7, 13, 61, 121, 125, 256, 257])
def test_phi_round_trip_exhaustive(q):
    F = field_of_order(q)
    E = SingularCurve(F, 0, 1)
    pts = set()
    for u in range(1, q):
        P = phi_inverse(E, u)
        assert E.contains(P) and curve_phi(E, P) == u
        pts.add(P)
    assert len(pts) == q - 1


@pytest.mark.parametrize("q,alpha,beta", [(13, 0, 1), (13, 3, 7), (16, 2, 5)])
def test_collinearity_iff_product_one(q, alpha, beta):
    F = field_of_order(q)
    E = SingularCurve(F, alpha, beta)
    P = {u: phi_inverse(E, u) for u in range(1, q)}
    for u, v, w in combinations(range(1, q), 3):
        assert collinear(F, P[u], P[v], P[w]) == (F.mul(F.mul(u, v), w) == 1)


def test_collinearity_transport_random_pairs():
    F = field_of_order(601)
    E = SingularCurve(F, 0, 1)
    rng = np.random.default_rng(6)
    for u, v in rng.integers(1, 601, (300, 2)).tolist():
        w = F.inv(F.mul(u, v))
        if len({u, v, w}) == 3:
            assert collinear(F, phi_inverse(E, u), phi_inverse(E, v), phi_inverse(E, w))


# -- triple families ----------------------------------------------------------------------------

def test_family_q61():
    F = field_of_order(61)
    fam = matching_collinear_family(F)
    assert fam.g == 2 and len(fam.points) == 6
    assert collinear_subsets(F, fam.points) == {frozenset(t) for t in fam.triples}


@pytest.mark.parametrize("q", [61, 101, 121, 241, 601])
def test_family_size_and_invariant(q):
    F = field_of_order(q)
    fam = matching_collinear_family(F)
    assert len(fam.points) == 3 * len(behrend_set((q - 1) // 20))
    assert family_violations(fam) == []
    if len(fam.points) <= 30:
        assert collinear_subsets(F, fam.points) == {frozenset(t) for t in fam.triples}


def test_family_violations_detects_extra_line():
    F = GF7
    # Triple 0 lies on z=0, triple 1 on y=0; (1:0:0) is on both lines.
    pts = tuple(ProjectivePoint.normalized(F, *c) for c in
                [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (2, 0, 1)])
    fam = TripleFamily(F, pts, ((0, 1, 2), (3, 4, 5)))
    assert any("collinear points [0, 3, 4, 5]" == v for v in family_violations(fam))
    bad = TripleFamily(F, pts, ((0, 1, 3), (2, 4, 5)))
    assert any("not collinear" in v for v in family_violations(bad))


# -- the code correspondence ------------------------------------------------------------------------

def test_q61_family_gives_mr_code():
    fam = matching_collinear_family(field_of_order(61))
    code = triples_to_code(fam)
    assert (code.params.n, code.params.r, code.params.a, code.params.h) == (6, 3, 1, 3)
    res = verify_mr(code)
    assert res.ok and res.patterns == 6
    assert verify_mr(code, method="direct").ok


def test_q601_truncated_family_gives_mr_code():
    fam = matching_collinear_family(field_of_order(601)).truncate(4)
    code = triples_to_code(fam)
    assert code.params.n == 12 and verify_mr(code).ok


@pytest.mark.parametrize("q", [61, 241, 601])
def test_round_trip_recovers_point_sets(q):
    fam = matching_collinear_family(field_of_order(q)).truncate(6)
    back = code_to_triples(triples_to_code(fam))
    assert back.point_sets() == fam.point_sets()


def test_heavy_columns_encode_scaled_triples():
    # Columns are 0, -b, c with a + b + c = 0, so a = col1 - col2 up to scaling.
    F = field_of_order(241)
    fam = matching_collinear_family(F)
    code = triples_to_code(fam)
    for i, B in enumerate(code.B_blocks):
        zero, col1, col2 = B.columns()
        P, Q, R = fam.triple_points(i)
        assert zero == [0, 0, 0]
        assert ProjectivePoint.normalized(F, *[F.sub(x, y) for x, y in zip(col1, col2)]) == P
        assert ProjectivePoint.normalized(F, *col1) == Q
        assert ProjectivePoint.normalized(F, *col2) == R


def test_code_to_triples_on_hand_built_codes():
    # Random (6, 3, 1, 3) codes over GF(13); every MR one must yield a matching family,
    # also after rescaling columns so the local rows are no longer all ones.
    F = make_field(13)
    rng = np.random.default_rng(13)
    p = LrcParams(6, 3, 1, 3, F)
    found = 0
    while found < 5:
        B = [Matrix(F, rng.integers(0, 13, (3, 3)).tolist(), 3) for _ in range(2)]
        ones = Matrix(F, [[1, 1, 1]], 3)
        code = assemble(p, [ones, ones], B)
        if not verify_mr(code).ok:
            continue
        found += 1
        fam = code_to_triples(code)
        assert family_violations(fam) == []
        assert collinear_subsets(F, fam.points) == {frozenset(t) for t in fam.triples}
        s = rng.integers(1, 13, 6).tolist()
        A2 = [Matrix(F, [[F.mul(s[3 * i + j], 1) for j in range(3)]], 3) for i in range(2)]
        B2 = [Matrix(F, [[F.mul(s[3 * i + j], v) for j, v in enumerate(row)] for row in B[i].rows], 3)
              for i in range(2)]
        scaled = assemble(p, A2, B2)
        assert verify_mr(scaled).ok
        assert code_to_triples(scaled).point_sets() == fam.point_sets()


def test_triples_to_code_errors():
    F = GF7
    pts = tuple(ProjectivePoint.normalized(F, *c) for c in
                [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, 3, 2)])
    with pytest.raises(NotCollinear):
        triples_to_code(TripleFamily(F, pts, ((0, 1, 2), (3, 4, 5))))
    with pytest.raises(ShapeMismatch):
        triples_to_code(TripleFamily(F, pts[:3], ((0, 1, 2),)))


def test_code_to_triples_shape():
    from mrlrc.constructions import construct_h2
    from mrlrc.fieldsearch import find_field_h2
    with pytest.raises(ShapeMismatch):
        code_to_triples(construct_h2(8, 4, 1, find_field_h2(8, 4)))
