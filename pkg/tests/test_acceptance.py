"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

The lines are also repeated in the pytest terminal summary.
"""

import time
from itertools import combinations

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from mrlrc.constructions import construct_h2, construct_h3
from mrlrc.elliptic import (SingularCurve, behrend_set, collinear, curve_phi, greedy_ap_free,
                            matching_collinear_family, phi_inverse, triples_to_code)
from mrlrc.errors import OutOfScope
from mrlrc.field import field_of_order, make_field
from mrlrc.fieldsearch import find_field_h2, find_field_h3, search_field_prime
from mrlrc.lrc import (assemble, decode_erasures, encode, enumerate_mr_patterns, lower_bound_q)
from mrlrc.matrix import (Matrix, block_det_lhs, block_det_rhs, cauchy, cauchy_det_closed_form,
                          det)
from mrlrc.ntheory import divisors, is_prime
from mrlrc.verify import verify_mr

GRID_N = (6, 8, 12, 16, 24, 48)
PANEL = ((13, 1), (2, 4), (13, 3))


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def grid(h: int, max_n: int):
    for n in GRID_N:
        if n > max_n:
            continue
        for r in range(2, n // 2 + 1):
            if n % r:
                continue
            for a in range(1, min(3, r - 1) + 1):
                if n - (n // r) * a - h > 0:
                    yield n, r, a


@pytest.fixture(scope="module")
def h2_codes():
    out = {}
    for n, r, a in grid(2, 48):
        out[(n, r, a)] = construct_h2(n, r, a, find_field_h2(n, r))
    return out


@pytest.fixture(scope="module")
def h3_codes():
    out = {}
    for n, r, a in grid(3, 16):
        found = find_field_h3(n, r)
        out[(n, r, a)] = (found.q, construct_h3(n, r, a, found))
    return out


@pytest.fixture(scope="module")
def elliptic_codes():
    out = {}
    for q in (61, 241, 601):
        fam = matching_collinear_family(field_of_order(q))
        out[q] = (fam, triples_to_code(fam.truncate(6)))
    return out


def test_criterion_1_h2_grid(h2_codes):
    start = time.perf_counter()
    bad = []
    for (n, r, a), code in h2_codes.items():
        q = code.field.order
        if q > 8 * n or not verify_mr(code).ok:
            bad.append((n, r, a, q))
    secs = time.perf_counter() - start
    ok = not bad and secs < 300
    report(1, ok, f"{len(h2_codes)} h=2 codes, failures={bad}, "
                  f"max q/n={max(c.field.order / n for (n, _, _), c in h2_codes.items()):.2f}, "
                  f"{secs:.1f}s")
    assert ok


def test_criterion_2_h3_grid(h3_codes):
    start = time.perf_counter()
    bad = []
    for (n, r, a), (q0, code) in h3_codes.items():
        if q0 > 8 * n or code.field.order != q0 ** 3 or not verify_mr(code).ok:
            bad.append((n, r, a, q0))
    secs = time.perf_counter() - start
    ok = not bad and secs < 600
    report(2, ok, f"{len(h3_codes)} h=3 codes, failures={bad}, "
                  f"max q0/n={max(q0 / n for (n, _, _), (q0, _) in h3_codes.items()):.2f}, "
                  f"{secs:.1f}s")
    assert ok


def test_criterion_3_elliptic(elliptic_codes):
    start = time.perf_counter()
    problems = []
    for q, (fam, code) in elliptic_codes.items():
        F = fam.field
        matched = {frozenset(t) for t in fam.triples}
        found = {frozenset(c) for c in combinations(range(len(fam.points)), 3)
                 if collinear(F, *(fam.points[i] for i in c))}
        if found != matched:
            problems.append(f"q={q} collinear scan")
        if not verify_mr(code).ok:
            problems.append(f"q={q} verify")
    fam601 = elliptic_codes[601][0]
    greedy = len(greedy_ap_free(30))
    size_ok = len(fam601.points) == 3 * len(behrend_set(30)) and greedy >= 8
    if not size_ok:
        problems.append("q=601 family size")
    secs = time.perf_counter() - start
    ok = not problems and secs < 300
    sizes = {q: len(f.points) for q, (f, _) in elliptic_codes.items()}
    report(3, ok, f"family sizes {sizes}, |behrend_set(30)|={len(behrend_set(30))}, "
                  f"problems={problems}, {secs:.1f}s")
    assert ok


SHAPES = ((1, 2, (1, 1)), (2, 2, (1, 1)), (1, 3, (1, 1, 1)), (1, 3, (1, 2)), (2, 3, (1, 2)))


def test_criterion_4_block_identity():
    total = mismatches = 0
    for p, m in PANEL:
        F = make_field(p, m)
        for si, (a, h, ts) in enumerate(SHAPES):
            rng = np.random.default_rng(4000 + 10 * si + p + m)
            for _ in range(500):
                Cs = [Matrix(F, rng.integers(0, F.order, (a, a + t)).tolist(), a + t) for t in ts]
                Ds = [Matrix(F, rng.integers(0, F.order, (h, a + t)).tolist(), a + t) for t in ts]
                total += 1
                mismatches += block_det_lhs(Cs, Ds) != block_det_rhs(Cs, Ds)
    ok = mismatches == 0
    report(4, ok, f"{total - mismatches}/{total} instances equal")
    assert ok


def test_criterion_5_cauchy():
    total = mismatches = 0
    for p, m in PANEL:
        F = make_field(p, m)
        rng = np.random.default_rng(5000 + p + m)
        for i in range(500):
            k = i % 5 + 1
            vals = rng.choice(F.order, size=2 * k, replace=False).tolist()
            total += 1
            mismatches += cauchy_det_closed_form(F, vals[:k], vals[k:]) != det(cauchy(F, vals[:k],
                                                                                     vals[k:]))
    F = make_field(13)
    C = cauchy(F, [0, 1, 2, 3, 4], [5, 6, 7, 8, 9])
    zero_minors = sum(det(C.select_rows(rs).select_columns(cs)) == 0
                      for k in range(1, 6) for rs in combinations(range(5), k)
                      for cs in combinations(range(5), k))
    ok = mismatches == 0 and zero_minors == 0
    report(5, ok, f"{total - mismatches}/{total} closed forms equal, "
                  f"{zero_minors} vanishing minors of a 5x5 instance")
    assert ok


def test_criterion_6_isomorphism():
    disagreements = checked = 0
    for q in (7, 13, 61, 121, 257):
        F = field_of_order(q)
        E = SingularCurve(F, 0, 1)
        P = {u: phi_inverse(E, u) for u in range(1, q)}
        disagreements += sum(curve_phi(E, P[u]) != u for u in P)
        if q <= 61:
            triples = combinations(range(1, q), 3)
        else:
            rng = np.random.default_rng(q)
            triples = []
            while len(triples) < 10_000:
                u, v = rng.integers(1, q, 2).tolist()
                # Every other sample is forced onto a line so both sides are exercised.
                w = F.inv(F.mul(u, v)) if len(triples) % 2 else int(rng.integers(1, q))
                if len({u, v, w}) == 3:
                    triples.append((u, v, w))
        for u, v, w in triples:
            checked += 1
            disagreements += collinear(F, P[u], P[v], P[w]) != (F.mul(F.mul(u, v), w) == 1)
    ok = disagreements == 0
    report(6, ok, f"{checked} triples plus all inverse round trips, {disagreements} disagreements")
    assert ok


def test_criterion_7_decode_round_trip(h2_codes, h3_codes, elliptic_codes):
    codes = {"h2 (8,4,1)": h2_codes[(8, 4, 1)], "h3 (8,4,1)": h3_codes[(8, 4, 1)][1],
             "elliptic q=61": elliptic_codes[61][1]}
    failures = runs = 0
    for name, code in codes.items():
        F = code.field
        rng = np.random.default_rng(7)
        words = [encode(code, rng.integers(0, F.order, code.params.k).tolist()) for _ in range(10)]
        for pattern in enumerate_mr_patterns(code.params):
            for c in words:
                damaged = [0 if j in pattern.indices else v for j, v in enumerate(c)]
                runs += 1
                failures += decode_erasures(code, damaged, pattern) != c
    ok = failures == 0
    report(7, ok, f"{runs - failures}/{runs} decodes exact over {len(codes)} codes")
    assert ok


def test_criterion_8_field_search():
    rng = np.random.default_rng(8)
    worst_prime, prime_bad = 0.0, 0
    done = 0
    while done < 1000:
        a, b = (int(x) for x in np.exp(rng.uniform(0, np.log(1000), 2)))
        if a * b > 10 ** 6 or a < 1 or b < 1:
            continue
        res = search_field_prime(a, b)
        A, B = res.witnesses
        ratio = A * B / (a * b)
        worst_prime = max(worst_prime, ratio)
        prime_bad += not (is_prime(res.q) and A >= a and B >= b and ratio <= 64)
        done += 1
    samples = [(n, r) for n in (2, 3, 4, 6, 12, 97, 100, 1024, 65536, 99991, 100000)
               for r in (1, n)] + [(100000, 10), (65536, 256), (99990, 3)]
    while len(samples) < 300:
        n = int(rng.integers(2, 100_001))
        ds = divisors(n)
        samples.append((n, ds[int(rng.integers(len(ds)))]))
    worst_h2, h2_bad = 0.0, []
    for n, r in samples:
        q = find_field_h2(n, r).q
        worst_h2 = max(worst_h2, q / n)
        if q > 8 * n:
            h2_bad.append((n, r, q))
    ok = prime_bad == 0 and not h2_bad
    report(8, ok, f"prime search 1000 pairs, max AB/ab={worst_prime:.3f}; "
                  f"find_field_h2 {len(samples)} (n,r) samples, max q/n={worst_h2:.3f}, "
                  f"violations={h2_bad[:5]}")
    assert ok


def test_criterion_9_lower_bound(h2_codes, h3_codes, elliptic_codes):
    codes = list(h2_codes.values()) + [c for _, c in h3_codes.values()] + \
        [c for _, c in elliptic_codes.values()]
    applied = violations = 0
    for code in codes:
        p = code.params
        try:
            rep = lower_bound_q(p.n, p.r, p.a, p.h)
        except OutOfScope:
            continue
        if rep.exact is None:
            continue
        applied += 1
        violations += code.field.order < rep.exact
    ok = violations == 0
    report(9, ok, f"exact bound applied to {applied}/{len(codes)} codes, {violations} violations")
    assert ok


def test_criterion_10_negative_control(h2_codes):
    start = time.perf_counter()
    hits = total = 0
    misses = {}
    for key, code in h2_codes.items():
        p = code.params
        for row in range(p.h):
            for col in range(p.n):
                i, j = divmod(col, p.r)
                B = list(code.B_blocks)
                rows = [list(rw) for rw in B[i].rows]
                rows[row][j] = 0
                B[i] = Matrix(code.field, rows, p.r)
                broken = assemble(p, code.A_blocks, B, check_mds=False)
                total += 1
                if not verify_mr(broken).ok:
                    hits += 1
                else:
                    misses[key] = misses.get(key, 0) + 1
    rate = hits / total
    ok = rate >= 0.95
    worst = sorted(misses.items(), key=lambda kv: -kv[1])[:6]
    report(10, ok, f"{hits}/{total} corruptions detected ({100 * rate:.1f}%, need 95%); "
                   f"most undetected (n,r,a): {worst}; {time.perf_counter() - start:.0f}s")
    assert ok
