"""Exhaustive maximal-recoverability check with a reduced rank test.

For a maximal pattern with ``c_i = a + t_i`` erasures in group ``i`` the
restricted parity-check matrix has full column rank iff the ``h x h`` matrix

    [ R_1(S_1) | R_2(S_2) | ... ]

is nonsingular, where ``R_i(S) = B_i(S) N_i(S)`` and ``N_i(S)`` spans the
kernel of ``A_i(S)``.  Groups with ``t_i = 0`` drop out because every
``a x a`` minor of ``A_i`` is nonzero, so the engine only enumerates the
subsets of groups that carry extra erasures.  ``R_i(S)`` is the Schur
complement ``B_Q - B_P A_P^{-1} A_Q`` where ``P`` holds the first ``a``
columns of ``S`` and ``Q`` the rest; it is computed for all subsets at once
with vectorized elimination.

A pattern whose extra erasures fall one each into two groups with ``h = 2``
fails iff the two ``2 x 1`` columns are projectively equal (or one is zero),
so that case is decided by hashing instead of by pairwise determinants.
"""

from __future__ import annotations

import os
import time
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb, prod

import numpy as np

from .errors import BudgetExceeded
from .lrc import (ErasurePattern, LrcCode, count_mr_patterns, enumerate_mr_patterns,
                  is_correctable, local_mds_violation)

DEFAULT_BUDGET = 10 ** 8
CHUNK = 1 << 15


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    counterexample: ErasurePattern | None
    patterns: int
    checks: int
    seconds: float
    method: str

    def __bool__(self):
        return self.ok


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("MRLRC_BUDGET")
    if raw is None or raw.strip() == "":
        return default
    return int(float(raw))


def excess_vectors(g: int, h: int, cap: int):
    """Vectors ``t`` with ``0 <= t_i <= cap`` summing to ``h``, ascending lexicographically."""

    def rec(i, remaining):
        if i == g:
            if remaining == 0:
                yield ()
            return
        left = g - i - 1
        for t in range(0, min(cap, remaining) + 1):
            if remaining - t <= cap * left:
                for tail in rec(i + 1, remaining - t):
                    yield (t,) + tail

    yield from rec(0, h)


def _uses_hash(h, ts):
    return h == 2 and len(ts) == 2


def planned_checks(params) -> int:
    """Number of reduced rank checks the engine performs for an all-clear run."""
    r, a, h, g = params.r, params.a, params.h, params.g
    if h == 0:
        return 0
    total = 0
    for t in excess_vectors(g, h, min(r - a, h)):
        ts = [x for x in t if x]
        if _uses_hash(h, ts):
            total += 2 * comb(r, a + 1)
        else:
            total += prod(comb(r, a + x) for x in ts)
    return total


# ---------------------------------------------------------------------------
# vectorized kernels


_COMBO_CACHE: dict = {}


def _combos(r: int, c: int) -> np.ndarray:
    key = (r, c)
    arr = _COMBO_CACHE.get(key)
    if arr is None:
        arr = np.array(list(combinations(range(r), c)), dtype=np.int64).reshape(-1, c)
        _COMBO_CACHE[key] = arr
    return arr


def _swap_rows(M, k, p):
    idx = np.arange(M.shape[0])
    moved = M[idx, p].copy()
    M[idx, p] = M[:, k]
    M[:, k] = moved


def schur_blocks(F, A: np.ndarray, B: np.ndarray, combos: np.ndarray) -> np.ndarray:
    """``R(S)`` for every row ``S`` of ``combos``; shape ``(K, h, c - a)``."""
    a = A.shape[0]
    M = np.concatenate([A[:, combos], B[:, combos]], axis=0).transpose(1, 0, 2).copy()
    for k in range(a):
        nz = M[:, k:a, k] != 0
        if not nz.any(axis=1).all():
            raise ValueError("local block has a vanishing minor")
        p = np.argmax(nz, axis=1) + k
        if (p != k).any():
            _swap_rows(M, k, p)
        inv = F.vinv(M[:, k, k])
        M[:, k, :] = F.vmul(M[:, k, :], inv[:, None])
        factors = M[:, :, k].copy()
        factors[:, k] = 0
        M = F.vsub(M, F.vmul(factors[:, :, None], M[:, k, None, :]))
    return M[:, a:, a:]


def singular_mask(F, mats: np.ndarray) -> np.ndarray:
    """Boolean mask of singular matrices in a stack of square matrices."""
    n = mats.shape[1]
    if n == 1:
        return mats[:, 0, 0] == 0
    m = mats
    if n == 2:
        d = F.vsub(F.vmul(m[:, 0, 0], m[:, 1, 1]), F.vmul(m[:, 0, 1], m[:, 1, 0]))
        return d == 0
    if n == 3:
        mul, add, sub = F.vmul, F.vadd, F.vsub
        t1 = mul(m[:, 0, 0], sub(mul(m[:, 1, 1], m[:, 2, 2]), mul(m[:, 1, 2], m[:, 2, 1])))
        t2 = mul(m[:, 0, 1], sub(mul(m[:, 1, 0], m[:, 2, 2]), mul(m[:, 1, 2], m[:, 2, 0])))
        t3 = mul(m[:, 0, 2], sub(mul(m[:, 1, 0], m[:, 2, 1]), mul(m[:, 1, 1], m[:, 2, 0])))
        return add(sub(t1, t2), t3) == 0
    M = m.copy()
    singular = np.zeros(M.shape[0], dtype=bool)
    for k in range(n):
        nz = M[:, k:, k] != 0
        singular |= ~nz.any(axis=1)
        p = np.argmax(nz, axis=1) + k
        if (p != k).any():
            _swap_rows(M, k, p)
        inv = F.vinv(M[:, k, k])
        M[:, k, :] = F.vmul(M[:, k, :], inv[:, None])
        factors = M[:, :, k].copy()
        factors[:, k] = 0
        M = F.vsub(M, F.vmul(factors[:, :, None], M[:, k, None, :]))
    return singular


def projective_keys(F, vecs: np.ndarray) -> np.ndarray:
    """Class keys of 2-vectors up to scaling: ``y/x``, ``q`` for ``(0, y)``, ``-1`` for zero."""
    x, y = vecs[:, 0], vecs[:, 1]
    ratio = F.vmul(y, F.vinv(x))
    keys = np.where(x != 0, ratio, np.where(y != 0, F.order, -1))
    return keys.astype(np.int64)


# ---------------------------------------------------------------------------
# engine


class _Blocks:
    """Per-group numpy blocks with a small cache of Schur complements."""

    def __init__(self, code: LrcCode, cache):
        F = code.field
        self.F = F
        self.r, self.a, self.h = code.params.r, code.params.a, code.params.h
        self.A = [np.asarray(A.rows, dtype=np.int64).reshape(self.a, self.r) for A in code.A_blocks]
        self.B = [np.asarray(B.rows, dtype=np.int64).reshape(self.h, self.r) for B in code.B_blocks]
        self.keys = [(F, self.A[i].tobytes(), self.B[i].tobytes()) for i in range(len(self.A))]
        self.cache = cache

    def R(self, i: int, t: int) -> np.ndarray:
        key = self.keys[i] + (t,)
        hit = self.cache.pop(key, None)
        if hit is not None:
            self.cache[key] = hit
            return hit
        R = schur_blocks(self.F, self.A[i], self.B[i], _combos(self.r, self.a + t))
        self.cache[key] = R
        while len(self.cache) > 256:
            del self.cache[next(iter(self.cache))]
        return R


_SCHUR_CACHE: OrderedDict = OrderedDict()


def _pattern(params, t, chosen):
    """Erasure pattern from the excess vector and the chosen subset per excess group."""
    r, a = params.r, params.a
    out = []
    for i, ti in enumerate(t):
        local = chosen[i] if ti else tuple(range(a))
        out.extend(i * r + j for j in local)
    return ErasurePattern(tuple(out))


def _first_hash_failure(F, Ru, Rv):
    """Smallest ``(s, u)`` pair, lexicographically, with singular ``[Ru[s] | Rv[u]]``."""
    ku = projective_keys(F, Ru[:, :, 0])
    kv = projective_keys(F, Rv[:, :, 0])
    zero_v = np.flatnonzero(kv < 0)
    zmin = int(zero_v[0]) if len(zero_v) else None
    uniq, first = np.unique(kv, return_index=True)
    pos = np.searchsorted(uniq, ku)
    pos_c = np.minimum(pos, len(uniq) - 1)
    match = (uniq[pos_c] == ku) & (ku >= 0)
    cand = np.where(match, first[pos_c], np.iinfo(np.int64).max)
    if zmin is not None:
        cand = np.minimum(cand, zmin)
    cand = np.where(ku < 0, 0, cand)
    hits = np.flatnonzero(cand != np.iinfo(np.int64).max)
    if not len(hits):
        return None
    s = int(hits[0])
    return s, int(cand[s])


def _scan_product(F, Rs, sizes, start, stop):
    """First singular flat index in ``[start, stop)`` of the product, or None."""
    flat = np.arange(start, stop, dtype=np.int64)
    idx = np.unravel_index(flat, sizes)
    mats = np.concatenate([R[ix] for R, ix in zip(Rs, idx)], axis=2)
    bad = np.flatnonzero(singular_mask(F, mats))
    return int(flat[bad[0]]) if len(bad) else None


def _verify_reduced(code: LrcCode, threads: int, cache):
    p = code.params
    F, r, a, h, g = code.field, p.r, p.a, p.h, p.g
    if h == 0:
        # Only the local blocks matter and they were checked to be MDS.
        return None
    blocks = _Blocks(code, cache)
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for t in excess_vectors(g, h, min(r - a, h)):
            groups = [i for i, x in enumerate(t) if x]
            ts = [t[i] for i in groups]
            Rs = [blocks.R(i, x) for i, x in zip(groups, ts)]
            if _uses_hash(h, ts):
                hit = _first_hash_failure(F, Rs[0], Rs[1])
                if hit is not None:
                    chosen = {groups[0]: tuple(_combos(r, a + 1)[hit[0]]),
                              groups[1]: tuple(_combos(r, a + 1)[hit[1]])}
                    return _pattern(p, t, chosen)
                continue
            sizes = tuple(R.shape[0] for R in Rs)
            total = prod(sizes)
            ranges = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]
            found = None
            if pool is None:
                for s, e in ranges:
                    found = _scan_product(F, Rs, sizes, s, e)
                    if found is not None:
                        break
            else:
                for w in range(0, len(ranges), threads):
                    wave = ranges[w:w + threads]
                    results = list(pool.map(lambda se: _scan_product(F, Rs, sizes, *se), wave))
                    hits = [x for x in results if x is not None]
                    if hits:
                        found = min(hits)
                        break
            if found is not None:
                idx = np.unravel_index(found, sizes)
                chosen = {gi: tuple(_combos(r, a + x)[int(ix)]) for gi, x, ix in zip(groups, ts, idx)}
                return _pattern(p, t, chosen)
        return None
    finally:
        if pool is not None:
            pool.shutdown()


def _verify_direct(code: LrcCode):
    for pattern in enumerate_mr_patterns(code.params):
        if not is_correctable(code, pattern):
            return pattern
    return None


def verify_mr(code: LrcCode, budget: int | None = None, threads: int | None = None,
              method: str = "reduced", cache=None) -> VerifyResult:
    """Check every maximal erasure pattern; report the first failure in enumeration order.

    ``method='direct'`` computes the rank of the restricted parity-check
    matrix for each pattern literally and is meant for cross-checks.  Codes
    whose local blocks are not MDS are always checked directly.
    """
    p = code.params
    if budget is None:
        budget = budget_from_env()
    if threads is None:
        threads = os.cpu_count() or 1
    patterns = count_mr_patterns(p)
    mds_ok = all(local_mds_violation(A) is None for A in _distinct(code.A_blocks))
    if method == "direct" or not mds_ok:
        checks = patterns
        method = "direct"
    elif method == "reduced":
        checks = planned_checks(p)
    else:
        raise ValueError(f"unknown method {method!r}")
    if checks > budget:
        raise BudgetExceeded(patterns, checks, budget)
    start = time.perf_counter()
    if method == "direct":
        bad = _verify_direct(code)
    else:
        bad = _verify_reduced(code, threads, _SCHUR_CACHE if cache is None else cache)
    return VerifyResult(bad is None, bad, patterns, checks, time.perf_counter() - start, method)


def _distinct(blocks):
    seen, out = set(), []
    for B in blocks:
        key = tuple(map(tuple, B.rows))
        if key not in seen:
            seen.add(key)
            out.append(B)
    return out
