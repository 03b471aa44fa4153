"""Choosing a field whose multiplicative group has a suitable subgroup.

The constructions need a subgroup ``G`` of ``F_q^*`` with ``|G| >= size`` and
at least ``cosets`` cosets.  Two routes are provided: the constructive
factorizations ``q - 1 = A * B`` (a prime ``q``, or a power of two built from
the cyclotomic-style factorization of ``x^(2^m) - 1``), and a direct sweep over
prime powers.  The finders return whichever field is smaller.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import exp, log2

from .errors import FieldOverflow, SweepExhausted
from .field import MAX_ORDER, Field, SubgroupData, field_of_order, subgroup_of_order
from .ntheory import divisors, is_prime, prime_power, smallest_qualifying_divisor

SWEEP_FACTOR = 64


@dataclass(frozen=True)
class FieldSearchResult:
    """Field order ``q`` plus the chosen subgroup order and coset requirement.

    ``witnesses`` is ``(A, B)`` with ``A * B = q - 1`` when the result came from
    a constructive factorization, else ``None``.
    """

    q: int
    subgroup_order: int
    min_cosets: int
    witnesses: tuple | None = None
    source: str = "sweep"

    @property
    def num_cosets(self) -> int:
        return (self.q - 1) // self.subgroup_order

    @cached_property
    def field(self) -> Field:
        return field_of_order(self.q)

    @cached_property
    def subgroup(self) -> SubgroupData:
        return subgroup_of_order(self.field, self.subgroup_order, self.min_cosets)

    def line(self) -> str:
        out = f"q={self.q} subgroup={self.subgroup_order} cosets={self.num_cosets}"
        if self.witnesses is not None:
            out += f" A={self.witnesses[0]} B={self.witnesses[1]}"
        return out


def search_field_prime(a: int, b: int) -> FieldSearchResult:
    """Prime ``q = A*B + 1`` with ``A >= a``, ``B >= b``, scanning ``A*B`` upward from ``a*b``."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    n = a * b
    for P in range(n, SWEEP_FACTOR * n + 1):
        if not is_prime(P + 1):
            continue
        for A in divisors(P):
            if A >= a and P // A >= b:
                return FieldSearchResult(P + 1, A, b, (A, P // A), "prime")
    raise SweepExhausted(f"no prime A*B+1 with A>={a}, B>={b} and A*B <= {SWEEP_FACTOR}*{n}")


def _series_constant() -> float:
    s, j = 0.0, 0
    while True:
        term = 2.0 ** (-(2 ** j))
        if term < 1e-300:
            return exp(s)
        s += term
        j += 1


def search_field_char2(a: int, b: int, relaxed: bool = False) -> FieldSearchResult:
    """A power of two ``q = A*B + 1`` with ``A >= a`` and ``B >= b``.

    The default follows the explicit factorization
    ``x^(2^m) - 1 = (x - 1) * prod_i (1 + x^(2^(i-1)))`` with ``x = 2^l``.
    ``relaxed=True`` instead returns the smallest power of two whose ``q - 1``
    has a qualifying divisor.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    n = a * b
    if relaxed:
        M = 1
        while 2 ** M <= MAX_ORDER:
            q = 2 ** M
            A = smallest_qualifying_divisor(q - 1, a, b)
            if A is not None:
                return FieldSearchResult(q, A, b, (A, (q - 1) // A), "char2-relaxed")
            M += 1
        raise FieldOverflow(f"no power of two up to 2^40 fits a={a}, b={b}")
    lg = log2(n) if n > 1 else 0.0
    m = 1
    while (2 ** m - 1) ** 2 < lg:
        m += 1
    span = 2 ** m - 1
    target = _series_constant() * n + 1
    ell = 1
    while 2.0 ** (ell * span) < target:
        ell += 1
    x = 2 ** ell
    q = x ** (2 ** m)
    if q > MAX_ORDER:
        raise FieldOverflow(f"q = 2^{ell * 2 ** m} exceeds 2^40")
    alpha = 0
    while x ** alpha < a:
        alpha += 1
    A = 1
    for i in range(m):
        if alpha >> i & 1:
            A *= 1 + x ** (2 ** i)
    B = (q - 1) // A
    assert A * B == q - 1
    if A < a or B < b:  # pragma: no cover - excluded by the counting argument
        raise SweepExhausted(f"factorization A={A}, B={B} misses a={a}, b={b}")
    return FieldSearchResult(q, A, b, (A, B), "char2")


def _is_power_of_two(q: int) -> bool:
    return q >= 2 and q & (q - 1) == 0


def sweep_prime_powers(lo: int, hi: int, min_size: int, min_cosets: int, char2: bool = False,
                       floor: int = 2):
    """Smallest prime power ``q`` in ``(lo, hi]``, ``q >= floor``, with a qualifying subgroup."""
    for q in range(max(lo + 1, floor), hi + 1):
        if char2:
            if not _is_power_of_two(q):
                continue
        elif prime_power(q) is None:
            continue
        d = smallest_qualifying_divisor(q - 1, min_size, min_cosets)
        if d is not None:
            return FieldSearchResult(q, d, min_cosets, None, "sweep")
    return None


def find_field_h2(n: int, r: int, char2: bool = False) -> FieldSearchResult:
    """Field for the two-heavy-parity construction: subgroup ``>= r`` with ``>= n/r`` cosets."""
    if r < 1 or n % r:
        raise ValueError(f"r={r} must divide n={n}")
    g = n // r
    constructive = search_field_char2(r, g) if char2 else search_field_prime(r, g)
    swept = sweep_prime_powers(n, 8 * n, r, g, char2)
    if swept is not None and swept.q < constructive.q:
        return swept
    return constructive


def find_field_h3(n: int, r: int, char2: bool = False) -> FieldSearchResult:
    """Base field ``q0 >= 2r+3`` with a subgroup ``>= r+2`` and ``>= n/r`` cosets."""
    if r < 1 or n % r:
        raise ValueError(f"r={r} must divide n={n}")
    g = n // r
    floor = 2 * r + 3
    best = None
    if not char2:
        try:
            c = search_field_prime(r + 2, g)
            if c.q >= floor:
                best = c
        except SweepExhausted:
            pass
    hi = best.q if best is not None else 1 << 13
    swept = sweep_prime_powers(floor - 1, hi, r + 2, g, char2)
    if swept is not None and (best is None or swept.q < best.q):
        best = swept
    if best is None:
        raise SweepExhausted(f"no base field of order at most 2^13 found for n={n}, r={r}")
    return best
