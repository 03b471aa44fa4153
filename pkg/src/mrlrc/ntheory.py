"""Integer helpers: primality, factorization, divisors."""

from functools import lru_cache

# Deterministic Miller-Rabin witnesses for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_trial(n: int) -> bool:
    """Primality by trial division; slow, used as a cross-check."""
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple:
    """Prime factorization of ``n >= 1`` as a sorted tuple of ``(prime, exponent)``."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= m:
        for p in (f, f + 2):
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.append((p, e))
        if m > 1 and is_prime(m):
            break
        f += 6
    if m > 1:
        out.append((m, 1))
    return tuple(sorted(out))


def prime_factors(n: int) -> list:
    return [p for p, _ in factorize(n)]


def divisors(n: int) -> list:
    """All positive divisors of ``n`` in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def prime_power(q: int):
    """Return ``(p, m)`` with ``q == p**m`` and ``p`` prime, or ``None``."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    return fac[0]


def smallest_qualifying_divisor(order: int, min_size: int, min_cosets: int):
    """Smallest divisor ``d`` of ``order`` with ``d >= min_size`` and ``order // d >= min_cosets``."""
    for d in divisors(order):
        if d >= min_size and order // d >= min_cosets:
            return d
    return None
