"""Slow, independent reference implementations used to check the package.

Nothing here imports the arithmetic of ``mrlrc``; elements are handled as
base-p digit vectors and polynomials are reduced by schoolbook division.
"""

from __future__ import annotations

from itertools import combinations, permutations, product


class NaiveField:
    """GF(p^m) as digit vectors modulo a given monic polynomial (prime base only)."""

    def __init__(self, p: int, modulus=None):
        self.p = p
        self.modulus = list(modulus) if modulus else None
        self.m = len(self.modulus) - 1 if self.modulus else 1
        self.q = p ** self.m

    def digits(self, x: int) -> list:
        out = []
        for _ in range(self.m):
            x, d = divmod(x, self.p)
            out.append(d)
        return out

    def undigits(self, ds) -> int:
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def add(self, x, y):
        return self.undigits([(u + v) % self.p for u, v in zip(self.digits(x), self.digits(y))])

    def neg(self, x):
        return self.undigits([(-u) % self.p for u in self.digits(x)])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.m == 1:
            return x * y % self.p
        a, b = self.digits(x), self.digits(y)
        prod = [0] * (2 * self.m - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                prod[i + j] = (prod[i + j] + u * v) % self.p
        mod = self.modulus
        for k in range(len(prod) - 1, self.m - 1, -1):
            c = prod[k]
            if c:
                for j in range(self.m + 1):
                    prod[k - self.m + j] = (prod[k - self.m + j] - c * mod[j]) % self.p
        return self.undigits(prod[:self.m])

    def pow(self, x, k):
        out = 1
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def inv(self, x):
        # Exhaustive search keeps this independent of any inversion algorithm.
        for y in range(1, self.q):
            if self.mul(x, y) == 1:
                return y
        raise ZeroDivisionError

    def order_of(self, x):
        k, y = 1, x
        while y != 1:
            y = self.mul(y, x)
            k += 1
        return k


def poly_has_root(p: int, coeffs) -> bool:
    return any(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


def leibniz_det(F, M) -> int:
    """Determinant by the permutation expansion; ``F`` supplies add/sub/mul."""
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = F.mul(term, M[i][perm[i]])
        total = F.sub(total, term) if inv % 2 else F.add(total, term)
    return total


def minor_rank(F, M) -> int:
    """Largest size of a nonzero minor (exponential; small matrices only)."""
    rows, cols = len(M), len(M[0]) if M else 0
    for k in range(min(rows, cols), 0, -1):
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                if leibniz_det(F, [[M[i][j] for j in cs] for i in rs]):
                    return k
    return 0


def brute_patterns(n: int, r: int, a: int, h: int) -> set:
    """Every erasure set reachable by choosing a per group and then h more, as frozensets."""
    g = n // r
    out = set()
    for base in product(*[list(combinations(range(i * r, (i + 1) * r), a)) for i in range(g)]):
        chosen = set().union(*map(set, base)) if base else set()
        rest = [j for j in range(n) if j not in chosen]
        for extra in combinations(rest, h):
            out.add(frozenset(chosen | set(extra)))
    return out


def is_three_ap_free(values) -> bool:
    s = sorted(values)
    members = set(s)
    return not any((x + z) % 2 == 0 and (x + z) // 2 in members
                   for i, x in enumerate(s) for z in s[i + 1:])
