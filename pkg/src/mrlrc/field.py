"""Finite fields GF(p), GF(p^m) and cubic towers GF(q0^3).

Elements are plain Python ints in a canonical encoding: the base-p evaluation
of the element's coefficient vector, least significant coefficient first.  For
a tower over a non-prime base the coefficients over the base are themselves
base encodings, so the encoding is still the base-p evaluation of the
flattened digit vector.  :class:`FieldElement` wraps an int for operator
syntax; the hot paths work on ints and on numpy arrays of ints.

Extension fields with at most ``TABLE_LIMIT`` elements switch to log/antilog
(and Zech log) tables the first time they are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import (DivideByZeroError, FieldMismatch, FieldOverflow, NotFound,
                     NotInGroup, NotPrime)
from .ntheory import factorize, is_prime, prime_factors, smallest_qualifying_divisor

MAX_ORDER = 1 << 40
TABLE_LIMIT = 1 << 20
FULL_DLOG_LIMIT = 1 << 24


class Field:
    """Common interface of :class:`PrimeField` and :class:`ExtensionField`."""

    characteristic: int
    degree: int          # degree over the immediate base
    prime_degree: int    # degree over GF(p)
    order: int
    base: "Field | None"
    modulus: tuple | None

    zero = 0
    one = 1

    # -- conversions -------------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value
        return FieldElement(self, self.element(value))

    def element(self, value: int) -> int:
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not a canonical element of a field of order {self.order}")
        return value

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under the prime-subfield embedding."""
        return n % self.characteristic

    def digits(self, x: int) -> tuple:
        p = self.characteristic
        out = []
        for _ in range(self.prime_degree):
            x, d = divmod(x, p)
            out.append(d)
        return tuple(out)

    def from_digits(self, digits) -> int:
        p = self.characteristic
        if len(digits) != self.prime_degree or any(not 0 <= d < p for d in digits):
            raise ValueError(f"bad digit vector {digits!r}")
        x = 0
        for d in reversed(digits):
            x = x * p + d
        return x

    def elements(self):
        return range(self.order)

    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    @property
    def tower_base(self):
        """The base field when this field is an extension of a non-prime field."""
        if self.base is not None and not self.base.is_prime_field:
            return self.base
        return None

    # -- derived arithmetic ------------------------------------------------
    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            x = self.inv(x)
            k = -k
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, x)
            k >>= 1
            if k:
                x = self.mul(x, x)
        return result

    def sum(self, values) -> int:
        total = 0
        for v in values:
            total = self.add(total, v)
        return total

    def prod(self, values) -> int:
        total = 1
        for v in values:
            total = self.mul(total, v)
        return total

    # -- vectorized arithmetic on numpy arrays -----------------------------
    def asarray(self, values) -> np.ndarray:
        return np.asarray(values, dtype=np.int64)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vdiv(self, a, b):
        return self.vmul(a, self.vinv(b))

    # -- misc ----------------------------------------------------------------
    def order_of(self, x: int) -> int:
        """Multiplicative order of a nonzero element."""
        if x == 0:
            raise NotInGroup("zero has no multiplicative order")
        n = self.order - 1
        d = n
        for ell, e in factorize(n) if n > 1 else ():
            for _ in range(e):
                if self.pow(x, d // ell) == 1:
                    d //= ell
                else:
                    break
        return d

    def random_element(self, rng, nonzero=False) -> int:
        lo = 1 if nonzero else 0
        return int(rng.integers(lo, self.order))


class PrimeField(Field):
    def __init__(self, p: int):
        self.characteristic = p
        self.degree = 1
        self.prime_degree = 1
        self.order = p
        self.base = None
        self.modulus = None
        self._object = p >= (1 << 31)

    def __repr__(self):
        return f"GF({self.characteristic})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def coeffs(self, x: int) -> tuple:
        return (x,)

    def from_coeffs(self, coeffs) -> int:
        (c,) = coeffs
        return self.element(c)

    def add(self, x, y):
        s = x + y
        return s - self.characteristic if s >= self.characteristic else s

    def sub(self, x, y):
        s = x - y
        return s + self.characteristic if s < 0 else s

    def neg(self, x):
        return self.characteristic - x if x else 0

    def mul(self, x, y):
        return x * y % self.characteristic

    def inv(self, x):
        if x == 0:
            raise DivideByZeroError("zero has no inverse")
        return pow(x, -1, self.characteristic)

    def pow(self, x, k):
        if k < 0:
            return pow(self.inv(x), -k, self.characteristic)
        return pow(x, k, self.characteristic)

    def asarray(self, values):
        if self._object:
            return np.asarray(values, dtype=object)
        return np.asarray(values, dtype=np.int64)

    def vadd(self, a, b):
        return (a + b) % self.characteristic

    def vsub(self, a, b):
        return (a - b) % self.characteristic

    def vneg(self, a):
        return (-a) % self.characteristic

    def vmul(self, a, b):
        return (a * b) % self.characteristic

    def vinv(self, a):
        p = self.characteristic
        if self._object:
            return np.frompyfunc(lambda v: pow(int(v), -1, p) if v else 0, 1, 1)(a)
        # Fermat exponentiation; maps 0 to 0.
        result = np.ones_like(a)
        base = a % p
        e = p - 2
        while e:
            if e & 1:
                result = (result * base) % p
            e >>= 1
            if e:
                base = (base * base) % p
        return result

    def power_sequence(self, g: int, count: int) -> np.ndarray:
        """``[g^0, g^1, ..., g^(count-1)]`` as an int64 array."""
        p = self.characteristic
        if self._object:
            out, x = [], 1
            for _ in range(count):
                out.append(x)
                x = x * g % p
            return np.asarray(out, dtype=object)
        block = max(1, isqrt(count) + 1)
        first = np.empty(min(block, count), dtype=np.int64)
        x = 1
        for i in range(len(first)):
            first[i] = x
            x = x * g % p
        parts = [first]
        step = pow(g, block, p)
        done = len(first)
        cur = first
        while done < count:
            cur = (cur * step) % p
            parts.append(cur[: count - done])
            done += len(parts[-1])
        return np.concatenate(parts)


class ExtensionField(Field):
    """``base[X] / (modulus)`` for a monic irreducible ``modulus`` over ``base``."""

    def __init__(self, base: Field, modulus):
        modulus = tuple(int(c) for c in modulus)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.characteristic = base.characteristic
        self.prime_degree = base.prime_degree * self.degree
        self.order = base.order ** self.degree
        self._tables = None
        if self.order <= TABLE_LIMIT:
            # Swap in table-driven arithmetic on first use.
            self.mul = self._lazy("mul")
            self.add = self._lazy("add")
            self.neg = self._lazy("neg")
            self.sub = self._lazy("sub")
            self.inv = self._lazy("inv")

    def __repr__(self):
        return f"GF({self.base.order}^{self.degree}; {list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.base == self.base
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("EXT", self.base, self.modulus))

    # -- coefficient views ----------------------------------------------------
    def coeffs(self, x: int) -> tuple:
        Q = self.base.order
        out = []
        for _ in range(self.degree):
            x, c = divmod(x, Q)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        Q = self.base.order
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients")
        x = 0
        for c in reversed(coeffs):
            x = x * Q + self.base.element(c)
        return x

    def embed(self, c: int) -> int:
        """Image of a base-field element (constant polynomial)."""
        return self.base.element(c)

    def basis(self) -> tuple:
        """The power basis ``1, X, ..., X^(degree-1)`` over the base."""
        Q = self.base.order
        return tuple(Q ** i for i in range(self.degree))

    # -- polynomial arithmetic (used without tables) -------------------------
    def _add_poly(self, x, y):
        if self.characteristic == 2:
            return x ^ y
        p = self.characteristic
        res, scale = 0, 1
        while x or y:
            x, dx = divmod(x, p)
            y, dy = divmod(y, p)
            res += ((dx + dy) % p) * scale
            scale *= p
        return res

    def _neg_poly(self, x):
        if self.characteristic == 2:
            return x
        p = self.characteristic
        res, scale = 0, 1
        while x:
            x, dx = divmod(x, p)
            res += ((p - dx) % p) * scale
            scale *= p
        return res

    def _sub_poly(self, x, y):
        return self._add_poly(x, self._neg_poly(y))

    def _mul_poly(self, x, y):
        if not x or not y:
            return 0
        base, m, mod = self.base, self.degree, self.modulus
        a, b = self.coeffs(x), self.coeffs(y)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = base.add(prod[i + j], base.mul(ai, bj))
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for j in range(m):
                    if mod[j]:
                        prod[k - m + j] = base.sub(prod[k - m + j], base.mul(c, mod[j]))
        return self.from_coeffs(prod[:m])

    def _pow_poly(self, x, k):
        result = 1
        while k:
            if k & 1:
                result = self._mul_poly(result, x)
            k >>= 1
            if k:
                x = self._mul_poly(x, x)
        return result

    def _inv_poly(self, x):
        if x == 0:
            raise DivideByZeroError("zero has no inverse")
        return self._pow_poly(x, self.order - 2)

    add = _add_poly
    sub = _sub_poly
    neg = _neg_poly
    mul = _mul_poly
    inv = _inv_poly

    # -- tables ------------------------------------------------------------
    def _lazy(self, name):
        def stub(*args):
            self._build_tables()
            return getattr(self, name)(*args)
        return stub

    def _digit_matrix(self, values) -> np.ndarray:
        p = self.characteristic
        values = np.asarray(values, dtype=np.int64)
        out = np.empty(values.shape + (self.prime_degree,), dtype=np.int64)
        for i in range(self.prime_degree):
            out[..., i] = values % p
            values = values // p
        return out

    def _from_digit_matrix(self, digits) -> np.ndarray:
        p = self.characteristic
        weights = np.array([p ** i for i in range(self.prime_degree)], dtype=np.int64)
        return digits @ weights

    def _linear_powers(self, g: int, count: int) -> np.ndarray:
        """Powers of ``g`` computed blockwise with the GF(p)-linear map ``x -> g^B x``."""
        p, M = self.characteristic, self.prime_degree
        block = max(1, isqrt(count) + 1)
        first, x = [], 1
        for _ in range(min(block, count)):
            first.append(x)
            x = self._mul_poly(x, g)
        cur = self._digit_matrix(first)
        step = self._pow_poly(g, block)
        basis = [p ** i for i in range(M)]
        # row i of U: digits of step * e_i, so (d @ U) is multiplication by step.
        U = self._digit_matrix([self._mul_poly(step, e) for e in basis])
        parts = [np.asarray(first, dtype=np.int64)]
        done = len(first)
        while done < count:
            cur = (cur @ U) % p
            vals = self._from_digit_matrix(cur)
            parts.append(vals[: count - done])
            done += len(parts[-1])
        return np.concatenate(parts)

    def _build_tables(self):
        if self._tables is not None:
            return
        q1 = self.order - 1
        p = self.characteristic
        g = _primitive_by_poly(self)
        exp = self._linear_powers(g, q1)
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(q1, dtype=np.int64)
        if len(np.unique(exp)) != q1:
            raise AssertionError("table generator is not primitive")
        one_plus = exp - exp % p + (exp % p + 1) % p
        zech = np.where(one_plus == 0, -1, log[one_plus])
        exp2 = np.concatenate([exp, exp])
        self._tables = (g, exp2, log, zech)
        self._exp, self._log, self._zech = exp2.tolist(), log.tolist(), zech.tolist()
        self._q1 = q1
        self._half = q1 // 2
        self.mul = self._mul_table
        self.inv = self._inv_table
        if p == 2:
            self.add = self.sub = self._add_poly
            self.neg = self._neg_poly
        else:
            self.add = self._add_table
            self.neg = self._neg_table
            self.sub = self._sub_table

    def _mul_table(self, x, y):
        if not x or not y:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def _inv_table(self, x):
        if not x:
            raise DivideByZeroError("zero has no inverse")
        return self._exp[self._q1 - self._log[x]]

    def _add_table(self, x, y):
        if not x:
            return y
        if not y:
            return x
        lx = self._log[x]
        d = self._log[y] - lx
        if d < 0:
            d += self._q1
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[lx + z]

    def _neg_table(self, x):
        if not x:
            return 0
        return self._exp[self._log[x] + self._half]

    def _sub_table(self, x, y):
        if not y:
            return x
        return self._add_table(x, self._exp[self._log[y] + self._half])

    def has_tables(self) -> bool:
        if self._tables is None and self.order <= TABLE_LIMIT:
            self._build_tables()
        return self._tables is not None

    # -- vectorized ----------------------------------------------------------
    def vmul(self, a, b):
        if self.has_tables():
            _, exp, log, _ = self._tables
            out = exp[log[a] + log[b]]
            return np.where((a == 0) | (b == 0), 0, out)
        return np.frompyfunc(self._mul_poly, 2, 1)(a, b).astype(np.int64)

    def vinv(self, a):
        if self.has_tables():
            _, exp, log, _ = self._tables
            return np.where(a == 0, 0, exp[(self.order - 1) - log[a]])
        return np.frompyfunc(lambda v: self._inv_poly(int(v)) if v else 0, 1, 1)(a).astype(np.int64)

    def vneg(self, a):
        if self.characteristic == 2:
            return a
        if self.has_tables():
            _, exp, log, _ = self._tables
            return np.where(a == 0, 0, exp[log[a] + (self.order - 1) // 2])
        return self._vdigits(a, None, lambda da, db: (-da) % self.characteristic)

    def vadd(self, a, b):
        if self.characteristic == 2:
            return a ^ b
        if self.has_tables():
            _, exp, log, zech = self._tables
            la, lb = log[a], log[b]
            z = zech[(lb - la) % (self.order - 1)]
            out = np.where(z < 0, 0, exp[la + np.maximum(z, 0)])
            out = np.where(a == 0, b, out)
            return np.where(b == 0, a, out)
        return self._vdigits(a, b, lambda da, db: (da + db) % self.characteristic)

    def _vdigits(self, a, b, op):
        p = self.characteristic
        a = np.asarray(a, dtype=np.int64)
        b = np.zeros_like(a) if b is None else np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.prime_degree):
            out += op(a % p, b % p) * scale
            a, b = a // p, b // p
            scale *= p
        return out

    def power_sequence(self, g: int, count: int) -> np.ndarray:
        if self.has_tables():
            _, exp, log, _ = self._tables
            if g == 0:
                raise NotInGroup("zero")
            return exp[(np.arange(count, dtype=np.int64) * log[g]) % (self.order - 1)]
        return self._linear_powers(g, count)


@dataclass(frozen=True, eq=False)
class FieldElement:
    """An element of ``field`` with operator syntax; ``value`` is the canonical int."""

    field: Field
    value: int

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("operands live in different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.field.pow(self.value, k))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self) -> tuple:
        return self.field.coeffs(self.value)

    def __repr__(self):
        return f"{self.field!r}({self.value})"


# ---------------------------------------------------------------------------
# construction


def _check_order(order: int):
    if order > MAX_ORDER:
        raise FieldOverflow(f"field order {order} exceeds 2^40")


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    _check_order(p)
    return PrimeField(p)


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(F: Field, a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if not b:
        raise DivideByZeroError("polynomial division by zero")
    inv_lead = F.inv(b[-1])
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = F.mul(a[-1], inv_lead)
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, bi))
        a = _poly_trim(a)
    return q, a


def _poly_mulmod(F: Field, a, b, mod):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = F.add(prod[i + j], F.mul(ai, bj))
    return _poly_divmod(F, prod, mod)[1]


def _poly_gcd(F: Field, a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_divmod(F, a, b)[1]
    return a


def _x_power_mod(F: Field, e: int, mod):
    """``X^e mod mod`` over F."""
    result, base = [1], [0, 1]
    base = _poly_divmod(F, base, mod)[1]
    while e:
        if e & 1:
            result = _poly_mulmod(F, result, base, mod)
        e >>= 1
        if e:
            base = _poly_mulmod(F, base, base, mod)
    return result


def is_irreducible(F: Field, poly) -> bool:
    """Rabin's test for a monic polynomial (coefficients low to high) over ``F``."""
    poly = _poly_trim(poly)
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if m <= 3:
        # Reducible iff it has a root.
        for x in F.elements():
            acc = 0
            for c in reversed(poly):
                acc = F.add(F.mul(acc, x), c)
            if acc == 0:
                return False
        return True
    Q = F.order
    x = [0, 1]
    full = _x_power_mod(F, Q ** m, poly)
    if _poly_trim(full) != x:
        return False
    for ell in prime_factors(m):
        h = _x_power_mod(F, Q ** (m // ell), poly)
        diff = _poly_trim([F.sub(h[i] if i < len(h) else 0, x[i] if i < 2 else 0)
                           for i in range(max(len(h), 2))])
        g = _poly_gcd(F, poly, diff)
        if len(g) > 1:
            return False
    return True


def lowest_irreducible(F: Field, m: int) -> tuple:
    """Monic irreducible of degree ``m`` over ``F`` with the smallest integer encoding."""
    Q = F.order
    for code in range(Q ** m):
        coeffs = []
        c = code
        for _ in range(m):
            c, d = divmod(c, Q)
            coeffs.append(d)
        poly = coeffs + [1]
        if coeffs[0] == 0:
            continue
        if is_irreducible(F, poly):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> Field:
    """GF(p^m) with the lowest-encoding irreducible modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be positive")
    _check_order(p ** m)
    base = prime_field(p)
    if m == 1:
        return base
    return ExtensionField(base, lowest_irreducible(base, m))


@lru_cache(maxsize=None)
def make_cubic_extension(base: Field) -> Field:
    """Degree-3 extension of ``base``; a tower when ``base`` is not prime."""
    if base.order > (1 << 13):
        raise FieldOverflow("cubic extension base must have order at most 2^13")
    if base.is_prime_field:
        return make_field(base.characteristic, 3)
    return ExtensionField(base, lowest_irreducible(base, 3))


def field_of_order(q: int) -> Field:
    from .ntheory import prime_power
    pm = prime_power(q)
    if pm is None:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(*pm)


# ---------------------------------------------------------------------------
# multiplicative structure


def _is_primitive(F: Field, x: int, pow_fn) -> bool:
    n = F.order - 1
    if x == 0:
        return False
    if n == 1:
        return True
    return all(pow_fn(x, n // ell) != 1 for ell in prime_factors(n))


def _primitive_by_poly(F: ExtensionField) -> int:
    for x in range(1, F.order):
        if _is_primitive(F, x, F._pow_poly):
            return x
    raise AssertionError("no primitive element")  # pragma: no cover


@lru_cache(maxsize=None)
def primitive_element(F: Field) -> int:
    """Smallest (in encoding order) generator of the multiplicative group."""
    for x in range(1, F.order):
        if _is_primitive(F, x, F.pow):
            return x
    raise AssertionError("no primitive element")  # pragma: no cover


@dataclass(frozen=True)
class SubgroupData:
    """Cyclic subgroup ``G`` of the multiplicative group together with coset representatives."""

    parent: Field
    generator: int
    order: int
    coset_reps: tuple
    primitive: int

    @property
    def num_cosets(self) -> int:
        return (self.parent.order - 1) // self.order

    def elements(self) -> list:
        F, out, x = self.parent, [], 1
        for _ in range(self.order):
            out.append(x)
            x = F.mul(x, self.generator)
        return out

    def contains(self, x: int) -> bool:
        return x != 0 and self.parent.pow(x, self.order) == 1

    def same_coset(self, x: int, y: int) -> bool:
        return self.contains(self.parent.div(x, y))


def subgroup_of_order(F: Field, d: int, num_reps: int) -> SubgroupData:
    n = F.order - 1
    if n % d:
        raise NotFound(f"{d} does not divide {n}")
    if num_reps > n // d:
        raise NotFound(f"only {n // d} cosets available, {num_reps} requested")
    g = primitive_element(F)
    reps, x = [], 1
    for _ in range(num_reps):
        reps.append(x)
        x = F.mul(x, g)
    return SubgroupData(F, F.pow(g, n // d), d, tuple(reps), g)


def subgroup_with_cosets(F: Field, min_size: int, min_cosets: int) -> SubgroupData:
    """Smallest subgroup of size ``>= min_size`` leaving ``>= min_cosets`` cosets."""
    d = smallest_qualifying_divisor(F.order - 1, min_size, min_cosets)
    if d is None:
        raise NotFound(f"GF({F.order}) has no subgroup of size >= {min_size} "
                       f"with >= {min_cosets} cosets")
    return subgroup_of_order(F, d, min_cosets)


_DLOG_CACHE: dict = {}


def discrete_log(F: Field, g: int, u: int) -> int:
    """``k`` in ``[0, q-1)`` with ``g^k = u`` for a primitive ``g``."""
    if u == 0:
        raise NotInGroup("zero is not a power of g")
    n = F.order - 1
    if F.order <= FULL_DLOG_LIMIT:
        key = (F, g)
        table = _DLOG_CACHE.get(key)
        if table is None:
            powers = F.power_sequence(g, n)
            table = np.full(F.order, -1, dtype=np.int64)
            table[np.asarray(powers, dtype=np.int64)] = np.arange(n, dtype=np.int64)
            if len(_DLOG_CACHE) > 64:
                _DLOG_CACHE.clear()
            _DLOG_CACHE[key] = table
        k = int(table[u])
        if k < 0:
            raise NotInGroup(f"{u} is not a power of {g}")
        return k
    return _bsgs(F, g, u)


def _bsgs(F: Field, g: int, u: int) -> int:
    n = F.order - 1
    m = isqrt(n) + 1
    baby = {}
    x = 1
    for j in range(m):
        baby.setdefault(x, j)
        x = F.mul(x, g)
    factor = F.inv(F.pow(g, m))
    gamma = u
    for i in range(m + 1):
        j = baby.get(gamma)
        if j is not None:
            return (i * m + j) % n
        gamma = F.mul(gamma, factor)
    raise NotInGroup(f"{u} is not a power of {g}")
