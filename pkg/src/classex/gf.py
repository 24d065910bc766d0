"""Exact arithmetic in GF(p^k).

Elements are plain ints in ``[0, p^k)``: the coefficient vector of the
residue polynomial written base ``p``, little-endian.  ``0`` is the additive
zero and ``1`` the multiplicative identity.  Multiplication goes through
log/antilog tables; addition works digit-wise.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p^k``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


# --- polynomials over GF(p), coefficient lists low degree first ------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(poly), list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> list[int]:
    # itertools.product enumerates (c0, c1, ...) with c0 most significant,
    # i.e. lexicographic order on low-degree-first coefficient tuples.
    for low in itertools.product(range(p), repeat=k):
        poly = list(low) + [1]
        if k == 1 or is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


class Field:
    """GF(p^k) with a deterministic modulus; immutable after construction."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if p ** k > MAX_FIELD_SIZE:
            raise FieldError(f"GF({p}^{k}) exceeds {MAX_FIELD_SIZE} elements")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(smallest_irreducible(p, k))
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (field_new, (self.p, self.k))

    # -- construction -------------------------------------------------------

    def _poly(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _index(self, coeffs: list[int]) -> int:
        idx = 0
        for c in reversed(list(coeffs) + [0] * (self.k - len(coeffs))):
            idx = idx * self.p + c
        return idx

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _poly_mul(self._poly(a), self._poly(b), self.p)
        return self._index(_poly_mod(prod, list(self.modulus), self.p))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        self.digits = np.array([self._poly(a) for a in range(q)], dtype=np.int64).reshape(q, k)
        self.weights = p ** np.arange(k, dtype=np.int64)
        order = q - 1
        exp = np.zeros(2 * order + 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        for g in range(2, q) if q > 2 else [1]:
            x = 1
            seen = 0
            for i in range(order):
                exp[i] = x
                if log[x] >= 0 and i > 0:
                    break
                log[x] = i
                seen += 1
                x = self._slow_mul(x, g) if q > 2 else 1
            if seen == order:
                self.generator = g
                break
            log[:] = -1
        else:  # pragma: no cover - a primitive element always exists
            raise FieldError("no primitive element found")
        exp[order:2 * order] = exp[:order]
        self.exp = exp
        self.log = log
        inv = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        inv[nz] = exp[(order - log[nz]) % order]
        self.inv_table = inv
        neg = self.digits.copy()
        neg = (-neg) % p
        self.neg_table = neg @ self.weights

    # -- scalar arithmetic --------------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of {self}")
        return a

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(((self.digits[a] + self.digits[b]) % self.p) @ self.weights)

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, m: int) -> int:
        if a == 0:
            if m < 0:
                raise ZeroDivisionError(f"inverse of zero in {self}")
            return 1 if m == 0 else 0
        return int(self.exp[(self.log[a] * m) % (self.q - 1)])

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        from math import gcd
        n = self.q - 1
        return n // gcd(n, int(self.log[a]))

    def frobenius_q(self, a: int) -> int:
        """``a -> a^q`` on GF(q^2), where ``q = p^(k/2)``."""
        if self.k % 2:
            raise FieldError(f"{self} is not a quadratic extension")
        return self.pow(a, self.p ** (self.k // 2))

    def sqrt_q(self) -> int:
        """The ``q`` with this field equal to GF(q^2)."""
        if self.k % 2:
            raise FieldError(f"{self} is not a quadratic extension")
        return self.p ** (self.k // 2)

    def elements_of_order(self, m: int) -> list[int]:
        return [a for a in range(1, self.q) if self.element_order(a) == m]

    # -- vectorised arithmetic on integer arrays ----------------------------

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        return self.inv_table[np.asarray(a, dtype=np.int64)]

    def vsum(self, a, axis):
        """Field sum along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        d = self.digits[a].sum(axis=axis if axis >= 0 else axis - 1) % self.p
        return d @ self.weights

    def mul_matrix(self, b: int) -> np.ndarray:
        """``k x k`` matrix over GF(p) of ``x -> x*b`` acting on digit rows."""
        rows = [self.digits[self.mul(self.p ** i, b)] for i in range(self.k)]
        return np.array(rows, dtype=np.int64)


@lru_cache(maxsize=None)
def field_new(p: int, k: int = 1) -> Field:
    return Field(p, k)


def gf(q: int) -> Field:
    p, k = prime_power(q)
    return field_new(p, k)
