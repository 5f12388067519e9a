"""Finite fields GF(p^e) as dense lookup tables.

Elements are integers in ``range(q)``; index ``i`` stands for the
polynomial ``sum(c_j x^j)`` whose coefficients are the base-``p`` digits
of ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import NotPrime, OrderTooLarge, ZeroInverse

MAX_ORDER = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, e)`` with ``q == p**e``, or raise NotPrime."""
    if q < 2:
        raise NotPrime("q must be a prime power")
    p = 2
    while q % p:
        p += 1
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrime("q must be a prime power")
    return p, e


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    # mod is monic, low degree first
    a = list(a)
    d = len(mod) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k] % p
        if c:
            for j in range(d + 1):
                a[k - d + j] = (a[k - d + j] - c * mod[j]) % p
    return [x % p for x in a[:d]] + [0] * max(0, d - len(a))


def _is_irreducible(poly: list[int], p: int) -> bool:
    e = len(poly) - 1
    for deg in range(1, e // 2 + 1):
        for low in product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``e`` with the smallest coefficient index.

    Coefficients are returned low degree first, leading 1 included.
    """
    for idx in range(p**e):
        low = [(idx // p**j) % p for j in range(e)]
        poly = low + [1]
        if e == 1 or (low[0] != 0 and _is_irreducible(poly, p)):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class Field:
    p: int
    e: int
    q: int
    reduction_poly: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]
    neg_table: tuple[int, ...]
    inv_table: tuple[int | None, ...]

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        r = self.inv_table[a]
        if r is None:
            raise ZeroInverse("zero has no inverse")
        return r

    def power(self, a: int, k: int) -> int:
        r = 1
        for _ in range(k):
            r = self.mul_table[r][a]
        return r

    def arith(self, a: int, b: int | None, kind: str) -> int:
        if kind == "add":
            return self.add(a, b)
        if kind == "mul":
            return self.mul(a, b)
        if kind == "neg":
            return self.neg(a)
        if kind == "inv":
            return self.inv(a)
        raise ValueError(f"unknown operation {kind!r}")

    def __repr__(self) -> str:
        return f"GF({self.q})"


def field_new(p: int, e: int = 1) -> Field:
    """Build GF(p^e) over the smallest irreducible of degree ``e``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise OrderTooLarge("extension degree must be at least 1")
    q = p**e
    if q > MAX_ORDER:
        raise OrderTooLarge(f"q={q} exceeds the cap {MAX_ORDER}")
    poly = smallest_irreducible(p, e)

    def digits(i):
        return [(i // p**j) % p for j in range(e)]

    def index(c):
        return sum(x * p**j for j, x in enumerate(c))

    add = tuple(
        tuple(index([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q))
        for a in range(q)
    )
    mul_rows = []
    for a in range(q):
        da = digits(a)
        row = []
        for b in range(q):
            db = digits(b)
            prod_ = [0] * (2 * e - 1)
            for i, x in enumerate(da):
                for j, y in enumerate(db):
                    prod_[i + j] += x * y
            row.append(index(_poly_mod(prod_, list(poly), p)))
        mul_rows.append(tuple(row))
    mul = tuple(mul_rows)
    neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
    inv = tuple(
        None if a == 0 else next(b for b in range(1, q) if mul[a][b] == 1) for a in range(q)
    )
    return Field(p, e, q, poly, add, mul, neg, inv)


@lru_cache(maxsize=None)
def get_field(q: int) -> Field:
    """Shared field instance for order ``q``."""
    p, e = prime_power(q)
    return field_new(p, e)
