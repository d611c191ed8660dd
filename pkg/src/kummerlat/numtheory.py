"""Exact integer and rational primitives.

Factorization by trial division, Jacobi symbols, Hilbert symbols at every
place of Q and square-free parts.  Everything works on Python ints and
:class:`fractions.Fraction`; nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .errors import EvenModulus, InputTooLarge, LatticeError, ZeroInput

FACTOR_LIMIT = 2**62

Rational = Union[int, Fraction]


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


@dataclass(frozen=True)
class Place:
    """A place of Q: a rational prime ``p`` or the archimedean place (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise LatticeError(f"{self.p} is not prime")

    @property
    def is_infinite(self) -> bool:
        return self.p is None

    def __str__(self):
        return "inf" if self.p is None else str(self.p)


INFINITY = Place(None)


def as_place(v) -> Place:
    """Coerce ``v`` (a Place, a prime, or ``"inf"``/``None``) to a Place."""
    if isinstance(v, Place):
        return v
    if v is None or v == "inf" or v == "oo":
        return INFINITY
    return Place(int(v))


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: dict = field(default_factory=dict)

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors.items():
            n *= p**e
        return n

    def primes(self) -> list[int]:
        return sorted(self.factors)


def factorize(n: int) -> Factorization:
    n = int(n)
    if n == 0:
        raise ZeroInput("cannot factor 0")
    if abs(n) > FACTOR_LIMIT:
        raise InputTooLarge(f"|{n}| exceeds 2^62")
    sign = 1 if n > 0 else -1
    n = abs(n)
    factors = {}
    while n % 2 == 0:
        factors[2] = factors.get(2, 0) + 1
        n //= 2
    f = 3
    while f * f <= n:
        while n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return Factorization(sign, factors)


def jacobi_symbol(a: int, n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"modulus must be odd and positive, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ZeroInput("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _as_fraction(r) -> Fraction:
    r = Fraction(r)
    if r == 0:
        raise ZeroInput("expected a nonzero rational")
    return r


def squarefree_part(r: Rational) -> int:
    """The squarefree integer in the square class of ``r``."""
    r = _as_fraction(r)
    # p/q lies in the square class of p*q
    n = r.numerator * r.denominator
    sign = 1 if n > 0 else -1
    s = 1
    for p, e in factorize(abs(n)).factors.items():
        if e % 2:
            s *= p
    return sign * s


def relevant_primes(*values: Rational) -> list[int]:
    """2 together with every prime dividing a numerator or denominator."""
    primes = {2}
    for r in values:
        r = _as_fraction(r)
        for part in (r.numerator, r.denominator):
            primes.update(factorize(abs(part)).factors)
    return sorted(primes)


def is_local_square(r: Rational, v) -> bool:
    """Whether the nonzero rational ``r`` is a square in the completion Q_v."""
    v = as_place(v)
    s = squarefree_part(r)
    if v.is_infinite:
        return s > 0
    p = v.p
    if s % p == 0:
        return False
    if p == 2:
        return s % 8 == 1
    return jacobi_symbol(s, p) == 1


def hilbert_symbol(a: Rational, b: Rational, v) -> int:
    """Hilbert symbol (a, b)_v in {+1, -1}."""
    v = as_place(v)
    a = squarefree_part(a)
    b = squarefree_part(b)
    if v.is_infinite:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    alpha = valuation(a, p)
    beta = valuation(b, p)
    u = a // p**alpha
    w = b // p**beta
    if p != 2:
        eps = (p - 1) // 2
        sign = -1 if (alpha * beta * eps) % 2 else 1
        if beta % 2:
            sign *= jacobi_symbol(u, p)
        if alpha % 2:
            sign *= jacobi_symbol(w, p)
        return sign

    def eps2(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    e = eps2(u) * eps2(w) + alpha * omega(w) + beta * omega(u)
    return -1 if e % 2 else 1


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def content(values) -> int:
    g = 0
    for x in values:
        g = gcd(g, int(x))
    return g
