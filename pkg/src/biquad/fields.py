"""Concrete coefficient domains for the elimination routines in smooth."""

from __future__ import annotations

import random
from fractions import Fraction

from . import upoly
from .scalars import CycloScalar, prime_factors


class PrimeField:
    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def is_zero(self, x) -> bool:
        return x == 0

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero mod p")
        return pow(x, -1, self.p)

    def from_int(self, k: int):
        return k % self.p


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_1_mod(n: int, start: int = 2**31):
    """Yield primes p = 1 (mod n), p > start, in increasing order."""
    k = start // n + 1
    while True:
        p = k * n + 1
        if _is_probable_prime(p):
            yield p
        k += 1


def root_of_unity_mod(n: int, p: int) -> int:
    """An element of exact multiplicative order n modulo p (needs n | p-1)."""
    if (p - 1) % n:
        raise ValueError(f"{n} does not divide {p}-1")
    if n == 1:
        return 1
    qs = prime_factors(n)
    rng = random.Random(p * 1000003 + n)
    while True:
        g = pow(rng.randrange(2, p - 1), (p - 1) // n, p)
        if all(pow(g, n // q, p) != 1 for q in qs):
            return g


class CycloReduction:
    """Reduction map Q(zeta_n) -> F_p sending zeta_n to a fixed root of unity."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.omega = root_of_unity_mod(n, p)
        self.field = PrimeField(p)

    def __call__(self, c: CycloScalar) -> int:
        c = c.lift(self.n)
        acc = 0
        w = 1
        for q in c.coeffs:
            q = Fraction(q)
            if q:
                if q.denominator % self.p == 0:
                    raise ZeroDivisionError("denominator divisible by the reduction prime")
                acc += q.numerator * pow(q.denominator, -1, self.p) * w
            w = w * self.omega % self.p
        return acc % self.p


class Split(Exception):
    """A zero divisor was met in K[x]/(m); carries a nontrivial factor of m."""

    def __init__(self, factor: list):
        super().__init__("modulus splits")
        self.factor = factor


class QuotientRing:
    """K[x]/(m) for squarefree m; behaves as a field until a zero divisor appears."""

    def __init__(self, base, modulus: list):
        self.base = base
        self.modulus = upoly.monic(base, list(modulus))
        self.zero: list = []
        self.one = self.reduce([base.one])

    def reduce(self, p: list) -> list:
        return upoly.divmod_(self.base, upoly.trim(self.base, list(p)), self.modulus)[1]

    def is_zero(self, x) -> bool:
        return not x

    def add(self, x, y):
        return upoly.add(self.base, x, y)

    def sub(self, x, y):
        return upoly.sub(self.base, x, y)

    def neg(self, x):
        return [self.base.neg(c) for c in x]

    def mul(self, x, y):
        return self.reduce(upoly.mul(self.base, x, y))

    def from_int(self, k: int):
        return self.reduce([self.base.from_int(k)])

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero in quotient ring")
        K = self.base
        r0, r1 = list(self.modulus), list(x)
        s0: list = []
        s1 = [K.one]
        while upoly.deg(r1) > 0:
            q, r = upoly.divmod_(K, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, upoly.sub(K, s0, upoly.mul(K, q, s1))
        if not r1:
            raise Split(upoly.monic(K, r0))
        return self.reduce(upoly.scale(K, s1, K.inv(r1[0])))
