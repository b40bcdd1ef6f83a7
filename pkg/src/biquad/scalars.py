"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as its coefficient vector in the power
basis 1, z, ..., z^(phi(N)-1), reduced modulo the N-th cyclotomic
polynomial.  Mixed-conductor arithmetic lifts both operands to the lcm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Rational = Union[int, Fraction]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def euler_phi(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    sign = 1
    for p in prime_factors(n):
        if (n // p) % p == 0:
            return 0
        sign = -sign
    return sign


def _int_poly_exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; both are coefficient lists, constant term first
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for i, d in enumerate(den):
                num[k - dd + i] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first.

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError(f"cyclotomic_polynomial needs n >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _int_poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def format_int_poly(coeffs: tuple[int, ...] | list[int], var: str = "x") -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mono) else ""
        if body and mono:
            body += "*"
        body += mono
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"


# ---------------------------------------------------------------------------
# raw field arithmetic at a fixed conductor


class CyclotomicField:
    """Arithmetic on raw coefficient tuples of Q(zeta_n).

    Elements are tuples of Fractions of length phi(n).  This is the fast
    path used by polynomial algorithms that fix one conductor up front.
    """

    _cache: dict[int, "CyclotomicField"] = {}

    def __new__(cls, n: int):
        field = cls._cache.get(n)
        if field is None:
            field = super().__new__(cls)
            field._setup(n)
            cls._cache[n] = field
        return field

    def _setup(self, n: int) -> None:
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        self.zero = (Fraction(0),) * self.degree
        self.one = (Fraction(1),) + (Fraction(0),) * (self.degree - 1)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (CyclotomicField, (self.n,))

    def reduce(self, coeffs) -> tuple[Fraction, ...]:
        r = [Fraction(c) for c in coeffs]
        d = self.degree
        mod = self.modulus
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if c:
                base = k - d
                for i in range(d):
                    if mod[i]:
                        r[base + i] -= c * mod[i]
        r = r[:d]
        r.extend([Fraction(0)] * (d - len(r)))
        return tuple(r)

    def from_rational(self, q: Rational) -> tuple[Fraction, ...]:
        return (Fraction(q),) + (Fraction(0),) * (self.degree - 1)

    def from_int(self, k: int) -> tuple[Fraction, ...]:
        return self.from_rational(k)

    def zeta_power(self, k: int) -> tuple[Fraction, ...]:
        k %= self.n
        return self.reduce([0] * k + [1])

    def is_zero(self, x) -> bool:
        return not any(x)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        d = self.degree
        if d == 1:
            return (x[0] * y[0],)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] += a * b
        return self.reduce(prod)

    def scale(self, x, q: Rational):
        return tuple(a * q for a in x)

    def inv(self, x):
        if not any(x):
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.degree == 1:
            return (1 / x[0],)
        # extended Euclid in Q[t] between x and the modulus
        r0 = [Fraction(c) for c in self.modulus]
        r1 = _strip(list(x))
        s0: list[Fraction] = []
        s1 = [Fraction(1)]
        while len(r1) > 1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        c = r1[0]
        return self.reduce([v / c for v in s1])

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def eq(self, x, y) -> bool:
        return x == y

    def lift(self, x, target: "CyclotomicField"):
        """Embed an element into Q(zeta_m) for a multiple m of n."""
        if target.n == self.n:
            return x
        if target.n % self.n:
            raise ValueError(f"cannot lift conductor {self.n} into {target.n}")
        step = target.n // self.n
        spread = [Fraction(0)] * (step * (self.degree - 1) + 1)
        for i, c in enumerate(x):
            spread[i * step] = c
        return target.reduce(spread)


def _strip(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _qpoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _strip(out)


def _qpoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def _qpoly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            c = c / lead
            q[k - db] = c
            for i, v in enumerate(b):
                a[k - db + i] -= c * v
    return _strip(q), _strip(a[:db])


# ---------------------------------------------------------------------------
# user-facing scalars


class CycloScalar:
    """An exact element of Q(zeta_N).

    Values are immutable.  Equality compares values, lifting to a common
    conductor when the two operands were built at different ones.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int = 1, coeffs=(0,)):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        field = CyclotomicField(conductor)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", field.reduce(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CycloScalar is immutable")

    def __reduce__(self):
        return (CycloScalar, (self.conductor, self.coeffs))

    @classmethod
    def _raw(cls, conductor: int, coeffs: tuple[Fraction, ...]) -> "CycloScalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "conductor", conductor)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    # constructors
    @classmethod
    def rational(cls, q: Rational) -> "CycloScalar":
        return cls._raw(1, (Fraction(q),))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloScalar":
        field = CyclotomicField(n)
        return cls._raw(n, field.zeta_power(k))

    @classmethod
    def coerce(cls, value) -> "CycloScalar":
        if isinstance(value, CycloScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value)
        raise TypeError(f"cannot interpret {value!r} as a cyclotomic scalar")

    @property
    def field(self) -> CyclotomicField:
        return CyclotomicField(self.conductor)

    def lift(self, m: int) -> "CycloScalar":
        """Representation of the same value at conductor m (a multiple of N)."""
        if m == self.conductor:
            return self
        return CycloScalar._raw(m, self.field.lift(self.coeffs, CyclotomicField(m)))

    def at_conductor(self, m: int) -> "CycloScalar | None":
        """Representation at conductor m, or None when the value is not in Q(zeta_m)."""
        if m % self.conductor == 0:
            return self.lift(m)
        common = lcm(m, self.conductor)
        target = self.lift(common).coeffs
        basis = [CyclotomicField(m).lift(CyclotomicField(m).zeta_power(k), CyclotomicField(common))
                 for k in range(euler_phi(m))]
        sol = _solve_rational(basis, target)
        if sol is None:
            return None
        return CycloScalar._raw(m, tuple(sol))

    def minimal_conductor(self) -> "CycloScalar":
        """Same value at the smallest conductor that contains it."""
        for d in divisors(self.conductor):
            if d % 4 == 2:
                continue
            rep = self.at_conductor(d)
            if rep is not None:
                return rep
        return self

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # arithmetic
    def _common(self, other) -> tuple[CyclotomicField, tuple, tuple]:
        other = CycloScalar.coerce(other)
        if other.conductor == self.conductor:
            return self.field, self.coeffs, other.coeffs
        m = lcm(self.conductor, other.conductor)
        return CyclotomicField(m), self.lift(m).coeffs, other.lift(m).coeffs

    def __add__(self, other):
        try:
            field, x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloScalar._raw(field.n, field.add(x, y))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            field, x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloScalar._raw(field.n, field.sub(x, y))

    def __rsub__(self, other):
        try:
            field, x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloScalar._raw(field.n, field.sub(y, x))

    def __neg__(self):
        return CycloScalar._raw(self.conductor, self.field.neg(self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloScalar._raw(self.conductor, self.field.scale(self.coeffs, other))
        try:
            field, x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloScalar._raw(field.n, field.mul(x, y))

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic scalar")
        return CycloScalar._raw(self.conductor, self.field.inv(self.coeffs))

    def __truediv__(self, other):
        try:
            other = CycloScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        try:
            other = CycloScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "CycloScalar":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycloScalar._raw(self.conductor, self.field.one)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloScalar):
            return NotImplemented
        if other.conductor == self.conductor:
            return self.coeffs == other.coeffs
        _, x, y = self._common(other)
        return x == y

    def __hash__(self) -> int:
        # normalized trace does not depend on the conductor used
        return hash(normalized_trace(self))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CycloScalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)


def normalized_trace(s: CycloScalar) -> Fraction:
    """Tr(s) / [Q(zeta_N):Q], which is independent of the ambient conductor."""
    n = s.conductor
    total = Fraction(0)
    for k, c in enumerate(s.coeffs):
        if c:
            m = n // gcd(k, n)
            total += c * Fraction(mobius(m), euler_phi(m))
    return total


def _solve_rational(columns: list[tuple], target: tuple) -> list[Fraction] | None:
    # least-squares-free exact solve of sum_k x_k * columns[k] = target
    rows = len(target)
    ncols = len(columns)
    mat = [[Fraction(columns[c][r]) for c in range(ncols)] + [Fraction(target[r])] for r in range(rows)]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, rows) if mat[r][col]), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        lead = mat[row][col]
        mat[row] = [v / lead for v in mat[row]]
        for r in range(rows):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    if any(mat[r][ncols] for r in range(row, rows)):
        return None
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        sol[col] = mat[r][ncols]
    return sol


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: CycloScalar) -> str:
    """Text form: rationals as p/q, other values as sums of c*zN^k, highest power first."""
    n = s.conductor
    parts: list[str] = []
    for k in range(len(s.coeffs) - 1, -1, -1):
        c = s.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (f"z{n}" if k == 1 else f"z{n}^{k}")
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) or "0"


# ---------------------------------------------------------------------------
# roots of unity


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_order^exponent, stored with gcd(exponent, order) = 1."""

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        e = self.exponent % self.order
        g = gcd(e, self.order)
        object.__setattr__(self, "order", self.order // g)
        object.__setattr__(self, "exponent", e // g)

    def to_scalar(self) -> CycloScalar:
        return CycloScalar.zeta(self.order, self.exponent)

    def as_fraction(self) -> Fraction:
        """The value as an element of Q/Z (exponent/order)."""
        return Fraction(self.exponent, self.order)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = lcm(self.order, other.order)
        return RootOfUnity(m, self.exponent * (m // self.order) + other.exponent * (m // other.order))

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exponent * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    def __str__(self) -> str:
        return f"z{self.order}^{self.exponent}"


def as_root_of_unity(s: CycloScalar) -> RootOfUnity | None:
    """Recognize s as a root of unity, returning it in lowest terms, or None."""
    s = CycloScalar.coerce(s)
    if s.is_zero():
        return None
    n = s.conductor
    field = s.field
    # every root of unity in Q(zeta_n) is +-zeta_n^k
    if s.is_rational():
        q = s.coeffs[0]
        if q == 1:
            return RootOfUnity(1, 0)
        if q == -1:
            return RootOfUnity(2, 1)
        return None
    power = field.one
    step = field.zeta_power(1)
    neg = field.neg(s.coeffs)
    for k in range(n):
        if power == s.coeffs:
            return RootOfUnity(n, k)
        if power == neg:
            return RootOfUnity(2 * n, n + 2 * k)
        power = field.mul(power, step)
    return None


def zeta(n: int, k: int = 1) -> CycloScalar:
    return CycloScalar.zeta(n, k)


ZERO = CycloScalar.rational(0)
ONE = CycloScalar.rational(1)
