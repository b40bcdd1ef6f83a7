"""Sparse bihomogeneous polynomials on P^1 x P^1.

A term (i, j) -> s stands for s * X0^i X1^(a-i) Y0^j Y1^(b-j), so the key
is the pair of exponents of X0 and Y0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping

from .scalars import ONE, ZERO, CycloScalar, CyclotomicField, lcm, zeta
from .surfauto import DiagonalAut, Matrix, SurfaceAut, as_surface_aut

CORNERS = ("Q1", "Q2", "Q3", "Q4")


class DegreeTooSmall(ValueError):
    pass


class BiPoly:
    __slots__ = ("a", "b", "_terms")

    def __init__(self, a: int, b: int, terms: Mapping[tuple[int, int], object] | Iterable = ()):
        if a < 0 or b < 0:
            raise ValueError("bidegree must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, int], CycloScalar] = {}
        for (i, j), c in items:
            if not (0 <= i <= a and 0 <= j <= b):
                raise ValueError(f"exponent ({i},{j}) outside bidegree ({a},{b})")
            c = CycloScalar.coerce(c)
            prev = clean.get((i, j))
            c = c if prev is None else prev + c
            clean[(i, j)] = c
        clean = {k: v for k, v in clean.items() if not v.is_zero()}
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "_terms", clean)

    @classmethod
    def _raw(cls, a: int, b: int, terms: dict) -> "BiPoly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "_terms", {k: v for k, v in terms.items() if not v.is_zero()})
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    def __reduce__(self):
        return (BiPoly, (self.a, self.b, dict(self._terms)))

    @classmethod
    def zero(cls, a: int, b: int) -> "BiPoly":
        return cls._raw(a, b, {})

    @classmethod
    def monomial(cls, a: int, b: int, i: int, j: int, coeff=1) -> "BiPoly":
        return cls(a, b, {(i, j): coeff})

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def terms(self) -> Mapping[tuple[int, int], CycloScalar]:
        return MappingProxyType(self._terms)

    def coeff(self, i: int, j: int) -> CycloScalar:
        return self._terms.get((i, j), ZERO)

    def __getitem__(self, key: tuple[int, int]) -> CycloScalar:
        return self.coeff(*key)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def conductor(self) -> int:
        n = 1
        for c in self._terms.values():
            n = lcm(n, c.conductor)
        return n

    def support(self) -> "SupportSet":
        return SupportSet(self.a, self.b, frozenset(self._terms))

    def sorted_terms(self) -> list[tuple[tuple[int, int], CycloScalar]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    # arithmetic
    def _check(self, other: "BiPoly") -> None:
        if self.bidegree != other.bidegree:
            raise ValueError(f"bidegree mismatch {self.bidegree} vs {other.bidegree}")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        if not isinstance(other, BiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out[k] + v if k in out else v
        return BiPoly._raw(self.a, self.b, out)

    def __neg__(self) -> "BiPoly":
        return BiPoly._raw(self.a, self.b, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, t) -> "BiPoly":
        t = CycloScalar.coerce(t)
        return BiPoly._raw(self.a, self.b, {k: v * t for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            out: dict[tuple[int, int], CycloScalar] = {}
            for (i, j), c in self._terms.items():
                for (k, l), d in other._terms.items():
                    key = (i + k, j + l)
                    out[key] = out[key] + c * d if key in out else c * d
            return BiPoly._raw(self.a + other.a, self.b + other.b, out)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.bidegree == other.bidegree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.a, self.b, frozenset(self._terms.items())))

    def __str__(self) -> str:
        return format_bipoly(self)

    def __repr__(self) -> str:
        return f"BiPoly({self.a}, {self.b}, {str(self)!r})"

    # coordinate changes used by the classifier
    def flip_x(self) -> "BiPoly":
        """Exchange X0 and X1."""
        return BiPoly._raw(self.a, self.b, {(self.a - i, j): c for (i, j), c in self._terms.items()})

    def flip_y(self) -> "BiPoly":
        """Exchange Y0 and Y1."""
        return BiPoly._raw(self.a, self.b, {(i, self.b - j): c for (i, j), c in self._terms.items()})

    def swap_factors(self) -> "BiPoly":
        """Exchange the roles of (X0, X1) and (Y0, Y1)."""
        return BiPoly._raw(self.b, self.a, {(j, i): c for (i, j), c in self._terms.items()})


def monomial_text(a: int, b: int, i: int, j: int) -> str:
    parts = []
    for name, e in (("X0", i), ("X1", a - i), ("Y0", j), ("Y1", b - j)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def format_bipoly(F: BiPoly) -> str:
    """Canonical text: terms by (i, j) descending, unit exponents and coefficients elided."""
    from .scalars import format_rational

    pieces: list[str] = []
    for (i, j), c in F.sorted_terms():
        mono = monomial_text(F.a, F.b, i, j)
        if c.is_rational():
            q = c.to_fraction()
            neg = q < 0
            mag = abs(q)
            if mono == "1":
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
        else:
            neg = False
            body = f"({c})" if mono == "1" else f"({c})*{mono}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces) or "0"


@dataclass(frozen=True)
class SupportSet:
    a: int
    b: int
    points: frozenset

    def __post_init__(self):
        for i, j in self.points:
            if not (0 <= i <= self.a and 0 <= j <= self.b):
                raise ValueError(f"({i},{j}) outside [0,{self.a}]x[0,{self.b}]")

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, item) -> bool:
        return item in self.points

    def __iter__(self):
        return iter(sorted(self.points, reverse=True))

    def __eq__(self, other) -> bool:
        if isinstance(other, SupportSet):
            return (self.a, self.b, self.points) == (other.a, other.b, other.points)
        if isinstance(other, (set, frozenset)):
            return self.points == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.points))


def support(F: BiPoly) -> SupportSet:
    return F.support()


def corner_pairs(a: int, b: int) -> dict[str, tuple[tuple[int, int], ...]]:
    """Exponent pairs of the three terms of each corner polynomial; the first is the pure corner."""
    if a < 2 or b < 2:
        raise DegreeTooSmall(f"corner polynomials need a, b >= 2, got ({a},{b})")
    return {
        "Q1": ((a, b), (a - 1, b), (a, b - 1)),
        "Q2": ((a, 0), (a - 1, 0), (a, 1)),
        "Q3": ((0, b), (1, b), (0, b - 1)),
        "Q4": ((0, 0), (1, 0), (0, 1)),
    }


def corner_sets(a: int, b: int) -> tuple[SupportSet, SupportSet]:
    pairs = corner_pairs(a, b)
    e = frozenset(p for trio in pairs.values() for p in trio)
    everything = frozenset((i, j) for i in range(a + 1) for j in range(b + 1))
    return SupportSet(a, b, e), SupportSet(a, b, everything - e)


def corner_polynomial(F: BiPoly, corner: str) -> BiPoly:
    pairs = corner_pairs(F.a, F.b)[corner]
    return BiPoly._raw(F.a, F.b, {p: F.coeff(*p) for p in pairs})


def corner_sum(F: BiPoly) -> BiPoly:
    """Sum of the four corner polynomials, i.e. F restricted to the corner set."""
    e, _ = corner_sets(F.a, F.b)
    return BiPoly._raw(F.a, F.b, {k: v for k, v in F.terms.items() if k in e.points})


def interior_part(F: BiPoly) -> BiPoly:
    _, inner = corner_sets(F.a, F.b)
    return BiPoly._raw(F.a, F.b, {k: v for k, v in F.terms.items() if k in inner.points})


# ---------------------------------------------------------------------------
# pullback


def _linear_form_powers(row0: tuple, row1: tuple, deg: int, field: CyclotomicField):
    """Coefficient lists (indexed by power of the first variable) of
    (r00 U0 + r01 U1)^i (r10 U0 + r11 U1)^(deg-i) for i = 0..deg."""

    def form_pow(c0, c1, k):
        out = [field.zero] * (k + 1)
        for e in range(k + 1):
            v = field.scale(field.mul(_fpow(field, c0, e), _fpow(field, c1, k - e)), comb(k, e))
            out[e] = v
        return out

    p_pows = [form_pow(row0[0], row0[1], i) for i in range(deg + 1)]
    q_pows = [form_pow(row1[0], row1[1], k) for k in range(deg + 1)]
    result = []
    for i in range(deg + 1):
        p, q = p_pows[i], q_pows[deg - i]
        prod = [field.zero] * (deg + 1)
        for e1, c1 in enumerate(p):
            if field.is_zero(c1):
                continue
            for e2, c2 in enumerate(q):
                if not field.is_zero(c2):
                    prod[e1 + e2] = field.add(prod[e1 + e2], field.mul(c1, c2))
        result.append(prod)
    return result


def _fpow(field: CyclotomicField, x, k: int):
    out = field.one
    for _ in range(k):
        out = field.mul(out, x)
    return out


def pullback(F: BiPoly, g) -> BiPoly:
    """g^* F = F o g, computed by substituting the matrices of g.

    A SurfaceAut carries projectively normalized matrices, so the result is
    only defined up to a nonzero scalar.  A DiagonalAut is substituted with
    its literal matrices D(z^r1, 1) and D(z^r2, 1).
    """
    if isinstance(g, DiagonalAut):
        n = lcm(F.conductor, g.conductor)
        A = (zeta(g.conductor, g.r1), ZERO, ZERO, ONE)
        B = (zeta(g.conductor, g.r2), ZERO, ZERO, ONE)
        swap = False
    else:
        g = as_surface_aut(g)
        n = lcm(F.conductor, g.conductor)
        A, B, swap = g.A, g.B, g.swap
    field = CyclotomicField(n)

    def lifted(m: Matrix):
        return tuple(c.lift(n).coeffs for c in m)

    A, B = lifted(A), lifted(B)
    # X-slot of F receives A.X (or B.Y when swapped), Y-slot receives B.Y (or A.X)
    x_mat, y_mat = (B, A) if swap else (A, B)
    x_forms = _linear_form_powers((x_mat[0], x_mat[1]), (x_mat[2], x_mat[3]), F.a, field)
    y_forms = _linear_form_powers((y_mat[0], y_mat[1]), (y_mat[2], y_mat[3]), F.b, field)
    acc: dict[tuple[int, int], tuple] = {}
    for (i, j), c in F.terms.items():
        cc = c.lift(n).coeffs
        xf, yf = x_forms[i], y_forms[j]
        for p, xc in enumerate(xf):
            if field.is_zero(xc):
                continue
            xcc = field.mul(cc, xc)
            for q, yc in enumerate(yf):
                if field.is_zero(yc):
                    continue
                key = (q, p) if swap else (p, q)
                v = field.mul(xcc, yc)
                acc[key] = field.add(acc[key], v) if key in acc else v
    a, b = (F.b, F.a) if swap else (F.a, F.b)
    return BiPoly._raw(a, b, {k: CycloScalar._raw(n, v) for k, v in acc.items()})


def proportional(F: BiPoly, G: BiPoly):
    """Return t with G = t*F, or None."""
    if F.bidegree != G.bidegree or F.support() != G.support():
        return None
    if F.is_zero():
        return ONE
    items = F.sorted_terms()
    key0, c0 = items[0]
    t = G.coeff(*key0) / c0
    for key, c in items[1:]:
        if G.coeff(*key) != c * t:
            return None
    return t


def pullback_by_weights(F: BiPoly, d: DiagonalAut) -> BiPoly:
    """Pullback by [D(z^r1,1)] x [D(z^r2,1)]: scale term (i,j) by z^(i r1 + j r2)."""
    n = d.conductor
    return BiPoly._raw(F.a, F.b, {(i, j): c * zeta(n, i * d.r1 + j * d.r2) for (i, j), c in F.terms.items()})


# ---------------------------------------------------------------------------
# affine charts


class AffinePoly:
    """Polynomial in x, y with cyclotomic coefficients: {(deg_x, deg_y): coeff}."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, int], CycloScalar] = {}
        for key, c in items:
            c = CycloScalar.coerce(c)
            clean[key] = clean[key] + c if key in clean else c
        object.__setattr__(self, "_terms", {k: v for k, v in clean.items() if not v.is_zero()})

    def __setattr__(self, name, value):
        raise AttributeError("AffinePoly is immutable")

    @property
    def terms(self) -> Mapping[tuple[int, int], CycloScalar]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffinePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    @property
    def conductor(self) -> int:
        n = 1
        for c in self._terms.values():
            n = lcm(n, c.conductor)
        return n

    def degree(self, var: str) -> int:
        idx = 0 if var == "x" else 1
        return max((k[idx] for k in self._terms), default=-1)

    def __call__(self, x, y) -> CycloScalar:
        total = ZERO
        for (p, q), c in self._terms.items():
            total = total + c * CycloScalar.coerce(x) ** p * CycloScalar.coerce(y) ** q
        return total

    def __str__(self) -> str:
        from .scalars import format_rational

        pieces = []
        for (p, q), c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                part for part in (
                    "" if p == 0 else ("x" if p == 1 else f"x^{p}"),
                    "" if q == 0 else ("y" if q == 1 else f"y^{q}"),
                ) if part
            ) or "1"
            if c.is_rational():
                v = c.to_fraction()
                neg, mag = v < 0, abs(v)
                body = format_rational(mag) if mono == "1" else (mono if mag == 1 else f"{format_rational(mag)}*{mono}")
            else:
                neg = False
                body = f"({c})" if mono == "1" else f"({c})*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces) or "0"

    __repr__ = __str__


def dehomogenize(F: BiPoly, chart: int | str) -> AffinePoly:
    """Restrict F to an affine chart.

    Chart 11: X0 = Y0 = 1, x = X1/X0, y = Y1/Y0.  Chart 12: X0 = Y1 = 1,
    x = X1/X0, y = Y0/Y1.  Chart 21: X1 = Y0 = 1, x = X0/X1, y = Y1/Y0.
    Chart 22: X1 = Y1 = 1, x = X0/X1, y = Y0/Y1.
    """
    chart = int(chart)
    a, b = F.a, F.b
    if chart == 11:
        key = lambda i, j: (a - i, b - j)  # noqa: E731
    elif chart == 12:
        key = lambda i, j: (a - i, j)  # noqa: E731
    elif chart == 21:
        key = lambda i, j: (i, b - j)  # noqa: E731
    elif chart == 22:
        key = lambda i, j: (i, j)  # noqa: E731
    else:
        raise ValueError(f"unknown chart {chart}")
    return AffinePoly({key(i, j): c for (i, j), c in F.terms.items()})


def partial_derivative(f: AffinePoly, var: str) -> AffinePoly:
    if var not in ("x", "y"):
        raise ValueError("var must be 'x' or 'y'")
    out = {}
    for (p, q), c in f.terms.items():
        e = p if var == "x" else q
        if e:
            key = (p - 1, q) if var == "x" else (p, q - 1)
            out[key] = c * e
    return AffinePoly(out)
