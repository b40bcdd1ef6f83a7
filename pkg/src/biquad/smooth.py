"""Smoothness of curves in P^1 x P^1, corner membership, genus and fiber counts.

The decision procedure works chart by chart.  On an affine chart with
equation f(x, y), every singular point has its x-coordinate among the roots
of G = gcd(Res_y(f, f_x), Res_y(f, f_y)).  For the squarefree part p of G
the three specializations of f, f_x, f_y to K[x]/(p) either share a factor
in y (a singular point) or not.  When K[x]/(p) turns out not to be a field,
the zero divisor met along the way splits p and both halves are retried.

A fast path runs the same procedure over F_p for a prime p = 1 (mod N) with
zeta_N sent to a root of unity mod p.  A smooth reduction certifies a smooth
curve in characteristic 0; anything else falls back to exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import islice

from . import upoly
from .bipoly import CORNERS, BiPoly, DegreeTooSmall, corner_pairs, corner_polynomial, dehomogenize
from .fields import CycloReduction, PrimeField, QuotientRing, Split, primes_1_mod
from .scalars import CycloScalar, CyclotomicField, lcm

CHARTS = (11, 12, 21, 22)
ORDERS = ("x", "y")
MODULAR_PRIMES = 2

__all__ = [
    "CHARTS",
    "CornerReport",
    "DegreeTooSmall",
    "FiberIsComponent",
    "SingularWitness",
    "SmoothnessVerdict",
    "ZeroPolynomial",
    "corner_report",
    "fiber_points",
    "genus",
    "is_smooth",
]


class ZeroPolynomial(ValueError):
    pass


class FiberIsComponent(ValueError):
    pass


# ---------------------------------------------------------------------------
# corners


@dataclass(frozen=True)
class CornerReport:
    membership: dict
    corner_polys: dict

    @property
    def corner_count(self) -> int:
        return sum(self.membership.values())

    @property
    def members(self) -> frozenset:
        return frozenset(q for q, inside in self.membership.items() if inside)

    def to_json(self) -> dict:
        return {
            "membership": {q: self.membership[q] for q in CORNERS},
            "corner_count": self.corner_count,
            "corner_polys": {q: str(self.corner_polys[q]) for q in CORNERS},
        }


def corner_report(F: BiPoly) -> CornerReport:
    pairs = corner_pairs(F.a, F.b)
    membership = {q: F.coeff(*pairs[q][0]).is_zero() for q in CORNERS}
    polys = {q: corner_polynomial(F, q) for q in CORNERS}
    return CornerReport(membership, polys)


def genus(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise ValueError("bidegree entries must be positive")
    return (a - 1) * (b - 1)


# ---------------------------------------------------------------------------
# smoothness


@dataclass(frozen=True)
class SingularWitness:
    kind: str  # SingularPoint, NonReduced or Reducible
    chart: int | None = None
    order: str | None = None
    factor: str | None = None  # squarefree p(x) carrying the x-coordinate
    common: str | None = None  # common factor in y over K[x]/(p)
    detail: str = ""

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v not in (None, "")}

    def describe(self) -> str:
        parts = [self.kind]
        if self.chart is not None:
            parts.append(f"chart {self.chart} ({self.order}-first)")
        if self.factor is not None:
            parts.append(f"p = {self.factor}")
        if self.common is not None:
            parts.append(f"common factor {self.common}")
        if self.detail:
            parts.append(self.detail)
        return "; ".join(parts)


@dataclass(frozen=True)
class SmoothnessVerdict:
    smooth: bool
    witness: SingularWitness | None = None
    reducible: bool = False
    method: str = "exact"
    point_witness: SingularWitness | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.smooth and self.witness is None:
            raise ValueError("a singular verdict needs a witness")

    def __bool__(self) -> bool:
        return self.smooth

    def to_json(self) -> dict:
        out = {"smooth": self.smooth, "reducible": self.reducible, "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


@dataclass(frozen=True)
class _ChartResult:
    singular: bool
    chart: int
    order: str
    factor: list | None = None
    common: list | None = None
    detail: str = ""


def _chart_coefficients(F: BiPoly, chart: int, K, convert) -> dict:
    f = dehomogenize(F, chart)
    out = {}
    for key, c in f.terms.items():
        v = convert(c)
        if not K.is_zero(v):
            out[key] = v
    return out


def _as_y_poly(K, f: dict, order: str) -> list[list]:
    """f as a list indexed by the eliminated variable, entries polynomials in the kept one."""
    if not f:
        return []
    if order == "x":
        keep = lambda k: k[0]  # noqa: E731
        elim = lambda k: k[1]  # noqa: E731
    else:
        keep = lambda k: k[1]  # noqa: E731
        elim = lambda k: k[0]  # noqa: E731
    m = max(elim(k) for k in f)
    d = max(keep(k) for k in f)
    rows = [[K.zero] * (d + 1) for _ in range(m + 1)]
    for k, c in f.items():
        rows[elim(k)][keep(k)] = c
    return [upoly.trim(K, r) for r in rows]


def _d_elim(K, rows: list[list]) -> list[list]:
    return [upoly.scale(K, r, K.from_int(q)) for q, r in enumerate(rows)][1:]


def _d_keep(K, rows: list[list]) -> list[list]:
    return [upoly.derivative(K, r) for r in rows]


def _strip_rows(rows: list[list]) -> list[list]:
    rows = list(rows)
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _chart_singularity(K, f: dict, chart: int, order: str) -> _ChartResult:
    rows = _strip_rows(_as_y_poly(K, f, order))
    if not rows:
        raise ZeroPolynomial("chart polynomial vanishes")
    m = len(rows) - 1
    if m == 0:
        h = rows[0]
        if upoly.deg(h) <= 0:
            return _ChartResult(False, chart, order)
        g = upoly.gcd(K, h, upoly.derivative(K, h))
        if upoly.deg(g) >= 1:
            return _ChartResult(True, chart, order, g, None, "repeated fiber")
        return _ChartResult(False, chart, order)
    f_keep = _d_keep(K, rows)
    f_elim = _d_elim(K, rows)
    if isinstance(K, PrimeField):
        res = lambda f, g, mf, mg: upoly.resultant_by_evaluation(K, f, g, mf, mg)  # noqa: E731
    else:
        ring = upoly.PolyRing(K)
        res = lambda f, g, mf, mg: upoly.resultant(ring, f, g, mf, mg)  # noqa: E731
    r2 = res(rows, f_elim, m, m - 1)
    if not r2:
        return _ChartResult(True, chart, order, None, None, "repeated component")
    r1 = res(rows, f_keep, m, m)
    G = upoly.gcd(K, r1, r2)
    if upoly.deg(G) <= 0:
        return _ChartResult(False, chart, order)
    work = [upoly.squarefree_part(K, G)]
    while work:
        mod = work.pop()
        if upoly.deg(mod) <= 0:
            continue
        L = QuotientRing(K, mod)
        try:
            fb = upoly.trim(L, [L.reduce(c) for c in rows])
            fkb = upoly.trim(L, [L.reduce(c) for c in f_keep])
            feb = upoly.trim(L, [L.reduce(c) for c in f_elim])
            g = upoly.gcd(L, upoly.gcd(L, fb, fkb), feb)
        except Split as s:
            d = s.factor
            work.append(d)
            work.append(upoly.monic(K, upoly.exact_div(K, mod, d)))
            continue
        if not g or upoly.deg(g) >= 1:
            return _ChartResult(True, chart, order, mod, g)
    return _ChartResult(False, chart, order)


def _scan(F: BiPoly, K, convert, orders=ORDERS) -> _ChartResult | None:
    """First singular chart result, or None if every chart is smooth."""
    for chart in CHARTS:
        f = _chart_coefficients(F, chart, K, convert)
        for order in orders:
            res = _chart_singularity(K, f, chart, order)
            if res.singular:
                return res
    return None


def _modular_certificate(F: BiPoly, n: int) -> bool:
    """True when some reduction of F modulo a prime above p is smooth."""
    for p in islice(primes_1_mod(n), MODULAR_PRIMES):
        red = CycloReduction(n, p)
        try:
            reduced = {k: red(c) for k, c in F.terms.items()}
        except ZeroDivisionError:
            continue
        if not any(reduced.values()):
            continue
        K = PrimeField(p)
        try:
            # one elimination order already captures every singular x-coordinate
            if _scan(F, K, red, orders=("x",)) is None:
                return True
        except ZeroPolynomial:
            continue
    return False


def _format_poly(K, p: list, var: str) -> str:
    """Render a polynomial over Q(zeta_N) or over a quotient K[x]/(m)."""
    if not p:
        return "0"
    terms = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if K.is_zero(c):
            continue
        if isinstance(K, QuotientRing):
            coef = _format_poly(K.base, c, "x")
            simple = len([v for v in c if not K.base.is_zero(v)]) == 1 and upoly.deg(c) == 0
        else:
            coef = str(CycloScalar._raw(K.n, c))
            simple = CycloScalar._raw(K.n, c).is_rational()
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if not mono:
            terms.append(coef if simple else f"({coef})")
        elif coef == "1":
            terms.append(mono)
        else:
            terms.append(f"{coef}*{mono}" if simple else f"({coef})*{mono}")
    return " + ".join(terms)


def _smooth_reducible(F: BiPoly) -> bool:
    # a smooth curve with two components is a union of disjoint parallel fibers
    return (F.b == 0 and F.a >= 2) or (F.a == 0 and F.b >= 2)


def is_smooth(F: BiPoly, *, exact: bool = False, orders=ORDERS, classify_components: bool = True) -> SmoothnessVerdict:
    """Decide smoothness of the curve F = 0.

    exact=True skips the modular certificate.  classify_components controls
    whether a singular curve is factored to tell non-reduced and reducible
    curves apart from ones with an isolated singular point.
    """
    if F.is_zero():
        raise ZeroPolynomial("the zero polynomial does not define a curve")
    n = F.conductor
    if not exact and _modular_certificate(F, n):
        return SmoothnessVerdict(True, reducible=_smooth_reducible(F), method="modular")
    K = CyclotomicField(n)
    res = _scan(F, K, lambda c: c.lift(n).coeffs, orders)
    if res is None:
        return SmoothnessVerdict(True, reducible=_smooth_reducible(F), method="exact")
    var = "x" if res.order == "x" else "y"
    other = "y" if var == "x" else "x"
    point = SingularWitness(
        "SingularPoint",
        res.chart,
        res.order,
        None if res.factor is None else _format_poly(K, res.factor, var),
        None if res.common is None else _format_poly(QuotientRing(K, res.factor), res.common, other),
        res.detail,
    )
    kind, detail = ("SingularPoint", "")
    if classify_components:
        kind, detail = _component_kind(F)
    if kind == "SingularPoint":
        witness = point
    else:
        witness = SingularWitness(kind, point.chart, point.order, point.factor, point.common, detail)
    return SmoothnessVerdict(False, witness, reducible=(kind == "Reducible"), method="exact", point_witness=point)


# ---------------------------------------------------------------------------
# factorization of singular curves


def to_sympy(F: BiPoly):
    import sympy

    X0, X1, Y0, Y1 = sympy.symbols("X0 X1 Y0 Y1")
    n = F.conductor
    z = sympy.exp(2 * sympy.pi * sympy.I / n) if n > 2 else sympy.Integer(-1 if n == 2 else 1)
    expr = 0
    for (i, j), c in F.terms.items():
        c = c.lift(n)
        coeff = sum(sympy.Rational(q.numerator, q.denominator) * z**k for k, q in enumerate(c.coeffs) if q)
        expr += coeff * X0**i * X1 ** (F.a - i) * Y0**j * Y1 ** (F.b - j)
    return expr, (X0, X1, Y0, Y1), z, n


def _component_kind(F: BiPoly) -> tuple[str, str]:
    """Classify a singular curve as NonReduced, Reducible or SingularPoint via exact factorization."""
    try:
        import sympy

        expr, gens, z, n = to_sympy(F)
        if n > 2:
            _, factors = sympy.factor_list(sympy.expand(expr), *gens, extension=z)
        else:
            _, factors = sympy.factor_list(sympy.expand(expr), *gens)
    except Exception as exc:  # factorization is advisory; the singular verdict stands
        return "SingularPoint", f"factorization unavailable: {type(exc).__name__}"
    factors = [(f, e) for f, e in factors if f.free_symbols & set(gens)]
    if any(e >= 2 for _, e in factors):
        return "NonReduced", "repeated factor: " + ", ".join(f"({f})^{e}" for f, e in factors if e >= 2)
    if len(factors) >= 2:
        return "Reducible", " * ".join(f"({f})" for f, _ in factors)
    return "SingularPoint", ""


# ---------------------------------------------------------------------------
# fibers


def fiber_form(F: BiPoly, axis: str, which: str) -> list[CycloScalar]:
    """Coefficients (constant first, in the affine coordinate of the other factor) of F on a fiber."""
    if axis not in ("first", "second") or which not in ("zero", "infinity"):
        raise ValueError("axis must be first|second and which zero|infinity")
    if axis == "first":
        i = 0 if which == "zero" else F.a
        return [F.coeff(i, j) for j in range(F.b + 1)]
    j = 0 if which == "zero" else F.b
    return [F.coeff(i, j) for i in range(F.a + 1)]


def fiber_points(F: BiPoly, axis: str, which: str) -> int:
    if F.is_zero():
        raise ZeroPolynomial("the zero polynomial does not define a curve")
    coeffs = fiber_form(F, axis, which)
    if all(c.is_zero() for c in coeffs):
        raise FiberIsComponent(f"the {axis}-factor fiber at {which} lies on the curve")
    n = reduce(lcm, (c.conductor for c in coeffs), 1)
    K = CyclotomicField(n)
    p = upoly.trim(K, [c.lift(n).coeffs for c in coeffs])
    count = max(upoly.deg(upoly.squarefree_part(K, p)), 0)
    if coeffs[-1].is_zero():
        count += 1
    return count
