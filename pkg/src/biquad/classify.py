"""Invariance certificates, automorphism enumeration and the order case analysis."""

from __future__ import annotations

import os
import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Union

from . import upoly
from .bipoly import CORNERS, BiPoly, DegreeTooSmall, corner_sum, proportional, pullback
from .scalars import CycloScalar, CyclotomicField, as_root_of_unity, lcm, prime_factors
from .smooth import FiberIsComponent, corner_report, genus
from .surfauto import (
    INFINITE,
    DiagonalAut,
    SurfaceAut,
    SwapNormalForm,
    as_diagonal,
    as_surface_aut,
    as_swap_diagonal,
    diagonalize,
    fixed_locus,
    inverse,
    mat_is_scalar,
    order,
    pgl2_order,
    power,
)

Aut = Union[SurfaceAut, DiagonalAut, SwapNormalForm]

ENV_MAX_CONDUCTOR = "BIQUAD_MAX_CONDUCTOR"


class BidegreeAsymmetric(ValueError):
    pass


class NonIntegralGenus(ArithmeticError):
    def __init__(self, message: str, repro: dict):
        super().__init__(message)
        self.repro = repro


class TheoremViolation(Exception):
    """A computed fact contradicts a proven bound; carries everything needed to replay it."""

    def __init__(self, reason: str, F: BiPoly, automorphism, details: dict | None = None):
        super().__init__(reason)
        self.reason = reason
        self.F = F
        self.automorphism = automorphism
        self.details = details or {}

    @property
    def replay(self) -> str:
        return "biquad classify --poly " + shlex.quote(str(self.F)) + " --aut " + shlex.quote(str(self.automorphism))

    def to_json(self) -> dict:
        return {
            "reason": self.reason,
            "polynomial": str(self.F),
            "bidegree": [self.F.a, self.F.b],
            "automorphism": str(self.automorphism),
            "details": self.details,
            "replay": self.replay,
        }


# ---------------------------------------------------------------------------
# invariance


@dataclass(frozen=True)
class InvarianceCertificate:
    automorphism: Aut
    scalar_t: CycloScalar
    order: int

    def to_json(self) -> dict:
        return {"automorphism": str(self.automorphism), "scalar_t": str(self.scalar_t), "order": self.order}


def invariance_scalar(F: BiPoly, g: Aut) -> CycloScalar | None:
    """t with pullback(F, g) = t F, or None."""
    if F.is_zero():
        raise ValueError("invariance of the zero polynomial is meaningless")
    return proportional(F, pullback(F, g))


def certify(F: BiPoly, g: Aut) -> InvarianceCertificate | None:
    t = invariance_scalar(F, g)
    if t is None:
        return None
    n = order(g)
    if n is INFINITE:
        raise ValueError(f"{g} preserves F but has infinite order")
    return InvarianceCertificate(g, t, n)


def default_max_conductor(a: int, b: int) -> int:
    env = os.environ.get(ENV_MAX_CONDUCTOR)
    if env:
        return int(env)
    return max(a * b, 1)


def _canonical_pairs(n: int):
    """(r1, r2) with lcm of the factor orders exactly n."""
    for r1 in range(n):
        o1 = n // gcd(r1, n)
        for r2 in range(n):
            if lcm(o1, n // gcd(r2, n)) == n:
                yield r1, r2


def enumerate_diagonal_auts(F: BiPoly, max_conductor: int | None = None) -> list[InvarianceCertificate]:
    """All nontrivial DiagonalAut of conductor <= max_conductor preserving F."""
    if F.is_zero():
        raise ValueError("zero polynomial")
    if max_conductor is None:
        max_conductor = default_max_conductor(F.a, F.b)
    pts = sorted(F.terms)
    i0, j0 = pts[0]
    diffs = [(i - i0, j - j0) for i, j in pts[1:]]
    out = []
    for n in range(2, max_conductor + 1):
        for r1, r2 in _canonical_pairs(n):
            if all((di * r1 + dj * r2) % n == 0 for di, dj in diffs):
                g = DiagonalAut(n, r1, r2)
                cert = certify(F, g)
                if cert is None:  # the congruence is sufficient for diagonal maps
                    raise AssertionError(f"support congruence holds but {g} does not preserve F")
                out.append(cert)
    return out


@dataclass(frozen=True)
class GroupStructure:
    order: int
    invariant_factors: tuple[int, ...]
    primary_factors: tuple[int, ...]
    generators: tuple[str, ...]
    closed: bool

    def describe(self) -> str:
        if self.order == 1:
            return "trivial"
        prod = " x ".join(f"Z/{d}" for d in self.primary_factors)
        return f"order {self.order}, {prod}"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "invariant_factors": list(self.invariant_factors),
            "primary_factors": list(self.primary_factors),
            "generators": list(self.generators),
            "closed": self.closed,
        }


def _as_pair(d: DiagonalAut) -> tuple[Fraction, Fraction]:
    return Fraction(d.r1, d.conductor), Fraction(d.r2, d.conductor)


def _prime_powers(n: int) -> list[int]:
    out = []
    for p in prime_factors(n):
        q = 1
        while n % (q * p) == 0:
            q *= p
        out.append(q)
    return out


def group_structure(certs: list[InvarianceCertificate]) -> GroupStructure:
    """Structure of the finite abelian group formed by diagonal certificates and the identity."""
    elems = {(Fraction(0), Fraction(0))}
    diag = [as_diagonal(c.automorphism) for c in certs]
    for d in diag:
        if d is None:
            raise ValueError("group_structure expects diagonal certificates")
        elems.add(_as_pair(d))
    closed = all(((x1 + y1) % 1, (x2 + y2) % 1) in elems for x1, x2 in elems for y1, y2 in elems)
    size = len(elems)
    exponent = 1
    for d in diag:
        exponent = lcm(exponent, d.order())
    factors = (exponent,) if size == exponent else (size // exponent, exponent)
    if size == 1:
        factors = ()
    primary = sorted(q for f in factors for q in _prime_powers(f))
    # a generator of maximal order, smallest (r2, r1); a second one completing the group
    key = lambda d: (d.r2 * exponent // d.conductor, d.r1 * exponent // d.conductor)  # noqa: E731
    top = sorted((d for d in diag if d.order() == exponent), key=key)
    gens: list[DiagonalAut] = []
    if top:
        gens.append(top[0])
        if len(factors) == 2:
            cyc = {(Fraction(k * top[0].r1, top[0].conductor) % 1, Fraction(k * top[0].r2, top[0].conductor) % 1) for k in range(exponent)}
            for d in sorted(diag, key=lambda d: (d.order(), key(d))):
                if d.order() == factors[0] and _as_pair(d) not in cyc:
                    span = {((x + k * Fraction(d.r1, d.conductor)) % 1, (y + k * Fraction(d.r2, d.conductor)) % 1) for x, y in cyc for k in range(factors[0])}
                    if len(span) == size:
                        gens.append(d)
                        break
    return GroupStructure(size, factors, tuple(primary), tuple(str(g) for g in gens), closed)


def _ratio_root(F: BiPoly, i: int, j: int) -> Fraction | None:
    """s_ij / s_ji as an element of Q/Z, or None when it is not a root of unity."""
    r = as_root_of_unity(F.coeff(i, j) / F.coeff(j, i))
    if r is None:
        return None
    return Fraction(r.exponent, r.order)


def enumerate_swap_auts(F: BiPoly, max_conductor: int | None = None) -> list[InvarianceCertificate]:
    """All sigma o ([D(lam,1)] x [D(mu,1)]) preserving F, lam and mu in mu_N for N <= max_conductor."""
    if F.a != F.b:
        raise BidegreeAsymmetric(f"swap automorphisms need a = b, got ({F.a},{F.b})")
    if F.is_zero():
        raise ValueError("zero polynomial")
    if max_conductor is None:
        max_conductor = default_max_conductor(F.a, F.b)
    terms = F.terms
    if any((j, i) not in terms for i, j in terms):
        return []
    pts = sorted(terms)
    i0, j0 = pts[0]
    c0 = _ratio_root(F, i0, j0)
    if c0 is None:
        return []
    conds = []
    for i, j in pts[1:]:
        c = _ratio_root(F, i, j)
        if c is None:
            return []
        conds.append((i0 - i, j0 - j, (c - c0) % 1))
    out = []
    for n in range(1, max_conductor + 1):
        if any((c * n).denominator != 1 for _, _, c in conds):
            continue
        checks = [(di, dj, int(c * n)) for di, dj, c in conds]
        for r1, r2 in _canonical_pairs(n):
            if all((di * r2 + dj * r1 - c) % n == 0 for di, dj, c in checks):
                g = SurfaceAut(
                    (CycloScalar.zeta(n, r1), CycloScalar.rational(0), CycloScalar.rational(0), CycloScalar.rational(1)),
                    (CycloScalar.zeta(n, r2), CycloScalar.rational(0), CycloScalar.rational(0), CycloScalar.rational(1)),
                    swap=True,
                )
                cert = certify(F, g)
                if cert is None:
                    raise AssertionError(f"ratio congruence holds but {g} does not preserve F")
                out.append(cert)
    return out


# ---------------------------------------------------------------------------
# the order menu


def order_menu(a: int, b: int) -> set[int]:
    if a < 3 or b < 3:
        raise DegreeTooSmall(f"the order bound needs a, b >= 3, got ({a},{b})")
    values = {6, a - 2, b - 2, 2 * (a - 1), 2 * (b - 1), (a - 1) * (b - 1) + 1, a * (b - 1), (a - 1) * b, a * b}
    values.discard(1)
    return values


def admissible_order(n: int, a: int, b: int) -> bool:
    return any(m % n == 0 for m in order_menu(a, b))


def check_order_bound(cert: InvarianceCertificate, a: int, b: int) -> bool:
    return admissible_order(cert.order, a, b)


# ---------------------------------------------------------------------------
# corner case classification


@dataclass(frozen=True)
class CaseClassification:
    corner_count: int
    case_id: str
    relations: tuple[str, ...]
    divisor: int
    order: int
    normalization: tuple[str, ...] = ()
    members: tuple[str, ...] = ()
    extras: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {
            "corner_count": self.corner_count,
            "members": list(self.members),
            "case_id": self.case_id,
            "relations": list(self.relations),
            "divisor": self.divisor,
            "order": self.order,
            "normalization": list(self.normalization),
        }
        out.update(self.extras)
        return out


# Coordinate changes act on (F, r1, r2) and permute the corners.
_X_FLIP = {"Q1": "Q3", "Q3": "Q1", "Q2": "Q4", "Q4": "Q2"}
_Y_FLIP = {"Q1": "Q2", "Q2": "Q1", "Q3": "Q4", "Q4": "Q3"}
_EXCHANGE = {"Q1": "Q1", "Q2": "Q3", "Q3": "Q2", "Q4": "Q4"}

_MOVES = {
    "exchange X0<->X1": (_X_FLIP, lambda F: F.flip_x(), lambda r1, r2: (-r1, r2)),
    "exchange Y0<->Y1": (_Y_FLIP, lambda F: F.flip_y(), lambda r1, r2: (r1, -r2)),
    "exchange the factors": (_EXCHANGE, lambda F: F.swap_factors(), lambda r1, r2: (r2, r1)),
}

_SEQUENCES = (
    (),
    ("exchange X0<->X1",),
    ("exchange Y0<->Y1",),
    ("exchange the factors",),
    ("exchange X0<->X1", "exchange Y0<->Y1"),
    ("exchange Y0<->Y1", "exchange the factors"),
    ("exchange X0<->X1", "exchange the factors"),
    ("exchange X0<->X1", "exchange Y0<->Y1", "exchange the factors"),
)

_TARGETS = {
    2: (frozenset({"Q3", "Q4"}), frozenset({"Q2", "Q3"})),
    3: (frozenset({"Q2", "Q3", "Q4"}),),
}


def _normalize(F: BiPoly, members: frozenset, r1: int, r2: int, targets):
    for seq in _SEQUENCES:
        G, m, s1, s2 = F, members, r1, r2
        for move in seq:
            perm, fmap, rmap = _MOVES[move]
            G = fmap(G)
            m = frozenset(perm[q] for q in m)
            s1, s2 = rmap(s1, s2)
        if m in targets:
            return G, m, s1, s2, seq
    raise AssertionError("no normalization reaches a target corner set")


class _Exp:
    """Exponent arithmetic for e_n = z^r1, e_m = z^r2 in mu_N."""

    def __init__(self, n: int, r1: int, r2: int):
        self.n, self.r1, self.r2 = n, r1 % n, r2 % n

    def is_one(self, kn: int, km: int) -> bool:
        """e_n^kn * e_m^km = 1."""
        return (kn * self.r1 + km * self.r2) % self.n == 0

    def is_minus_one(self, kn: int, km: int) -> bool:
        return 2 * ((kn * self.r1 + km * self.r2) % self.n) == self.n


def _pure_corner_support(a: int, b: int) -> frozenset:
    return frozenset({(a, b), (a, 0), (0, b), (0, 0)})


def _classify_diagonal(F: BiPoly, d: DiagonalAut, count: int, members: frozenset) -> tuple:
    """(case_id, relations, divisor, normalization, support_form or None) for a diagonal map with both factors nontrivial."""
    n, r1, r2 = d.conductor, d.r1, d.r2
    a, b = F.a, F.b
    if count == 0:
        e = _Exp(n, r1, r2)
        if e.is_one(a, 0) and e.is_one(0, b):
            return "P4-", ("e_n^a = 1", "e_m^b = 1"), lcm(a, b), (), _pure_corner_support(a, b)
        return None, (), 0, (), None
    if count == 4:
        e = _Exp(n, r1, r2)
        M = (a - 1) * (b - 1) + 1
        equal = e.is_one(1, -1)
        inverse_ = e.is_one(1, 1)
        if equal or inverse_:
            rel = "e_n = e_m" if equal else "e_n = e_m^-1"
            options = ((gcd(a, b - 2), "gcd(a, b-2)"), (gcd(a - 2, b), "gcd(a-2, b)"))
            dv, txt = next((o for o in options if o[0] % d.order() == 0), options[0])
            return "P16-i", (rel, f"divisor {txt}"), dv, (), None
        for i in range(2, b - 1):
            if e.is_one(i, -1) and e.is_one(a, 0) and e.is_one(0, b - 2):
                return "P16-ii", (f"e_m = e_n^{i}", "e_n^a = 1", "e_m^(b-2) = 1"), a, (), None
        for i in range(2, a - 1):
            if e.is_one(-1, i) and e.is_one(a - 2, 0) and e.is_one(0, b):
                return "P16-iii", (f"e_n = e_m^{i}", "e_n^(a-2) = 1", "e_m^b = 1"), b, (), None
        if e.is_one(-1, b - 1) and e.is_one(0, M):
            supp = frozenset({(a - 1, b), (a, 1), (0, b - 1), (1, 0)})
            return "P16-iv", ("e_m^(b-1) = e_n", "e_m^((a-1)(b-1)+1) = 1"), M, (), supp
        if e.is_one(a - 1, -1) and e.is_one(M, 0):
            supp = frozenset({(a, b - 1), (1, b), (a - 1, 0), (0, 1)})
            return "P16-v", ("e_n^(a-1) = e_m", "e_n^((a-1)(b-1)+1) = 1"), M, (), supp
        return None, (), 0, (), None
    G, m, s1, s2, seq = _normalize(F, members, r1, r2, _TARGETS[count])
    e = _Exp(n, s1, s2)
    a, b = G.a, G.b
    if count == 3:
        for dv, txt in ((gcd(a - 2, 2 * b - 1), "gcd(a-2, 2b-1)"), (gcd(2 * a - 1, b - 2), "gcd(2a-1, b-2)")):
            if e.is_one(dv, 0) and e.is_one(0, dv):
                return "P13-", (f"e_n^{txt} = 1", f"e_m^{txt} = 1"), dv, seq, None
        return None, (), 0, seq, None
    if m == frozenset({"Q3", "Q4"}):
        if e.is_one(a - 1, 0) and e.is_one(0, b):
            # e_n = e_m^l for a nonzero l at the ambient conductor
            l = next((k for k in range(1, n + 1) if e.is_one(-1, k)), None)
            if l is not None:
                return "P8.1-i", ("e_n^(a-1) = 1", "e_m^b = 1", f"e_n = e_m^{l}"), b, seq, None
        if e.is_minus_one(0, 1) and e.is_one(2 * a, 0):
            return "P8.1-ii", ("e_m = -1", "e_n^(2a) = 1"), 2 * a, seq, None
        return None, (), 0, seq, None
    # {Q2, Q3}
    pm = e.is_one(1, -1) or e.is_one(1, 1)
    if pm:
        rel = "e_n = e_m" if e.is_one(1, -1) else "e_n = e_m^-1"
        if e.is_one(a - 1, 0):
            return "P10-i", (rel, "e_n^(a-1) = 1"), a - 1, seq, None
        if e.is_one(b - 1, 0):
            return "P10-i", (rel, "e_n^(b-1) = 1"), b - 1, seq, None
        return None, (), 0, seq, None
    if e.is_one(1, b) and e.is_one(0, (a - 1) * b):
        supp = frozenset({(a, b), (a - 1, 0), (1, b), (0, 0)})
        return "P10-ii", ("e_n = e_m^-b", "e_m^((a-1)b) = 1"), (a - 1) * b, seq, supp
    if e.is_one(a, 1) and e.is_one(a * (b - 1), 0):
        supp = frozenset({(a, b), (0, b - 1), (a, 1), (0, 0)})
        return "P10-iii", ("e_m = e_n^-a", "e_n^(a(b-1)) = 1"), a * (b - 1), seq, supp
    return None, (), 0, seq, None


def _normal_form(F: BiPoly, g: Aut):
    """(F', normal) with F' preserved by the diagonal or swap-diagonal normal form of g."""
    d = as_diagonal(g) if not isinstance(g, SwapNormalForm) else None
    if d is not None:
        return F, d
    sd = as_swap_diagonal(g)
    if sd is not None:
        return F, as_surface_aut(g)
    k, normal = diagonalize(g, F.conductor)
    return pullback(F, inverse(k)), normal


def classify_corner_case(F: BiPoly, cert: InvarianceCertificate) -> CaseClassification:
    """Match the certificate against the corner-count case analysis and verify the order bound."""
    a, b = F.a, F.b
    g = cert.automorphism
    ordg = cert.order
    Fn, normal = _normal_form(F, g)
    report = corner_report(Fn)
    count = report.corner_count
    members = report.members
    mem_list = tuple(q for q in CORNERS if q in members)

    def violation(reason: str, **details):
        details.update(corner_count=count, members=list(mem_list), order=ordg)
        raise TheoremViolation(reason, F, g, details)

    if isinstance(normal, DiagonalAut):
        o1, o2 = normal.factor_orders()
        if o1 == 1 or o2 == 1:
            k = a if o2 == 1 else b
            rel = "e_m = 1" if o2 == 1 else "e_n = 1"
            if k % ordg:
                violation(f"order {ordg} of a one-factor map does not divide {k}")
            return CaseClassification(count, "L2", (rel,), k, ordg, (), mem_list)
        if count == 1:
            violation("exactly one of Q1..Q4 lies on the curve")
        case, rels, dv, seq, supp = _classify_diagonal(Fn, normal, count, members)
        if case is None:
            violation(f"no case branch matches for corner count {count}", normalization=list(seq))
        if dv % ordg:
            violation(f"{case}: order {ordg} does not divide {dv}", case_id=case)
        extras = {}
        if supp is not None:
            G = Fn
            for move in seq:
                G = _MOVES[move][1](G)
            actual = frozenset(corner_sum(G).terms)
            if actual != supp:
                violation(f"{case}: corner support {sorted(actual)} differs from {sorted(supp)}", case_id=case)
            extras["corner_support"] = [list(p) for p in sorted(supp, reverse=True)]
        return CaseClassification(count, case, rels, dv, ordg, seq, mem_list, extras)

    # swap-diagonal: sigma o ([D(lam,1)] x [D(mu,1)]), square [D(lam mu,1)] x [D(lam mu,1)]
    s = as_surface_aut(normal)
    lam, mu = as_swap_diagonal(s)
    prod = lam * mu
    if a != b:
        violation("swap automorphism on a curve with a != b")
    if prod.order == 1:
        if ordg != 2:
            violation(f"involutive swap reported with order {ordg}")
        return CaseClassification(count, "S-involution", ("f^2 = id",), 2, ordg, (), mem_list)
    if count == 1:
        violation("exactly one of Q1..Q4 lies on the curve")
    rel = f"f^2 = [D(z{prod.order}^{prod.exponent},1)] x [D(z{prod.order}^{prod.exponent},1)]"
    if count == 0:
        case, dv = "S-0", 2 * a
    elif count == 2:
        if members not in (frozenset({"Q1", "Q4"}), frozenset({"Q2", "Q3"})):
            violation("swap-invariant corner set expected")
        case, dv = "S-2", (4 if 4 % ordg == 0 else 2 * (a - 1))
    elif count == 3:
        case, dv = "S-3", 6
    else:
        case, dv = "S-4", 4
    if dv % ordg:
        violation(f"{case}: order {ordg} does not divide {dv}", case_id=case)
    return CaseClassification(count, case, (rel,), dv, ordg, (), mem_list)


# ---------------------------------------------------------------------------
# fixed points and quotients


def _evaluate(F: BiPoly, P, Q) -> CycloScalar:
    x0, x1 = P
    y0, y1 = Q
    total = CycloScalar.rational(0)
    for (i, j), c in F.terms.items():
        total = total + c * x0**i * x1 ** (F.a - i) * y0**j * y1 ** (F.b - j)
    return total


def _count_form_roots(coeffs: list[CycloScalar]) -> int:
    """Distinct projective roots of sum c_k u^k v^(d-k), d = len(coeffs) - 1."""
    if all(c.is_zero() for c in coeffs):
        raise FiberIsComponent("restricted form vanishes identically")
    n = 1
    for c in coeffs:
        n = lcm(n, c.conductor)
    K = CyclotomicField(n)
    p = upoly.trim(K, [c.lift(n).coeffs for c in coeffs])
    count = max(upoly.deg(upoly.squarefree_part(K, p)), 0)
    if coeffs[-1].is_zero():
        count += 1
    return count


def _fiber_count(F: BiPoly, axis: str, P) -> int:
    p0, p1 = P
    if axis == "first":
        coeffs = [sum((F.coeff(i, j) * p0**i * p1 ** (F.a - i) for i in range(F.a + 1)), CycloScalar.rational(0)) for j in range(F.b + 1)]
    else:
        coeffs = [sum((F.coeff(i, j) * p0**j * p1 ** (F.b - j) for j in range(F.b + 1)), CycloScalar.rational(0)) for i in range(F.a + 1)]
    return _count_form_roots(coeffs)


def _graph_count(F: BiPoly, A) -> int:
    """Distinct points of C on the graph {(x, A x)}."""
    n = F.conductor
    for c in A:
        n = lcm(n, c.conductor)
    K = CyclotomicField(n)
    lift = lambda c: c.lift(n).coeffs  # noqa: E731
    t_lin = [lift(A[1]), lift(A[0])]  # Y0 = A00 X0 + A01 X1, in u = X0/X1
    s_lin = [lift(A[3]), lift(A[2])]  # Y1 = A10 X0 + A11 X1
    total: list = []
    for (i, j), c in F.terms.items():
        term = [K.zero] * i + [lift(c)]
        for _ in range(j):
            term = upoly.mul(K, term, t_lin)
        for _ in range(F.b - j):
            term = upoly.mul(K, term, s_lin)
        total = upoly.add(K, total, term)
    coeffs = [CycloScalar._raw(n, c) for c in total]
    coeffs += [CycloScalar.rational(0)] * (F.a + F.b + 1 - len(coeffs))
    return _count_form_roots(coeffs)


def fixed_point_count(F: BiPoly, g: Aut) -> int:
    """Number of points of C = {F = 0} fixed by g."""
    locus = fixed_locus(g)
    if locus.kind in ("FourCorners", "SwapFinite"):
        return sum(1 for P, Q in locus.points if _evaluate(F, P, Q).is_zero())
    if locus.kind == "TwoFibers":
        return sum(_fiber_count(F, locus.axis, P) for P in locus.fiber_points)
    return _graph_count(F, locus.graph)


def _power(g: Aut, k: int):
    if isinstance(g, DiagonalAut):
        return g.power(k)
    return power(g, k)


@dataclass(frozen=True)
class QuotientReport:
    group_order: int
    genus: int
    fix_counts: dict
    stabilizer_sum: int
    quotient_genus: int

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "genus": self.genus,
            "fix_counts": {str(k): v for k, v in sorted(self.fix_counts.items())},
            "stabilizer_sum": self.stabilizer_sum,
            "quotient_genus": self.quotient_genus,
        }


def quotient_genus(F: BiPoly, cert: InvarianceCertificate) -> QuotientReport:
    """Genus of C / <f> from 2g - 2 = n(2g' - 2) + sum over nontrivial powers of |Fix(f^k) on C|."""
    n = cert.order
    g = genus(F.a, F.b)
    fixes = {k: fixed_point_count(F, _power(cert.automorphism, k)) for k in range(1, n)}
    S = sum(fixes.values())
    num = 2 * g - 2 - S
    repro = {"polynomial": str(F), "automorphism": str(cert.automorphism), "order": n, "stabilizer_sum": S}
    if num % (2 * n):
        raise NonIntegralGenus(f"(2g - 2 - {S}) is not divisible by {2 * n}", repro)
    gq = num // (2 * n) + 1
    if gq < 0:
        raise NonIntegralGenus(f"negative quotient genus {gq}", repro)
    return QuotientReport(n, g, fixes, S, gq)


def galois_criterion(F: BiPoly, cert: InvarianceCertificate) -> dict | None:
    """Smallest k with f^k = [D(lam,1)] x [I], lam of order a (quotient by p2), else the
    symmetric [I] x [D(mu,1)] with mu of order b (quotient by p1)."""
    n = cert.order
    powers = [as_surface_aut(_power(cert.automorphism, k)) for k in range(1, n + 1)]
    for k, h in enumerate(powers, 1):
        if not h.swap and mat_is_scalar(h.B) and not mat_is_scalar(h.A) and pgl2_order(h.A) == F.a:
            return {"projection": "second", "k": k}
    for k, h in enumerate(powers, 1):
        if not h.swap and mat_is_scalar(h.A) and not mat_is_scalar(h.B) and pgl2_order(h.B) == F.b:
            return {"projection": "first", "k": k}
    return None


def divides_multiple_of_max(order_: int, a: int, b: int) -> bool:
    """True when l * max(a, b) divides the order for some l >= 2."""
    m = max(a, b)
    return order_ % m == 0 and order_ // m >= 2
