"""The four maximal-order families (five equations) with their designated automorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .bipoly import BiPoly, DegreeTooSmall
from .classify import (
    InvarianceCertificate,
    NonIntegralGenus,
    TheoremViolation,
    classify_corner_case,
    galois_criterion,
    invariance_scalar,
    quotient_genus,
)
from .scalars import CycloScalar
from .smooth import is_smooth
from .surfauto import DiagonalAut, order

FAMILY_IDS = ("MaxAB", "MaxA1B", "MaxAB1", "PlusOneA", "PlusOneB")

CLI_NAMES = {
    "max-ab": "MaxAB",
    "max-a1b": "MaxA1B",
    "max-ab1": "MaxAB1",
    "plus-one-a": "PlusOneA",
    "plus-one-b": "PlusOneB",
}

TWO_PARAMS = ("PlusOneA", "PlusOneB")


class ParamZero(ValueError):
    pass


class NotCoprime(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    a: int
    b: int
    s: CycloScalar
    s2: CycloScalar | None = None

    def __post_init__(self):
        fid = CLI_NAMES.get(self.family_id, self.family_id)
        if fid not in FAMILY_IDS:
            raise ValueError(f"unknown family {self.family_id!r}")
        object.__setattr__(self, "family_id", fid)
        object.__setattr__(self, "s", CycloScalar.coerce(self.s))
        if fid in TWO_PARAMS:
            s2 = self.s if self.s2 is None else self.s2
            object.__setattr__(self, "s2", CycloScalar.coerce(s2))
        elif self.s2 is not None:
            raise ValueError(f"{fid} takes a single parameter")
        if self.a < 4 or self.b < 4:
            raise DegreeTooSmall(f"families need a, b >= 4, got ({self.a},{self.b})")
        if self.s.is_zero() or (self.s2 is not None and self.s2.is_zero()):
            raise ParamZero("family parameters must be nonzero")
        if fid == "MaxAB" and gcd(self.a, self.b) != 1:
            raise NotCoprime(f"MaxAB needs gcd(a,b) = 1, got ({self.a},{self.b})")

    def label(self) -> str:
        params = f"s={self.s}" + (f", s2={self.s2}" if self.s2 is not None else "")
        return f"{self.family_id}({self.a},{self.b}; {params})"


@dataclass(frozen=True)
class FamilyInstance:
    spec: FamilySpec
    F: BiPoly
    automorphism: DiagonalAut
    expected_order: int


def build_family(spec: FamilySpec) -> FamilyInstance:
    a, b, s, s2 = spec.a, spec.b, spec.s, spec.s2
    fid = spec.family_id
    M = (a - 1) * (b - 1) + 1
    if fid == "MaxAB":
        terms = {(a, b): 1, (a, 0): 1, (0, b): 1, (0, 0): s}
        n = a * b
        f, expected = DiagonalAut(n, b, a), a * b
    elif fid == "MaxA1B":
        terms = {(a, b): 1, (a - 1, 0): 1, (1, b): 1, (0, 0): s}
        n = (a - 1) * b
        f, expected = DiagonalAut(n, -b, 1), n
    elif fid == "MaxAB1":
        terms = {(a, b): 1, (0, b - 1): 1, (a, 1): 1, (0, 0): s}
        n = a * (b - 1)
        f, expected = DiagonalAut(n, 1, -a), n
    elif fid == "PlusOneA":
        terms = {(a - 1, b): 1, (a, 1): 1, (0, b - 1): s, (1, 0): s2}
        f, expected = DiagonalAut(M, b - 1, 1), M
    else:
        terms = {(a, b - 1): 1, (1, b): 1, (a - 1, 0): s, (0, 1): s2}
        f, expected = DiagonalAut(M, 1, a - 1), M
    return FamilyInstance(spec, BiPoly(a, b, terms), f, expected)


@dataclass
class ValidationReport:
    spec: FamilySpec
    polynomial: str
    smooth: bool
    witness: dict | None = None
    scalar_t: str | None = None
    order: int | None = None
    expected_order: int | None = None
    quotient_genus: int | None = None
    case: dict | None = None
    galois: dict | None = None
    failures: list = field(default_factory=list)
    degenerate: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "family": self.spec.family_id,
            "a": self.spec.a,
            "b": self.spec.b,
            "s": str(self.spec.s),
            "s2": None if self.spec.s2 is None else str(self.spec.s2),
            "polynomial": self.polynomial,
            "smooth": self.smooth,
            "witness": self.witness,
            "degenerate": self.degenerate,
            "scalar_t": self.scalar_t,
            "order": self.order,
            "expected_order": self.expected_order,
            "quotient_genus": self.quotient_genus,
            "case": self.case,
            "galois": self.galois,
            "failures": self.failures,
        }


def validate_family(spec: FamilySpec, *, classify: bool = True) -> ValidationReport:
    """Build the family member and check smoothness, invariance, order and the quotient genus.

    A singular member is reported as degenerate rather than failing.
    """
    inst = build_family(spec)
    F, f = inst.F, inst.automorphism
    verdict = is_smooth(F)
    rep = ValidationReport(spec, str(F), verdict.smooth, expected_order=inst.expected_order)
    if not verdict.smooth:
        rep.witness = verdict.witness.to_json()
        rep.degenerate = True
        return rep
    t = invariance_scalar(F, f)
    if t is None:
        rep.failures.append("designated automorphism does not preserve F")
        return rep
    rep.scalar_t = str(t)
    rep.order = order(f)
    if rep.order != inst.expected_order:
        rep.failures.append(f"order {rep.order} != expected {inst.expected_order}")
    cert = InvarianceCertificate(f, t, rep.order)
    try:
        q = quotient_genus(F, cert)
        rep.quotient_genus = q.quotient_genus
        if q.quotient_genus != 0:
            rep.failures.append(f"quotient genus {q.quotient_genus} != 0")
    except NonIntegralGenus as exc:
        rep.failures.append(f"NonIntegralGenus: {exc}")
    if classify:
        try:
            rep.case = classify_corner_case(F, cert).to_json()
        except TheoremViolation as exc:
            rep.failures.append(f"TheoremViolation: {exc.reason}")
        rep.galois = galois_criterion(F, cert)
    return rep
