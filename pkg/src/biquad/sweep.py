"""Randomized consistency sweep over case-shaped smooth curves and the canonical families."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .bipoly import CORNERS, BiPoly, corner_pairs, corner_sum, pullback, pullback_by_weights
from .classify import (
    NonIntegralGenus,
    TheoremViolation,
    certify,
    check_order_bound,
    classify_corner_case,
    divides_multiple_of_max,
    enumerate_diagonal_auts,
    enumerate_swap_auts,
    galois_criterion,
    group_structure,
    quotient_genus,
)
from .families import FAMILY_IDS, TWO_PARAMS, FamilySpec, build_family, validate_family
from .scalars import divisors, lcm
from .smooth import corner_report, is_smooth
from .surfauto import DiagonalAut, as_diagonal

COEFFS = (1, -1, 2, -2, 3, -3, Fraction(1, 2), Fraction(-1, 2), Fraction(2, 3), 5)
MAX_ATTEMPTS = 40

# family member parameters used by the sweep; s = s2 is avoided since it factors the PlusOne forms
FAMILY_PARAMS = (2, 3)

# corner counts expected on the canonical families
FAMILY_CORNERS = {"MaxAB": 0, "MaxA1B": 2, "MaxAB1": 2, "PlusOneA": 4, "PlusOneB": 4}

CHECKS = (
    "order_bound",
    "corner_count_not_one",
    "galois_quotient",
    "fixed_multiple_quotient",
    "rh_integrality",
    "classification",
    "corner_polys_nonzero",
    "group_closure",
    "weight_oracle",
    "family",
    "family_support",
)


@dataclass
class SweepReport:
    checks: dict = field(default_factory=lambda: {c: {"passed": 0, "failed": 0} for c in CHECKS})
    curves: list = field(default_factory=list)
    families: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    def record(self, check: str, ok: bool, detail: dict | None = None) -> None:
        self.checks[check]["passed" if ok else "failed"] += 1
        if not ok:
            entry = {"check": check}
            entry.update(detail or {})
            self.violations.append(entry)

    def ok(self, *checks: str) -> bool:
        names = checks or CHECKS
        return all(self.checks[c]["failed"] == 0 for c in names)

    def to_json(self) -> dict:
        return {
            "checks": self.checks,
            "curves": self.curves,
            "families": self.families,
            "skipped": self.skipped,
        }


def _canonical_conductor(n: int, r1: int, r2: int) -> bool:
    return lcm(n // gcd(r1, n), n // gcd(r2, n)) == n


def _conductor_candidates(a: int, b: int) -> list[int]:
    base = {a * b, (a - 1) * b, a * (b - 1), (a - 1) * (b - 1) + 1, 2 * a, 2 * b, a, b, a - 1, b - 1, 4, 6}
    return sorted({d for m in base if m >= 2 for d in divisors(m) if d >= 2})


def random_case_curve(a: int, b: int, rng: random.Random, symmetric: bool = False):
    """A random polynomial invariant under a random diagonal map.

    The conductor is a divisor of one of the extremal orders, and the weight class is
    chosen to realize a randomly drawn corner count when possible.  Returns (F, pattern)
    or None when the class is empty.
    """
    n = rng.choice(_conductor_candidates(a, b))
    both = rng.random() < 0.75
    while True:
        r1 = rng.randrange(n)
        r2 = r1 if symmetric else rng.randrange(n)
        if _canonical_conductor(n, r1, r2) and (not both or (r1 and r2)):
            break
    weight = lambda p: (p[0] * r1 + p[1] * r2) % n  # noqa: E731
    pure = {q: trio[0] for q, trio in corner_pairs(a, b).items()}
    by_count: dict[int, list[int]] = {}
    for c in range(n):
        members = [q for q in CORNERS if weight(pure[q]) != c]
        by_count.setdefault(len(members), []).append(c)
    target = rng.choice((0, 2, 3, 4))
    c = rng.choice(by_count.get(target) or by_count[rng.choice(sorted(by_count))])
    members = [q for q in CORNERS if weight(pure[q]) != c]
    points = [(i, j) for i in range(a + 1) for j in range(b + 1) if weight((i, j)) == c]
    if not points:
        return None
    terms = {}
    for i, j in points:
        if symmetric and (j, i) in terms:
            terms[(i, j)] = terms[(j, i)]
        else:
            terms[(i, j)] = rng.choice(COEFFS)
    F = BiPoly(a, b, terms)
    pattern = {"corner_count": len(members), "members": members, "seed_aut": str(DiagonalAut(n, r1, r2))}
    return F, pattern


def _check_certificate(F: BiPoly, cert, report: SweepReport, summary: dict) -> None:
    a, b = F.a, F.b
    ctx = {"polynomial": str(F), "automorphism": str(cert.automorphism), "order": cert.order}
    report.record("order_bound", check_order_bound(cert, a, b), ctx)
    d = as_diagonal(cert.automorphism)
    count = corner_report(F).corner_count
    if d is not None and min(d.factor_orders()) > 1:
        report.record("corner_count_not_one", count != 1, dict(ctx, corner_count=count))
    try:
        case = classify_corner_case(F, cert)
        report.record("classification", True)
        summary.setdefault("cases", []).append(case.case_id)
    except TheoremViolation as exc:
        report.record("classification", False, exc.to_json())
    try:
        q = quotient_genus(F, cert)
        report.record("rh_integrality", True)
    except NonIntegralGenus as exc:
        report.record("rh_integrality", False, dict(ctx, reason=str(exc), repro=exc.repro))
        return
    gal = galois_criterion(F, cert)
    if gal is not None:
        report.record("galois_quotient", q.quotient_genus == 0, dict(ctx, galois=gal, quotient_genus=q.quotient_genus))
    if divides_multiple_of_max(cert.order, a, b) and q.fix_counts.get(1, 0) > 0:
        report.record("fixed_multiple_quotient", q.quotient_genus == 0, dict(ctx, quotient_genus=q.quotient_genus))
    if d is not None:
        report.record("weight_oracle", pullback(F, d) == pullback_by_weights(F, d), ctx)


def check_curve(F: BiPoly, report: SweepReport, pattern: dict | None = None, max_conductor: int | None = None) -> dict:
    """Run every per-curve check on a smooth F; returns a summary entry."""
    a, b = F.a, F.b
    max_conductor = max_conductor or a * b
    summary = {"polynomial": str(F), "bidegree": [a, b]}
    if pattern:
        summary["pattern"] = pattern
    rep = corner_report(F)
    report.record("corner_polys_nonzero", all(not p.is_zero() for p in rep.corner_polys.values()), {"polynomial": str(F)})
    summary["corner_count"] = rep.corner_count
    certs = enumerate_diagonal_auts(F, max_conductor)
    gs = group_structure(certs)
    # closure can only fail when the group has elements of order above the bound
    report.record("group_closure", gs.closed or any(f > max_conductor for f in gs.invariant_factors), {"polynomial": str(F)})
    summary["diagonal_group"] = gs.to_json()
    swaps = enumerate_swap_auts(F, max_conductor) if a == b else []
    summary["swap_certificates"] = len(swaps)
    for cert in certs + swaps:
        _check_certificate(F, cert, report, summary)
    summary["orders"] = sorted({c.order for c in certs + swaps})
    if "cases" in summary:
        summary["cases"] = sorted(set(summary["cases"]))
    return summary


def check_family(spec: FamilySpec, report: SweepReport) -> dict:
    rep = validate_family(spec)
    entry = rep.to_json()
    ctx = {"family": spec.label()}
    if rep.degenerate:
        report.record("family", False, dict(ctx, reason="singular member", witness=rep.witness))
        return entry
    ok = rep.ok and rep.order == rep.expected_order and rep.quotient_genus == 0
    ok = ok and rep.case is not None and rep.case["corner_count"] == FAMILY_CORNERS[spec.family_id]
    report.record("family", ok, dict(ctx, failures=rep.failures))
    inst = build_family(spec)
    report.record("family_support", family_support_matches(inst.F, spec.family_id), ctx)
    cert = certify(inst.F, inst.automorphism)
    if cert is not None:
        _check_certificate(inst.F, cert, report, {})
    return entry


def expected_corner_support(family_id: str, a: int, b: int) -> frozenset:
    return {
        "MaxAB": frozenset({(a, b), (a, 0), (0, b), (0, 0)}),
        "MaxA1B": frozenset({(a, b), (a - 1, 0), (1, b), (0, 0)}),
        "MaxAB1": frozenset({(a, b), (0, b - 1), (a, 1), (0, 0)}),
        "PlusOneA": frozenset({(a - 1, b), (a, 1), (0, b - 1), (1, 0)}),
        "PlusOneB": frozenset({(a, b - 1), (1, b), (a - 1, 0), (0, 1)}),
    }[family_id]


def family_support_matches(F: BiPoly, family_id: str) -> bool:
    return frozenset(corner_sum(F).terms) == expected_corner_support(family_id, F.a, F.b)


def run_sweep(a_range: tuple[int, int], b_range: tuple[int, int], trials: int, seed: int, families: bool = True) -> SweepReport:
    report = SweepReport()
    for a in range(a_range[0], a_range[1] + 1):
        for b in range(b_range[0], b_range[1] + 1):
            rng = random.Random(f"{seed}:{a}:{b}")
            for t in range(trials):
                symmetric = a == b and t % 3 == 2
                found = None
                for _ in range(MAX_ATTEMPTS):
                    drawn = random_case_curve(a, b, rng, symmetric)
                    if drawn is None:
                        continue
                    F, pattern = drawn
                    if is_smooth(F, classify_components=False).smooth:
                        found = (F, pattern)
                        break
                if found is None:
                    report.skipped.append({"bidegree": [a, b], "trial": t, "note": f"no smooth curve in {MAX_ATTEMPTS} attempts"})
                    continue
                F, pattern = found
                entry = check_curve(F, report, pattern)
                entry["trial"] = t
                report.curves.append(entry)
            if families and a >= 4 and b >= 4:
                for fid in FAMILY_IDS:
                    if fid == "MaxAB" and gcd(a, b) != 1:
                        continue
                    s, s2 = FAMILY_PARAMS
                    spec = FamilySpec(fid, a, b, s, s2 if fid in TWO_PARAMS else None)
                    report.families.append(check_family(spec, report))
    return report
