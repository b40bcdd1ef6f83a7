import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biquad.bipoly import BiPoly, DegreeTooSmall, pullback_by_weights, proportional
from biquad.classify import (
    InvarianceCertificate,
    NonIntegralGenus,
    TheoremViolation,
    admissible_order,
    certify,
    check_order_bound,
    classify_corner_case,
    default_max_conductor,
    divides_multiple_of_max,
    enumerate_diagonal_auts,
    enumerate_swap_auts,
    fixed_point_count,
    galois_criterion,
    group_structure,
    invariance_scalar,
    order_menu,
    quotient_genus,
)
from biquad.families import FamilySpec, build_family
from biquad.scalars import CycloScalar
from biquad.smooth import is_smooth
from biquad.surfauto import DiagonalAut, swap_aut
from biquad.sweep import random_case_curve

MAXAB = BiPoly(4, 5, {(4, 5): 1, (4, 0): 1, (0, 5): 1, (0, 0): 2})


def test_order_menu():
    assert order_menu(4, 5) == {2, 3, 6, 8, 13, 15, 16, 20}
    assert admissible_order(13, 4, 5) and not admissible_order(7, 4, 5)
    assert admissible_order(4, 4, 5)  # divisors of menu entries are admissible
    with pytest.raises(DegreeTooSmall):
        order_menu(2, 5)


def test_maxab_enumeration():
    certs = enumerate_diagonal_auts(MAXAB, 20)
    assert len(certs) == 19
    gs = group_structure(certs)
    assert gs.order == 20 and gs.invariant_factors == (20,)
    assert gs.primary_factors == (4, 5)
    assert gs.generators == ("diag(20; 5, 4)",)
    assert gs.closed


def test_plus_one_enumeration():
    F = build_family(FamilySpec("PlusOneA", 4, 4, 2, 3)).F
    certs = enumerate_diagonal_auts(F, 10)
    gs = group_structure(certs)
    assert gs.invariant_factors == (10,)
    assert gs.generators == ("diag(10; 3, 1)",)
    t = invariance_scalar(F, DiagonalAut(10, 3, 1))
    assert t == CycloScalar.zeta(10, 3)


def test_env_override(monkeypatch):
    monkeypatch.setenv("BIQUAD_MAX_CONDUCTOR", "7")
    assert default_max_conductor(4, 5) == 7
    monkeypatch.delenv("BIQUAD_MAX_CONDUCTOR")
    assert default_max_conductor(4, 5) == 20


def test_enumeration_matches_brute_force():
    """Every diagonal map with N <= 10, tested by literal substitution, against the congruence enumerator."""
    rng = random.Random(3)
    for _ in range(3):
        drawn = None
        while drawn is None:
            drawn = random_case_curve(3, 3, rng)
        F, _ = drawn
        found = {c.automorphism for c in enumerate_diagonal_auts(F, 10)}
        brute = set()
        for n in range(1, 11):
            for r1 in range(n):
                for r2 in range(n):
                    d = DiagonalAut(n, r1, r2)
                    if not d.is_identity() and d.order() == n and invariance_scalar(F, d) is not None:
                        brute.add(d)
        assert found == brute


@settings(max_examples=12)
@given(st.integers(0, 10**6), st.sampled_from([(3, 3), (3, 4), (4, 4)]))
def test_group_closure(seed, ab):
    drawn = random_case_curve(*ab, random.Random(seed))
    if drawn is None:
        return
    F, _ = drawn
    n_max = ab[0] * ab[1]
    certs = enumerate_diagonal_auts(F, n_max)
    elems = {c.automorphism for c in certs}
    for g in elems:
        assert proportional(F, pullback_by_weights(F, g)) is not None
        for h in elems:
            gh = g.compose(h)
            if gh.is_identity() or gh.order() > n_max:
                continue
            assert gh in elems


def test_swap_enumeration():
    F = BiPoly(3, 3, {(3, 3): 1, (0, 0): 1, (3, 0): 2, (0, 3): 2})
    swaps = enumerate_swap_auts(F, 9)
    assert any(str(c.automorphism).startswith("swapdiag") or c.order == 2 for c in swaps)
    assert all(certify(F, c.automorphism) is not None for c in swaps)
    assert any(c.order == 2 and c.automorphism == swap_aut() for c in swaps)


def test_classification_of_maxab():
    cert = certify(MAXAB, DiagonalAut(20, 5, 4))
    case = classify_corner_case(MAXAB, cert)
    assert case.case_id == "P4-" and case.corner_count == 0 and case.divisor == 20
    assert check_order_bound(cert, 4, 5)


@pytest.mark.parametrize(
    "family,case_id",
    [("MaxA1B", "P10-ii"), ("MaxAB1", "P10-iii"), ("PlusOneA", "P16-iv"), ("PlusOneB", "P16-v")],
)
def test_family_cases(family, case_id):
    inst = build_family(FamilySpec(family, 4, 5, 2, 3 if family.startswith("Plus") else None))
    case = classify_corner_case(inst.F, certify(inst.F, inst.automorphism))
    assert case.case_id == case_id


def test_violation_carries_replay():
    cert = InvarianceCertificate(DiagonalAut(20, 5, 4), CycloScalar.rational(1), 40)
    with pytest.raises(TheoremViolation) as info:
        classify_corner_case(MAXAB, cert)
    assert info.value.replay.startswith("biquad classify --poly ")
    assert "--aut 'diag(20; 5, 4)'" in info.value.replay
    assert info.value.to_json()["bidegree"] == [4, 5]


def test_fixed_points_and_quotient():
    d = DiagonalAut(4, 1, 0)
    assert fixed_point_count(MAXAB, d) == 10
    q = quotient_genus(MAXAB, certify(MAXAB, d))
    assert q.quotient_genus == 0 and q.stabilizer_sum == 30
    full = quotient_genus(MAXAB, certify(MAXAB, DiagonalAut(20, 5, 4)))
    assert full.quotient_genus == 0


def test_non_integral_genus():
    fake = InvarianceCertificate(DiagonalAut(4, 1, 0), CycloScalar.rational(1), 3)
    with pytest.raises(NonIntegralGenus) as info:
        quotient_genus(MAXAB, fake)
    assert info.value.repro["stabilizer_sum"] == 20


def test_galois_witnesses():
    assert galois_criterion(MAXAB, certify(MAXAB, DiagonalAut(20, 5, 4))) == {"projection": "second", "k": 5}
    inst = build_family(FamilySpec("MaxA1B", 5, 4, 2))
    gal = galois_criterion(inst.F, certify(inst.F, inst.automorphism))
    assert gal == {"projection": "first", "k": 4}


def test_divides_multiple_of_max():
    assert divides_multiple_of_max(20, 4, 5)
    assert not divides_multiple_of_max(5, 4, 5)
    assert not divides_multiple_of_max(16, 4, 5)


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_riemann_hurwitz_integral(seed):
    rng = random.Random(seed)
    for _ in range(20):
        drawn = random_case_curve(3, 4, rng)
        if drawn is not None and is_smooth(drawn[0], classify_components=False).smooth:
            break
    else:
        return
    F, _ = drawn
    for cert in enumerate_diagonal_auts(F, 12):
        q = quotient_genus(F, cert)
        assert q.quotient_genus >= 0
        assert 2 * q.genus - 2 == q.group_order * (2 * q.quotient_genus - 2) + q.stabilizer_sum
