from fractions import Fraction

import pytest

from biquad.bipoly import DegreeTooSmall
from biquad.families import FAMILY_IDS, FamilySpec, NotCoprime, ParamZero, build_family, validate_family
from biquad.scalars import zeta

EXPECTED_ORDER = {
    "MaxAB": lambda a, b: a * b,
    "MaxA1B": lambda a, b: (a - 1) * b,
    "MaxAB1": lambda a, b: a * (b - 1),
    "PlusOneA": lambda a, b: (a - 1) * (b - 1) + 1,
    "PlusOneB": lambda a, b: (a - 1) * (b - 1) + 1,
}


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_generic_member(fid):
    a, b = 4, 5
    spec = FamilySpec(fid, a, b, 2, 3 if fid.startswith("Plus") else None)
    rep = validate_family(spec)
    assert rep.smooth and rep.ok, rep.failures
    assert rep.order == EXPECTED_ORDER[fid](a, b)
    assert rep.quotient_genus == 0
    # both factor orders equal (a-1)(b-1)+1 for the PlusOne maps, so no power acts on one factor only
    assert (rep.galois is None) == fid.startswith("Plus")


def test_equations():
    F = build_family(FamilySpec("MaxA1B", 4, 5, Fraction(1, 2))).F
    assert str(F) == "X0^4*Y0^5 + X0^3*X1*Y1^5 + X0*X1^3*Y0^5 + 1/2*X1^4*Y1^5"
    G = build_family(FamilySpec("PlusOneA", 4, 4, 2, 3)).F
    assert str(G) == "X0^4*Y0*Y1^3 + X0^3*X1*Y0^4 + 3*X0*X1^3*Y1^4 + 2*X1^4*Y0^3*Y1"


def test_maxab_degenerate():
    rep = validate_family(FamilySpec("MaxAB", 4, 5, 1))
    assert rep.degenerate and not rep.smooth
    assert rep.witness["kind"] == "Reducible"


@pytest.mark.parametrize("fid", ["PlusOneA", "PlusOneB"])
def test_plus_one_equal_parameters_factor(fid):
    # equal parameters split the form into two components
    rep = validate_family(FamilySpec(fid, 4, 5, 2, 2))
    assert rep.degenerate and rep.witness["kind"] == "Reducible"


def test_cyclotomic_parameter():
    rep = validate_family(FamilySpec("MaxAB", 4, 5, zeta(3)))
    assert rep.smooth and rep.ok


def test_constructor_errors():
    with pytest.raises(DegreeTooSmall):
        FamilySpec("MaxAB", 3, 5, 2)
    with pytest.raises(NotCoprime):
        FamilySpec("MaxAB", 4, 6, 2)
    with pytest.raises(ParamZero):
        FamilySpec("MaxA1B", 4, 5, 0)
    with pytest.raises(ValueError):
        FamilySpec("max-ab", 4, 5, 2, 3)
    assert FamilySpec("plus-one-a", 4, 4, 2).s2 == FamilySpec("PlusOneA", 4, 4, 2).s
