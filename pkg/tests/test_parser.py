import random

import pytest
from hypothesis import assume, given

from biquad.bipoly import BiPoly
from biquad.families import FAMILY_IDS, FamilySpec, NotCoprime, build_family
from biquad.parser import NotBihomogeneous, ParseError, parse_automorphism, parse_bipoly, parse_scalar
from biquad.scalars import CycloScalar, zeta
from biquad.surfauto import DiagonalAut, SurfaceAut, SwapNormalForm, mat
from biquad.sweep import random_case_curve
from conftest import bipolys, scalars


def test_examples():
    p = parse_bipoly("X0^4*Y0^5 + X0^4*Y1^5 + X1^4*Y0^5 + 2*X1^4*Y1^5")
    assert p.bidegree == (4, 5) and len(p.poly) == 4
    with pytest.raises(NotBihomogeneous) as info:
        parse_bipoly("X0^2*Y0 + X0*Y0")
    assert "(2, 1)" in str(info.value) and "(1, 1)" in str(info.value)
    z = parse_bipoly("X0*Y0 - X0*Y0")
    assert z.poly.is_zero() and z.bidegree == (1, 1)


def test_like_terms_and_coefficients():
    p = parse_bipoly("X0*Y0 + 2*Y0*X0 + (z4 - 1/2)*X1*Y1 + X1*(z4)*Y1")
    assert p.poly == BiPoly(1, 1, {(1, 1): 3, (0, 0): 2 * zeta(4) - CycloScalar.rational(1) / 2})


def test_scalars():
    assert parse_scalar("1/2*z8^3 - 2") == zeta(8, 3) / 2 - 2
    assert parse_scalar("(z3)^3") == CycloScalar.rational(1)
    assert parse_scalar("-z4^-1") == zeta(4)


def test_errors_have_positions():
    with pytest.raises(ParseError) as info:
        parse_bipoly("X0 + $")
    assert info.value.pos == 5
    with pytest.raises(SyntaxError):
        parse_bipoly("X0 +")
    with pytest.raises(SyntaxError):
        parse_bipoly("")


def test_automorphisms():
    assert parse_automorphism("diag(20; 5, 4)") == DiagonalAut(20, 5, 4)
    assert parse_automorphism("swapdiag(6; 1)") == SwapNormalForm(6, 1)
    g = parse_automorphism("mat([[1,0],[0,z4]], [[0,1],[1,0]], swap=true)")
    assert g == SurfaceAut(mat(1, 0, 0, zeta(4)), mat(0, 1, 1, 0), swap=True)
    assert parse_automorphism(str(g)) == g
    with pytest.raises(ValueError):
        parse_automorphism("mat([[1,1],[1,1]], [[1,0],[0,1]])")


@given(bipolys(4, 4, rational=False))
def test_round_trip(F):
    # the text "0" carries no bidegree
    assume(not F.is_zero())
    assert parse_bipoly(str(F)).poly == F


@given(scalars())
def test_scalar_round_trip(s):
    assert parse_scalar(str(s)) == s


def test_golden_corpus_round_trip():
    corpus = []
    for a in range(4, 7):
        for b in range(4, 7):
            for fid in FAMILY_IDS:
                try:
                    spec = FamilySpec(fid, a, b, 2, 3 if fid.startswith("Plus") else None)
                except NotCoprime:
                    continue
                corpus.append(build_family(spec).F)
    rng = random.Random(50)
    while len(corpus) < 45 + 50:
        drawn = random_case_curve(rng.randint(3, 6), rng.randint(3, 6), rng)
        if drawn is not None:
            corpus.append(drawn[0])
    for F in corpus:
        assert parse_bipoly(str(F)).poly == F
