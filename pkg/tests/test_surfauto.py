from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biquad.scalars import CycloScalar, RootOfUnity, lcm, zeta
from biquad.surfauto import (
    INFINITE,
    DiagonalAut,
    IdentityHasNoProperFixedLocus,
    SurfaceAut,
    SwapNormalForm,
    as_diagonal,
    as_swap_diagonal,
    compose,
    diagonalize,
    fixed_locus,
    inverse,
    mat,
    order,
    parse_aut,
    pgl2_order,
    power,
    swap_aut,
)
from conftest import diagonal_auts

ONE, ZERO = CycloScalar.rational(1), CycloScalar.rational(0)


def test_pgl2_orders():
    assert pgl2_order(mat(zeta(5), 0, 0, 1)) == 5
    assert pgl2_order(mat(0, 1, 1, 0)) == 2
    assert pgl2_order(mat(1, 1, 0, 1)) is INFINITE
    assert pgl2_order(mat(2, 0, 0, 2)) == 1
    # order 3 element of PGL2 with no diagonal entries
    assert pgl2_order(mat(0, -1, 1, -1)) == 3


def test_diagonal_orders():
    d = DiagonalAut(20, 5, 4)
    assert d.factor_orders() == (4, 5)
    assert d.order() == order(d) == 20
    assert str(d) == "diag(20; 5, 4)"


@given(diagonal_auts(), st.integers(0, 50))
def test_power_order(d, k):
    n = d.order()
    assert d.power(k).order() == n // gcd(n, k)


@given(diagonal_auts(), diagonal_auts())
def test_diagonal_composition_matches_matrices(d, e):
    assert as_diagonal(compose(d, e)) == d.compose(e)
    assert d.compose(e).order() in [k for k in range(1, lcm(d.order(), e.order()) + 1) if lcm(d.order(), e.order()) % k == 0]


def test_swap_orders():
    sigma = swap_aut()
    assert order(sigma) == 2
    g = compose(sigma, DiagonalAut(6, 1, 0))
    assert order(g) == 12
    lam, mu = as_swap_diagonal(g)
    assert (lam * mu).order == 6


def test_swap_normal_form():
    f = SwapNormalForm(6, 1)
    assert str(f) == "swapdiag(6; 1)"
    assert order(f) == 12


def test_inverse_and_power():
    g = SurfaceAut(mat(zeta(3), 0, 0, 1), mat(0, 1, 1, 0), swap=True)
    assert compose(g, inverse(g)).is_identity()
    n = order(g)
    assert n == 4
    assert power(g, n).is_identity()
    assert not power(g, n // 2).is_identity()


def test_diagonalize():
    g = SurfaceAut(mat(0, 1, 1, 0), mat(0, 1, 1, 0))
    k, normal = diagonalize(g, 4)
    assert isinstance(normal, DiagonalAut)
    assert normal.factor_orders() == (2, 2)
    assert compose(inverse(k), compose(g, k)) == normal.to_surface_aut()


def test_fixed_loci():
    assert fixed_locus(DiagonalAut(20, 5, 4)).kind == "FourCorners"
    loc = fixed_locus(DiagonalAut(4, 1, 0))
    assert (loc.kind, loc.axis) == ("TwoFibers", "first")
    assert fixed_locus(swap_aut()).kind == "SwapCurve"
    assert fixed_locus(compose(swap_aut(), DiagonalAut(6, 1, 0))).kind == "SwapFinite"
    with pytest.raises(IdentityHasNoProperFixedLocus):
        fixed_locus(DiagonalAut(5, 0, 0))


def test_fixed_points_are_fixed():
    g = SurfaceAut(mat(0, -1, 1, -1), mat(1, 0, 0, zeta(3)))
    loc = fixed_locus(g)
    for p in loc.points:
        assert g(p) == p


def test_parse_aut_text():
    assert parse_aut("diag(20; 5, 4)") == DiagonalAut(20, 5, 4)
    assert RootOfUnity(20, 5).order == 4
