import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mfdecomp.exactnum import (
    CyclotomicElement,
    INFINITE_VALUATION,
    norm,
    two_adic_valuation,
    two_adic_valuation_rational,
    zeta,
)


def elem(order, *coords):
    return CyclotomicElement(order, tuple(Fraction(c) for c in coords))


def test_norm_one_minus_zeta4():
    one = CyclotomicElement.from_rational(4, 1)
    assert norm(one - zeta(4)) == 2


def test_norm_rational_embeds_squared():
    assert norm(CyclotomicElement.from_rational(4, 2)) == 4


def test_norm_three_plus_i_over_five():
    x = elem(4, Fraction(3, 5), Fraction(1, 5))
    assert norm(x) == Fraction(2, 5)


def test_valuation_examples():
    one = CyclotomicElement.from_rational(4, 1)
    assert two_adic_valuation(one - zeta(4)) == Fraction(1, 2)
    assert two_adic_valuation(CyclotomicElement.from_rational(4, 4)) == 2
    one8 = CyclotomicElement.from_rational(8, 1)
    assert two_adic_valuation(one8 - zeta(8)) == Fraction(1, 4)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_valuation_one_minus_zeta_2m(m):
    # N(1 - zeta_{2^m}) is the cyclotomic polynomial evaluated at 1, which
    # is 2; over a degree 2^{m-1} field the valuation is 1/2^{m-1}.
    order = 1 << m
    one = CyclotomicElement.from_rational(order, 1)
    x = one - zeta(order)
    assert norm(x) == 2
    assert two_adic_valuation(x) == Fraction(1, 1 << (m - 1))


def test_zero_gets_infinite_valuation():
    z = CyclotomicElement.from_rational(8, 0)
    assert two_adic_valuation(z) == INFINITE_VALUATION
    assert two_adic_valuation_rational(Fraction(0)) == math.inf
    assert two_adic_valuation_rational(Fraction(0)) > Fraction(10**9)


def test_rational_valuation():
    assert two_adic_valuation_rational(Fraction(12)) == 2
    assert two_adic_valuation_rational(Fraction(3, 8)) == -3


def test_zeta_power_reduction():
    # zeta_8^4 = -1, zeta_8^7 = -zeta_8^3
    assert CyclotomicElement.zeta_power(8, 4) == elem(8, -1, 0, 0, 0)
    assert CyclotomicElement.zeta_power(8, 7) == elem(8, 0, 0, 0, -1)
    assert zeta(8).galois(3) == CyclotomicElement.zeta_power(8, 3)


def test_mixed_orders_rejected():
    with pytest.raises(ValueError):
        zeta(4) + zeta(8)
    with pytest.raises(ValueError):
        CyclotomicElement(6, (Fraction(1), Fraction(0), Fraction(0)))


small = st.integers(min_value=-9, max_value=9)


@st.composite
def cyclo(draw, order=8, nonzero=False):
    coords = draw(
        st.lists(small, min_size=order // 2, max_size=order // 2).filter(
            lambda cs: any(cs) or not nonzero
        )
    )
    return elem(order, *coords)


@given(cyclo(nonzero=True), cyclo(nonzero=True))
def test_norm_and_valuation_multiplicative(x, y):
    assert norm(x * y) == norm(x) * norm(y)
    assert two_adic_valuation(x * y) == two_adic_valuation(x) + two_adic_valuation(y)


@given(cyclo(), cyclo(), cyclo())
def test_ring_axioms(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(st.integers(min_value=-40, max_value=40).filter(lambda n: n != 0))
def test_rational_embedding_valuation(n):
    r = Fraction(n, 6)
    x = CyclotomicElement.from_rational(16, r)
    assert two_adic_valuation(x) == two_adic_valuation_rational(r)


def test_norm_matches_sympy_resultant():
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")
    for order, coords in [
        (8, (3, -1, 2, 5)),
        (8, (Fraction(1, 2), 0, Fraction(-3, 4), 1)),
        (16, (1, 2, 0, -1, 3, 0, 0, 1)),
    ]:
        el = elem(order, *coords)
        poly = sum(sympy.Rational(c) * x**i for i, c in enumerate(el.coords))
        minimal = x ** (order // 2) + 1
        res = sympy.resultant(minimal, poly, x)
        assert sympy.Rational(norm(el)) == res
