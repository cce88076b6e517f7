from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import assume

from edsforge.weierstrass import RationalPoint, WeierstrassModel, point

FIB = WeierstrassModel(1, -2, 1, 0, 0)  # y^2 + xy + y = x^3 - 2x^2, singular
EX12 = WeierstrassModel(1, 1, 0, -7, 5)  # y^2 + xy = x^3 + x^2 - 7x + 5
D11 = WeierstrassModel(0, 0, 0, 0, 11)
CN2 = WeierstrassModel(0, 0, 0, -2, 0)  # y^2 = x^3 - 2x

P_FIB = point(FIB, 0, 0)
P_EX12 = point(EX12, 2, -3)
P_D11 = point(D11, Fraction(-7, 4), Fraction(19, 8))
P_CN2 = point(CN2, -1, 1)


@st.composite
def curve_with_point(draw, bound=20):
    """A nonsingular integral model through a random integral point."""
    a1, a2, a3, a4 = (draw(st.integers(-bound, bound)) for _ in range(4))
    x0, y0 = draw(st.integers(-bound, bound)), draw(st.integers(-bound, bound))
    a6 = y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0**3 - a2 * x0 * x0 - a4 * x0
    E = WeierstrassModel(a1, a2, a3, a4, a6)
    if E.discriminant == 0:
        E = WeierstrassModel(a1, a2, a3, a4 + 1, a6 - x0)
    assume(E.discriminant != 0)
    return E, point(E, x0, y0)


@st.composite
def curves(draw, bound=50):
    E = WeierstrassModel(*(draw(st.integers(-bound, bound)) for _ in range(5)))
    assume(E.discriminant != 0)
    return E


@pytest.fixture
def fib_seq():
    from edsforge.eds import generate

    return generate(FIB, P_FIB, 25)


@pytest.fixture
def d11_seq():
    from edsforge.eds import generate

    return generate(D11, P_D11, 20)


@pytest.fixture
def ex12_seq():
    from edsforge.eds import generate

    return generate(EX12, P_EX12, 12)


def rp(x, y) -> RationalPoint:
    return RationalPoint(Fraction(x), Fraction(y))
