import random
from math import gcd

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from edsforge.arith import factor, rad3
from edsforge.errors import PreconditionError
from edsforge.klein import BinaryForm
from edsforge.ll3 import (
    EXCEPTIONAL,
    CubicFreyInstance,
    LL3Instance,
    cubic_frey,
    cubic_frey_model,
    is_exceptional,
    ll3_conductor,
    ll3_frey,
    ll3_level,
)
from edsforge.weierstrass import conductor, conductor_exponent

D11_CUBIC = (3, 30, 99, 110)


def cube_split(S):
    """S = C z^3 with C cube-free and z > 0."""
    z = 1
    for p, e in factor(S).factors:
        z *= p ** (e // 3)
    return S // z**3, z


def random_instance(seed: int) -> LL3Instance:
    """Rejection-sample a valid instance from small A, B, x, y."""
    rng = random.Random(seed)
    while True:
        l = rng.choice([5, 7])
        A, B = rng.randint(1, 30), rng.choice([-1, 1]) * rng.randint(1, 30)
        x, y = rng.randint(-6, 6), rng.randint(-6, 6)
        S = A * x**l + B * y**l
        if S == 0:
            continue
        C, z = cube_split(S)
        try:
            return LL3Instance(A, B, C, x, y, z, l)
        except PreconditionError:
            continue


ll3_instances = st.integers(0, 2**32).map(random_instance)


class TestInstance:
    def test_exceptional_equations_are_valid(self):
        for t in EXCEPTIONAL:
            assert is_exceptional(LL3Instance(*t))

    @pytest.mark.parametrize(
        "args",
        [
            (1, 27, 5, 2, -1, 1, 3),  # l too small
            (1, 27, 5, 2, -1, 2, 5),  # equation fails
            (3, 1, 4, 1, 1, 1, 5),  # A x divisible by 3
            (1, 2, 3, 1, 1, 1, 5),  # B y^l = 2 mod 3
            (2, 2, 4, 1, 1, 1, 5),  # not coprime
            (1, 1, 2, 0, 1, 1, 5),  # zero term
        ],
    )
    def test_rejects(self, args):
        with pytest.raises(PreconditionError):
            LL3Instance(*args)

    def test_from_json(self):
        inst = LL3Instance.from_json({"A": 1, "B": 3, "C": 1, "x": 2, "y": -1, "z": 5, "l": 7})
        assert inst == LL3Instance(1, 3, 1, 2, -1, 5, 7)
        with pytest.raises(PreconditionError):
            LL3Instance.from_json({"A": 1})


class TestFreyModel:
    @pytest.mark.parametrize(
        "args,ainvs",
        [
            ((1, 27, 5, 2, -1, 1, 5), (15, 0, -675, 0, 0)),
            ((1, 3, 1, 2, -1, 5, 7), (15, 0, -3, 0, 0)),
            ((2, 27, 25, 1, -1, -1, 5), (-75, 0, -16875, 0, 0)),
        ],
    )
    def test_examples(self, args, ainvs):
        assert ll3_frey(LL3Instance(*args)).ainvs == ainvs

    @settings(max_examples=50, deadline=None)
    @given(ll3_instances)
    def test_multiplicative_away_from_3abc(self, inst):
        E = ll3_frey(inst)
        for q in sympy.primefactors(inst.x * inst.y):
            if (3 * inst.A * inst.B * inst.C) % q:
                assert conductor_exponent(E, q) == 1


class TestConductor:
    def test_first_exceptional(self):
        inst = LL3Instance(1, 27, 5, 2, -1, 1, 5)
        assert inst.key == -688
        assert ll3_conductor(inst) == (0, 50)

    def test_second_exceptional(self):
        inst = LL3Instance(1, 3, 1, 2, -1, 5, 7)
        assert inst.key == -16
        assert ll3_conductor(inst) == (4, 162)

    def test_three_divides_c(self):
        inst = LL3Instance(1, -58, 57, -1, -1, 1, 5)
        alpha, N = ll3_conductor(inst)
        assert alpha == 5 and N == 3**5 * 58 * 19**2

    @pytest.mark.parametrize("t", EXCEPTIONAL)
    def test_exceptional_against_tate(self, t):
        inst = LL3Instance(*t)
        assert ll3_conductor(inst)[1] == conductor(ll3_frey(inst))

    @settings(max_examples=200, deadline=None)
    @given(ll3_instances)
    def test_against_tate(self, inst):
        alpha, N = ll3_conductor(inst)
        assert N == conductor(ll3_frey(inst))
        assert N == 3**alpha * rad3(inst.A * inst.B * inst.x * inst.y) * rad3(inst.C) ** 2


class TestLevel:
    @pytest.mark.parametrize("t", EXCEPTIONAL)
    def test_exceptional_flagged(self, t):
        lv = ll3_level(LL3Instance(*t))
        assert lv.exceptional and lv.beta is None and lv.N0 is None

    def test_sign_flip_is_flagged(self):
        # x, y, z -> -x, -y, -z gives the same equation since l and 3 are odd
        assert ll3_level(LL3Instance(1, 3, 1, -2, 1, -5, 7)).exceptional

    def test_ord3_b_is_3(self):
        inst = LL3Instance(1, -54, 53, -1, -1, 1, 5)
        lv = ll3_level(inst)
        assert not lv.exceptional
        assert lv.beta == 0 and lv.N0 == rad3(1 * -54) * rad3(53) ** 2 == 5618

    def test_three_divides_c(self):
        lv = ll3_level(LL3Instance(1, -58, 57, -1, -1, 1, 5))
        assert lv.beta == 5 and lv.N0 == 3**5 * 58 * 19**2

    @settings(max_examples=200, deadline=None)
    @given(ll3_instances)
    def test_tables_agree(self, inst):
        alpha, _ = ll3_conductor(inst)
        lv = ll3_level(inst)
        assume(not lv.exceptional)
        if inst.B % 27 or inst.B % 81 == 0:
            if inst.C % 3:
                assert lv.beta == alpha
        assert lv.N0 % rad3(inst.A * inst.B) == 0


class TestCubicFrey:
    def test_cube_sum_at_1_1(self):
        E = cubic_frey_model((1, 0, 0, 1), 1, 1)
        assert E.ainvs == (0, 0, 0, 3, 0)
        assert E.discriminant == 16 * -27 * 4

    def test_cube_sum_at_1_0(self):
        E = cubic_frey_model((1, 0, 0, 1), 1, 0)
        assert E.ainvs == (0, 0, 0, 0, 1)
        assert E.discriminant == 16 * -27

    @pytest.mark.parametrize("a,b", [(1, 0), (1, 1), (2, -1), (3, 1), (-7, 2)])
    def test_mordell_11_form(self, a, b):
        F = BinaryForm(D11_CUBIC)
        assert cubic_frey_model(D11_CUBIC, a, b).discriminant == 16 * F.discriminant * F(a, b) ** 2

    def test_instance(self):
        # x^3 + y^3 at (1, 1) is 2 = 2 * 1^7
        inst = CubicFreyInstance((1, 0, 0, 1), 1, 1, 2, 1, 7)
        assert cubic_frey(inst).ainvs == (0, 0, 0, 3, 0)
        assert CubicFreyInstance.from_json({"t": [1, 0, 0, 1], "a": 1, "b": 1, "d": 2, "c": 1, "l": 7}) == inst

    @pytest.mark.parametrize(
        "args",
        [
            ((1, 0, 0, 1), 2, 2, 16, 1, 7),  # not coprime
            ((1, 0, 0, 1), 1, 1, 2, 1, 5),  # l < 7
            ((1, 2, 1, 0), 1, 1, 4, 1, 7),  # x (x + y)^2 is not separable
            ((1, 0, 0, 1), 1, 1, 3, 1, 7),  # wrong value
        ],
    )
    def test_rejects(self, args):
        with pytest.raises(PreconditionError):
            CubicFreyInstance(*args)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(-12, 12), min_size=4, max_size=4), st.integers(-20, 20), st.integers(-20, 20))
    def test_discriminant_identity(self, t, a, b):
        assume(t[0] != 0 and gcd(a, b) == 1)
        F = BinaryForm(tuple(t))
        assume(F.discriminant != 0)
        x, y = sympy.symbols("x y")
        disc = sympy.discriminant(sum(c * x ** (3 - i) for i, c in enumerate(t)), x)
        assert cubic_frey_model(t, a, b).discriminant == 16 * disc * F(a, b) ** 2
