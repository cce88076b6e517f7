"""Frey curves for A x^l + B y^l = C z^3 and for F(a, b) = d c^l with F a cubic form.

The conductor and level of the first are read off from a table indexed by
3-adic data of the solution; rows are evaluated top to bottom and the first
match wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import _val, factor, is_prime, rad3
from .errors import InvariantViolation, PreconditionError
from .klein import BinaryForm
from .weierstrass import WeierstrassModel


@dataclass(frozen=True)
class LL3Instance:
    A: int
    B: int
    C: int
    x: int
    y: int
    z: int
    l: int

    def __post_init__(self):
        problem = self.violation()
        if problem:
            raise PreconditionError(problem)

    def violation(self) -> str | None:
        A, B, C, x, y, z, l = self.A, self.B, self.C, self.x, self.y, self.z, self.l
        if l < 5 or not is_prime(l):
            return "l must be a prime >= 5"
        t1, t2, t3 = A * x**l, B * y**l, C * z**3
        if 0 in (t1, t2, t3):
            return "terms must be nonzero"
        if t1 + t2 != t3:
            return f"A x^l + B y^l = {t1 + t2} != C z^3 = {t3}"
        if math.gcd(t1, t2) != 1 or math.gcd(t1, t3) != 1 or math.gcd(t2, t3) != 1:
            return "terms are not pairwise coprime"
        for name, n, cap in (("A", A, l), ("B", B, l), ("C", C, 3)):
            for p, e in factor(n).factors:
                if e >= cap:
                    return f"ord_{p}({name}) = {e} >= {cap}"
        if (A * x) % 3 == 0:
            return "A x must be prime to 3"
        if t2 % 3 == 2:
            return "B y^l must not be 2 mod 3"
        return None

    @property
    def key(self) -> int:
        # the quantity tested in the first two table rows
        return 2 + self.C**2 * self.B * self.y**self.l - 3 * self.C * self.z

    @classmethod
    def from_json(cls, obj) -> "LL3Instance":
        try:
            return cls(*(int(obj[k]) for k in ("A", "B", "C", "x", "y", "z", "l")))
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed (l,l,3) instance: {exc}") from None


# (A, B, C, x, y, z, l) of the equations whose level is not given by the table.
EXCEPTIONAL = (
    (1, 27, 5, 2, -1, 1, 5),
    (1, 3, 1, 2, -1, 5, 7),
    (2, 27, 25, 1, -1, -1, 5),
    (2, 3, 1, 1, -1, -1, 7),
)


def is_exceptional(inst: LL3Instance) -> bool:
    t = (inst.A, inst.B, inst.C, inst.x, inst.y, inst.z, inst.l)
    neg = (inst.A, inst.B, inst.C, -inst.x, -inst.y, -inst.z, inst.l)
    return t in EXCEPTIONAL or neg in EXCEPTIONAL


def ll3_frey(inst: LL3Instance) -> WeierstrassModel:
    """Y^2 + 3 C z X Y + C^2 B y^l Y = X^3."""
    return WeierstrassModel(3 * inst.C * inst.z, 0, inst.C**2 * inst.B * inst.y**inst.l, 0, 0)


def _rows(inst: LL3Instance, level: bool):
    k = inst.key
    v = _val(inst.B * inst.y**inst.l, 3)
    vB = _val(inst.B, 3)
    yield 2, k % 9 == 0
    yield 3, k % 3 == 0 and k % 9 != 0
    yield 4, v == 1
    yield 3, v == 2
    if level:
        yield 0, vB == 3
        yield 1, v >= 4 and vB != 3
    else:
        yield 0, v == 3
        yield 1, v >= 4
    yield 5, inst.C % 3 == 0


def _exponent(inst: LL3Instance, level: bool) -> int:
    hits = [val for val, ok in _rows(inst, level) if ok]
    if not hits:
        raise InvariantViolation(f"no table row matches {inst}")
    if len(set(hits)) > 1:
        raise InvariantViolation(f"table rows disagree for {inst}: {hits}")
    return hits[0]


def ll3_conductor(inst: LL3Instance) -> tuple[int, int]:
    """(alpha, N) with N = 3^alpha rad3(ABxy) rad3(C)^2."""
    alpha = _exponent(inst, level=False)
    N = 3**alpha * rad3(inst.A * inst.B * inst.x * inst.y) * rad3(inst.C) ** 2
    return alpha, N


@dataclass(frozen=True)
class LL3Level:
    beta: int | None
    N0: int | None
    exceptional: bool


def ll3_level(inst: LL3Instance) -> LL3Level:
    """(beta, N0) with N0 = 3^beta rad3(AB) rad3(C)^2, or the exceptional flag."""
    if is_exceptional(inst):
        return LL3Level(None, None, True)
    beta = _exponent(inst, level=True)
    return LL3Level(beta, 3**beta * rad3(inst.A * inst.B) * rad3(inst.C) ** 2, False)


# -- cubic forms -------------------------------------------------------------


@dataclass(frozen=True)
class CubicFreyInstance:
    t: tuple[int, int, int, int]
    a: int
    b: int
    d: int
    c: int
    l: int

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(int(v) for v in self.t))
        if len(self.t) != 4:
            raise PreconditionError("a cubic form has four coefficients")
        if math.gcd(self.a, self.b) != 1:
            raise PreconditionError("a and b must be coprime")
        if self.l < 7 or not is_prime(self.l):
            raise PreconditionError("l must be a prime >= 7")
        if self.form.discriminant == 0:
            raise PreconditionError("cubic form is not separable")
        if self.form(self.a, self.b) != self.d * self.c**self.l:
            raise PreconditionError("F(a, b) != d c^l")

    @property
    def form(self) -> BinaryForm:
        return BinaryForm(self.t)

    @classmethod
    def from_json(cls, obj) -> "CubicFreyInstance":
        try:
            return cls(tuple(int(v) for v in obj["t"]), *(int(obj[k]) for k in ("a", "b", "d", "c", "l")))
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed cubic instance: {exc}") from None


def cubic_frey_model(t, a: int, b: int) -> WeierstrassModel:
    """y^2 = x^3 + a2 x^2 + a4 x + a6 attached to the cubic t0 x^3 + t1 x^2 y + t2 x y^2 + t3 y^3."""
    t0, t1, t2, t3 = t
    a2 = t1 * a - t2 * b
    a4 = t0 * t2 * a * a + (3 * t0 * t3 - t1 * t2) * a * b + t1 * t3 * b * b
    a6 = (
        t0 * t0 * t3 * a**3
        - t0 * (t2 * t2 - 2 * t1 * t3) * a * a * b
        + t3 * (t1 * t1 - 2 * t0 * t2) * a * b * b
        - t0 * t3 * t3 * b**3
    )
    E = WeierstrassModel(0, a2, 0, a4, a6)
    F = BinaryForm(tuple(t))
    expected = 16 * F.discriminant * F(a, b) ** 2
    if E.discriminant != expected:
        raise InvariantViolation(f"cubic Frey discriminant {E.discriminant} != {expected}")
    return E


def cubic_frey(inst: CubicFreyInstance) -> WeierstrassModel:
    return cubic_frey_model(inst.t, inst.a, inst.b)
