"""Long Weierstrass models over Q and exact point arithmetic.

Singular models (discriminant 0) are allowed: the nonsingular points still
form a group, which is all the divisibility-sequence code needs.  Local
invariants (point counts, minimal discriminant, conductor exponents)
require a nonsingular model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .arith import _val, is_prime, legendre
from .errors import PreconditionError


@dataclass(frozen=True)
class WeierstrassModel:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @classmethod
    def from_list(cls, ainvs) -> "WeierstrassModel":
        ainvs = [int(a) for a in ainvs]
        if len(ainvs) == 2:  # short form [a4, a6]
            ainvs = [0, 0, 0, *ainvs]
        if len(ainvs) != 5:
            raise PreconditionError("need five a-invariants [a1,a2,a3,a4,a6]")
        return cls(*ainvs)

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def b2(self) -> int:
        return self.a1**2 + 4 * self.a2

    @cached_property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self) -> int:
        return self.a3**2 + 4 * self.a6

    @cached_property
    def b8(self) -> int:
        a1, a2, a3, a4, a6 = self.ainvs
        return a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2

    @cached_property
    def c4(self) -> int:
        return self.b2**2 - 24 * self.b4

    @cached_property
    def c6(self) -> int:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    @property
    def is_singular(self) -> bool:
        return self.discriminant == 0

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"

    # -- coordinate changes -------------------------------------------------

    def rst(self, r: int, s: int, t: int) -> "WeierstrassModel":
        """Apply x = X + r, y = Y + sX + t (u = 1)."""
        a1, a2, a3, a4, a6 = self.ainvs
        return WeierstrassModel(
            a1 + 2 * s,
            a2 - s * a1 + 3 * r - s * s,
            a3 + r * a1 + 2 * t,
            a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
            a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1,
        )

    def scale_down(self, u: int) -> "WeierstrassModel":
        """Divide a_i by u**i; the caller guarantees integrality."""
        a1, a2, a3, a4, a6 = self.ainvs
        for a, i in ((a1, 1), (a2, 2), (a3, 3), (a4, 4), (a6, 6)):
            if a % u**i:
                raise PreconditionError(f"a{i} not divisible by {u}^{i}")
        return WeierstrassModel(a1 // u, a2 // u**2, a3 // u**3, a4 // u**4, a6 // u**6)

    def quadratic_twist(self, t: int) -> "WeierstrassModel":
        """Twist by Q(sqrt t), via the short model y^2 = x^3 - 27 c4 t^2 x - 54 c6 t^3."""
        return WeierstrassModel(0, 0, 0, -27 * self.c4 * t * t, -54 * self.c6 * t**3)

    def equation_value(self, x, y):
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)


@dataclass(frozen=True)
class RationalPoint:
    """Affine point (x, y) over Q, or the identity when x is None."""

    x: Fraction | None = None
    y: Fraction | None = None
    nonsingular: bool = True

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        if self.is_identity:
            return "O"
        return f"({self.x}, {self.y})"


IDENTITY = RationalPoint()


def point(model: WeierstrassModel, x, y) -> RationalPoint:
    """Build a validated affine point on ``model``."""
    x, y = Fraction(x), Fraction(y)
    if model.equation_value(x, y) != 0:
        raise PreconditionError(f"({x}, {y}) is not on {model}")
    return RationalPoint(x, y, not _singular_at(model, x, y))


def _singular_at(model: WeierstrassModel, x: Fraction, y: Fraction) -> bool:
    a1, a2, a3, a4, _ = model.ainvs
    fy = 2 * y + a1 * x + a3
    fx = a1 * y - 3 * x * x - 2 * a2 * x - a4
    return fx == 0 and fy == 0


def _check(model: WeierstrassModel, P: RationalPoint) -> None:
    if P.is_identity:
        return
    if model.equation_value(P.x, P.y) != 0:
        raise PreconditionError(f"{P} is not on {model}")
    if _singular_at(model, P.x, P.y):
        raise PreconditionError(f"{P} is the singular point of {model}")


def negate(model: WeierstrassModel, P: RationalPoint) -> RationalPoint:
    if P.is_identity:
        return P
    return RationalPoint(P.x, -P.y - model.a1 * P.x - model.a3, P.nonsingular)


def _add(model: WeierstrassModel, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    # unchecked chord-tangent addition
    if P.is_identity:
        return Q
    if Q.is_identity:
        return P
    a1, a2, a3, a4, a6 = model.ainvs
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return IDENTITY
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-(x1**3) + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return RationalPoint(x3, y3, True)


def add(model: WeierstrassModel, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    """Group sum in E_ns(Q)."""
    _check(model, P)
    _check(model, Q)
    R = _add(model, P, Q)
    if not R.is_identity and _singular_at(model, R.x, R.y):
        raise PreconditionError("sum is the singular point")
    return R


def scalar_mul(model: WeierstrassModel, P: RationalPoint, m: int) -> RationalPoint:
    """mP by double-and-add; negative m uses the negation map."""
    _check(model, P)
    if m < 0:
        P, m = negate(model, P), -m
    R = IDENTITY
    while m:
        if m & 1:
            R = _add(model, R, P)
        P = _add(model, P, P)
        m >>= 1
    return R


@dataclass(frozen=True)
class BpTriple:
    """x = A/B^2, y = C/B^3 with gcd(A*C, B) = 1 and B >= 1."""

    A: int
    B: int
    C: int


def bp_triple(P: RationalPoint) -> BpTriple:
    if P.is_identity:
        raise PreconditionError("the identity has no (A, B, C) triple")
    x, y = Fraction(P.x), Fraction(P.y)
    B = math.isqrt(x.denominator)
    if B * B != x.denominator or y.denominator != B**3:
        raise PreconditionError(f"{P} does not have denominators of shape (B^2, B^3)")
    return BpTriple(x.numerator, B, y.numerator)


# -- reduction mod p ---------------------------------------------------------


def count_points(model: WeierstrassModel, p: int) -> int:
    """#E(F_p) including the point at infinity, by enumeration over x."""
    a1, a2, a3, a4, a6 = (a % p for a in model.ainvs)
    if p == 2:
        n = 1
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                    n += 1
        return n
    n = 1
    for x in range(p):
        rhs = ((x + a2) * x + a4) * x + a6
        lin = a1 * x + a3
        # (2y + lin)^2 = lin^2 + 4 rhs
        n += 1 + legendre(lin * lin + 4 * rhs, p)
    return n


def count_points_ap(model: WeierstrassModel, p: int) -> int:
    """a_p = p + 1 - #E(F_p) at a prime of good reduction."""
    if model.is_singular:
        raise PreconditionError("singular model")
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if model.discriminant % p == 0:
        raise PreconditionError(f"{p} divides the discriminant of {model}")
    return p + 1 - count_points(model, p)


# -- Tate's algorithm --------------------------------------------------------


@dataclass(frozen=True)
class LocalData:
    p: int
    conductor_exponent: int
    kodaira: str
    disc_valuation: int  # of a model minimal at p
    minimal_model: WeierstrassModel
    split: bool | None = None  # multiplicative reduction only


def _roots_mod(coeffs, p: int) -> list[int]:
    # roots in F_p of sum coeffs[i] x^i, by enumeration (p is 2 or 3 here)
    return [x for x in range(p) if sum(c * x**i for i, c in enumerate(coeffs)) % p == 0]


def _tate_small(model: WeierstrassModel, p: int) -> LocalData:
    """Tate's algorithm with brute-force root finding mod p.

    Used for p in {2, 3}; correct for any p but enumerates F_p.
    """
    E = model
    while True:
        disc = E.discriminant
        n = _val(disc, p)
        if n == 0:
            return LocalData(p, 0, "I0", 0, E)
        # move a singular point of the reduction to (0, 0)
        sing = None
        for x in range(p):
            for y in range(p):
                a1, a2, a3, a4, a6 = E.ainvs
                f = y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6
                fx = a1 * y - 3 * x * x - 2 * a2 * x - a4
                fy = 2 * y + a1 * x + a3
                if f % p == 0 and fx % p == 0 and fy % p == 0:
                    sing = (x, y)
                    break
            if sing:
                break
        E = E.rst(sing[0], 0, sing[1])
        a1, a2, a3, a4, a6 = E.ainvs
        if E.b2 % p:
            split = bool(_roots_mod([-a2, a1, 1], p))
            return LocalData(p, 1, f"I{n}", n, E, split)
        if a6 % p**2:
            return LocalData(p, n, "II", n, E)
        if E.b8 % p**3:
            return LocalData(p, n - 1, "III", n, E)
        if E.b6 % p**3:
            return LocalData(p, n - 2, "IV", n, E)
        # arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        s = next(s for s in range(p) if (a1 + 2 * s) % p == 0 and (a2 - s * a1 - s * s) % p == 0)
        E = E.rst(0, s, 0)
        a1, a2, a3, a4, a6 = E.ainvs
        t = next(t for t in range(p) if (a6 // p**2 - t * (a3 // p) - t * t) % p == 0) * p
        E = E.rst(0, 0, t)
        a1, a2, a3, a4, a6 = E.ainvs
        assert a1 % p == 0 and a2 % p == 0 and a3 % p**2 == 0 and a4 % p**2 == 0 and a6 % p**3 == 0
        b, c, d = a2 // p, a4 // p**2, a6 // p**3
        roots = _roots_mod([d, c, b, 1], p)
        disc_cubic = (b * b * c * c - 4 * c**3 - 4 * b**3 * d - 27 * d * d + 18 * b * c * d) % p
        if disc_cubic:
            return LocalData(p, n - 4, "I0*", n, E)
        # does the cubic have a double root (not triple)?
        triple = (b * b - 3 * c) % p == 0
        if not triple:
            # move the double root to 0
            r = next(r for r in roots if (3 * r * r + 2 * b * r + c) % p == 0)
            E = E.rst(r * p, 0, 0)
            m = 1
            mx, my = p**2, p**2
            while True:
                a1, a2, a3, a4, a6 = E.ainvs
                # quadratic in y:  Y^2 + a3/my Y - a6/(mx my)
                qa3, qa6 = a3 // my, a6 // (mx * my)
                # discriminant test is valid in characteristic 2 as well
                if (qa3 * qa3 + 4 * qa6) % p:
                    break
                tt = next(t for t in range(p) if (t * t + qa3 * t - qa6) % p == 0)
                E = E.rst(0, 0, tt * my)
                my *= p
                m += 1
                a1, a2, a3, a4, a6 = E.ainvs
                # quadratic in x:  a2/p X^2 + a4/(p mx) X + a6/(p mx^2)
                xa2, xa4, xa6 = a2 // p, a4 // (p * mx), a6 // (p * mx * mx)
                if (xa4 * xa4 - 4 * xa2 * xa6) % p:
                    break
                rr = next(r for r in range(p) if (xa2 * r * r + xa4 * r + xa6) % p == 0)
                E = E.rst(rr * mx, 0, 0)
                mx *= p
                m += 1
            return LocalData(p, n - 4 - m, f"I{m}*", n, E)
        # triple root: move it to 0
        r = roots[0]
        E = E.rst(r * p, 0, 0)
        a1, a2, a3, a4, a6 = E.ainvs
        qa3, qa6 = a3 // p**2, a6 // p**4
        if (qa3 * qa3 + 4 * qa6) % p:
            return LocalData(p, n - 6, "IV*", n, E)
        tt = next(t for t in range(p) if (t * t + qa3 * t - qa6) % p == 0)
        E = E.rst(0, 0, tt * p**2)
        a1, a2, a3, a4, a6 = E.ainvs
        if a4 % p**4:
            return LocalData(p, n - 7, "III*", n, E)
        if a6 % p**6:
            return LocalData(p, n - 8, "II*", n, E)
        E = E.scale_down(p)


def _local_tame(model: WeierstrassModel, p: int) -> LocalData:
    """p >= 5: everything is read off valuations of c4, c6 and the discriminant."""
    E = model
    while _val(E.c4, p) >= 4 and _val(E.c6, p) >= 6 and _val(E.discriminant, p) >= 12:
        E = _minimalize_step(E, p)
    n = _val(E.discriminant, p)
    if n == 0:
        return LocalData(p, 0, "I0", 0, E)
    if _val(E.c4, p) == 0:
        # split iff -c6 is a square mod p
        return LocalData(p, 1, f"I{n}", n, E, legendre(-E.c6, p) == 1)
    vj = 3 * _val(E.c4, p) - n
    if vj < 0:
        kod = f"I{-vj}*"
    else:
        kod = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}[n]
    return LocalData(p, 2, kod, n, E)


def _minimalize_step(E: WeierstrassModel, p: int) -> WeierstrassModel:
    # for p >= 5, pass to the short model and divide by u = p
    c4, c6 = E.c4, E.c6
    return WeierstrassModel(0, 0, 0, -27 * c4 // p**4, -54 * c6 // p**6)


def local_data(model: WeierstrassModel, p: int) -> LocalData:
    if model.is_singular:
        raise PreconditionError("singular model")
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if p in (2, 3):
        return _tate_small(model, p)
    return _local_tame(model, p)


def minimal_disc_valuation(model: WeierstrassModel, p: int) -> int:
    """ord_p of the minimal discriminant.

    For p >= 5 this is the rescaling rule (strip 12 while ord(c4) >= 4,
    ord(c6) >= 6, ord(disc) >= 12); for p = 2, 3 that rule is not
    sufficient and Tate's algorithm decides minimality.
    """
    if model.is_singular:
        raise PreconditionError("singular model")
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if p in (2, 3):
        return _tate_small(model, p).disc_valuation
    n, v4, v6 = _val(model.discriminant, p), _val(model.c4, p), _val(model.c6, p)
    while v4 >= 4 and v6 >= 6 and n >= 12:
        n, v4, v6 = n - 12, v4 - 4, v6 - 6
    return n


def conductor_exponent(model: WeierstrassModel, p: int) -> int:
    return local_data(model, p).conductor_exponent


def bad_primes(model: WeierstrassModel, budget: int | None = None) -> list[int]:
    from .arith import DEFAULT_BUDGET, factor

    f = factor(model.discriminant, budget=budget or DEFAULT_BUDGET)
    if not f.complete:
        raise PreconditionError("could not factor the discriminant")
    return f.primes()


def conductor(model: WeierstrassModel) -> int:
    N = 1
    for p in bad_primes(model):
        N *= p ** conductor_exponent(model, p)
    return N


def ap(model: WeierstrassModel, p: int) -> int:
    """Trace of Frobenius at any prime: point count if good, +-1/0 if bad."""
    if model.discriminant % p:
        return count_points_ap(model, p)
    ld = local_data(model, p)
    if ld.conductor_exponent == 0:
        return count_points_ap(ld.minimal_model, p)
    if ld.conductor_exponent == 1:
        return 1 if ld.split else -1
    return 0
