"""Mordell curves y^2 = x^3 + D and congruent number curves y^2 = x^3 - N^2 x.

Duplication on Mordell curves, the D = 11 unit parameterizations with their
mod-7 sieve, 2-descent square classes on congruent number curves, the
classification of power-integral points in 2E_N(Q), the reduction of the
remaining coset to a quartic equation, and brute-force boxes for the
Fermat-type equations those arguments end in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .arith import (
    _val,
    factor,
    iroot,
    is_prime,
    perfect_power,
    prime_divisors,
    square_class,
    squarefree_decomposition,
)
from .errors import InvariantViolation, PreconditionError
from .klein import BinaryForm
from .weierstrass import RationalPoint, WeierstrassModel, bp_triple, count_points_ap, point, scalar_mul


def mordell_curve(D: int) -> WeierstrassModel:
    return WeierstrassModel(0, 0, 0, 0, D)


def congruent_curve(N: int) -> WeierstrassModel:
    return WeierstrassModel(0, 0, 0, -N * N, 0)


# -- Mordell curves ----------------------------------------------------------


@dataclass(frozen=True)
class DuplicationReport:
    A: int
    B: int
    C: int
    numerator: int  # A (A^3 - 8 D B^6)
    denominator: int  # 4 B^2 C^2
    B2: int  # B-value of 2Q
    common_primes: tuple[int, ...]  # primes dividing C and A^3 - 8 D B^6
    power_deduction: bool | None  # None when its premises fail


def duplication_split(D: int, Q: RationalPoint, l: int | None = None) -> DuplicationReport:
    """x(2Q) as A(A^3 - 8DB^6) / 4B^2C^2, with the checks that shape supports.

    If ``l`` is given and the premises hold (B of 2Q an l-th power, B even,
    D square-free, 3 prime to C) then C and 2B must be l-th powers.
    """
    E = mordell_curve(D)
    Q = point(E, Q.x, Q.y)
    t = bp_triple(Q)
    A, B, C = t.A, t.B, t.C
    if A**3 + D * B**6 != C * C:
        raise InvariantViolation("A^3 + D B^6 != C^2")
    inner = A**3 - 8 * D * B**6
    num, den = A * inner, 4 * B * B * C * C
    R = scalar_mul(E, Q, 2)
    if R.is_identity or Fraction(num, den) != R.x:
        raise InvariantViolation("duplication shape disagrees with the group law")
    g = math.gcd(C, inner)
    common = tuple(prime_divisors(g)) if g > 1 else ()
    if any((3 * D) % p for p in common):
        raise InvariantViolation(f"common primes {common} of C and A^3 - 8DB^6 do not all divide 3D")
    B2 = bp_triple(R).B
    deduction = None
    if l is not None:
        premises = (
            _is_power(B2, l)
            and B % 2 == 0
            and squarefree_decomposition(D)[1] == 1
            and C % 3 != 0
        )
        if premises:
            deduction = _is_power(C, l) and _is_power(2 * B, l)
            if not deduction:
                raise InvariantViolation("B(2Q) is an l-th power but C and 2B are not")
    return DuplicationReport(A, B, C, num, den, B2, common, deduction)


def _is_power(n: int, l: int) -> bool:
    if n < 0:
        return l % 2 == 1 and iroot(-n, l)[1]
    return iroot(n, l)[1]


@dataclass(frozen=True)
class MordellParam:
    u: int
    v: int
    D: int

    @property
    def c_form(self) -> BinaryForm:
        """Rational part of (u + v sqrt D)(a + b sqrt D)^3."""
        u, v, D = self.u, self.v, self.D
        return BinaryForm((u, 3 * v * D, 3 * u * D, v * D * D))

    @property
    def b_form(self) -> BinaryForm:
        """Coefficient of sqrt D in the same product."""
        u, v, D = self.u, self.v, self.D
        return BinaryForm((v, 3 * u, 3 * v * D, u * D))

    @property
    def a_form(self) -> BinaryForm:
        """Norm a^2 - D b^2 of a + b sqrt D."""
        return BinaryForm((1, 0, -self.D))

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "v": self.v,
            "D": self.D,
            "C_form": self.c_form.to_json(),
            "B3_form": self.b_form.to_json(),
            "A_form": self.a_form.to_json(),
        }


# cube classes of units and of 2 sqrt 11 in Z[sqrt 11]; fundamental unit 10 + 3 sqrt 11
UNIT_DATA = {11: ((1, 0), (10, 3), (10, -3), (199, 60), (199, -60))}


def mordell_params(D: int = 11, pairs=None) -> list[MordellParam]:
    if pairs is None:
        if D not in UNIT_DATA:
            raise PreconditionError(f"no bundled unit data for D={D}; supply the (u, v) pairs")
        pairs = UNIT_DATA[D]
    return [MordellParam(int(u), int(v), D) for u, v in pairs]


def cubes_mod(p: int) -> frozenset[int]:
    return frozenset(pow(x, 3, p) for x in range(p))


@dataclass(frozen=True)
class ResidueVerdict:
    r: int
    b_value: int
    b_is_cube: bool
    c_value: int
    c_is_cube: bool

    @property
    def survives(self) -> bool:
        return self.b_is_cube and self.c_is_cube


def mod7_sieve(param: MordellParam, p: int = 7) -> list[ResidueVerdict]:
    """Residues r = a/b mod p with A-form(r, 1) = 0, tested for the cube conditions.

    b is a unit mod p (b = 0 would force p | a), so the cube class of a form
    value at (a, b) is that of its value at (r, 1).
    """
    cubes = cubes_mod(p)
    out = []
    for r in range(p):
        if param.a_form(r, 1) % p:
            continue
        bv, cv = param.b_form(r, 1) % p, param.c_form(r, 1) % p
        out.append(ResidueVerdict(r, bv, bv in cubes, cv, cv in cubes))
    return out


def mordell_frey(D: int, A: int, B: int) -> WeierstrassModel:
    """Y^2 + 3A XY - D B^6 Y = X^3, the signature (l,l,3) Frey curve of C^2 - D B^6 = A^3."""
    return WeierstrassModel(3 * A, 0, -D * B**6, 0, 0)


def mordell_frey_ap_values(D: int, p: int, A_residues) -> tuple[int, ...]:
    """Possible a_p of the Frey curve when A mod p lies in ``A_residues``.

    B and C = sqrt(A^3 + D B^6) range over nonzero residues mod p.
    """
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    squares = {c * c % p for c in range(1, p)}
    values = set()
    for A in A_residues:
        for B in range(1, p):
            if (A**3 + D * B**6) % p not in squares:
                continue
            values.add(count_points_ap(mordell_frey(D, A % p, B), p))
    return tuple(sorted(values))


# -- congruent number curves -------------------------------------------------


@dataclass(frozen=True)
class DescentTriple:
    alpha: tuple[int, int, int]
    z: tuple[int, int, int]
    A: int
    B: int
    N: int
    gcds: tuple[int, int, int] = field(default=(1, 1, 1))  # gcd(z1,z2), gcd(z1,z3), gcd(z2,z3)


def descent_decompose(N: int, P: RationalPoint) -> DescentTriple:
    """A = a1 z1^2, A + N B^2 = a2 z2^2, A - N B^2 = a3 z3^2 with square-free a_i, z_i > 0."""
    if N < 1:
        raise PreconditionError("N must be positive")
    E = congruent_curve(N)
    P = point(E, P.x, P.y)
    if P.y == 0:
        raise PreconditionError("P is a 2-torsion point")
    t = bp_triple(P)
    A, B = t.A, t.B
    vals = (A, A + N * B * B, A - N * B * B)
    alpha, z = zip(*(squarefree_decomposition(v) for v in vals))
    a1, a2, a3 = alpha
    z1, z2, z3 = z
    lhs = (a1 * z1**2, a2 * z2**2, a3 * z3**2)
    NB2 = N * B * B
    checks = (
        a2 * z2**2 - a1 * z1**2 == NB2,
        a1 * z1**2 - a3 * z3**2 == NB2,
        a2 * z2**2 - a3 * z3**2 == 2 * NB2,
        2 * a1 * z1**2 - a2 * z2**2 == a3 * z3**2,
    )
    if lhs != vals or not all(checks):
        raise InvariantViolation("descent identities fail")
    if squarefree_decomposition(a1 * a2 * a3)[0] != 1:
        raise InvariantViolation("a1 a2 a3 is not a square")
    gcds = (math.gcd(z1, z2), math.gcd(z1, z3), math.gcd(z2, z3))
    return DescentTriple(tuple(alpha), tuple(z), A, B, N, gcds)


def split_2a_pb(N: int) -> tuple[int, int, int]:
    """N = 2^a p^b with p an odd prime and b >= 1; returns (a, p, b)."""
    f = factor(N)
    odd = [(p, e) for p, e in f.factors if p != 2]
    if N < 1 or len(odd) != 1:
        raise PreconditionError(f"N={N} is not of the form 2^a p^b with p an odd prime")
    return _val(N, 2), odd[0][0], odd[0][1]


@dataclass(frozen=True)
class SiegelData:
    s: tuple[int, int, int]
    u: Fraction
    v: Fraction

    @property
    def admissible(self) -> bool:
        return (self.u, self.v) in ((1, -2), (-2, 1), (Fraction(-1, 2), Fraction(-1, 2)))


@dataclass(frozen=True)
class Classification:
    N: int
    a: int
    p: int
    b: int
    B: int
    power_integral: bool
    family: bool
    c: int | None
    reduced_exponent: int  # even power of p removed from A
    siegel: SiegelData

    def to_json(self) -> dict:
        return {
            "N": str(self.N),
            "a": self.a,
            "p": self.p,
            "b": self.b,
            "B": str(self.B),
            "power_integral": self.power_integral,
            "family": self.family,
            "c": None if self.c is None else str(self.c),
            "p_power_removed": self.reduced_exponent,
            "siegel": {
                "s": list(self.siegel.s),
                "u": str(self.siegel.u),
                "v": str(self.siegel.v),
                "admissible": self.siegel.admissible,
            },
        }


def family_point(a: int, b: int, sign: int = 1) -> tuple[int, int, int]:
    """(c, x, y) with x = 25 c^2, y = 35 c^3 and c = sign 2^((a-3)/2) 3^((b-1)/2)."""
    if a < 3 or a % 2 == 0 or b % 2 == 0:
        raise PreconditionError("the family needs a >= 3 odd and b odd")
    c = sign * 2 ** ((a - 3) // 2) * 3 ** ((b - 1) // 2)
    return c, 25 * c * c, 35 * c**3


def classify_2EN(N: int, P: RationalPoint) -> Classification:
    """Classify P in 2E_N(Q), N = 2^a p^b: a power-integral P must be in the explicit family."""
    a, p, b = split_2a_pb(N)
    E = congruent_curve(N)
    P = point(E, P.x, P.y)
    if P.y == 0:
        raise PreconditionError("P is a 2-torsion point")
    t = bp_triple(P)
    A, B = t.A, t.B
    NB2 = N * B * B
    # P in 2E_N(Q) iff all three descent values are squares
    z1, ok1 = iroot(A, 2) if A > 0 else (0, False)
    z2, ok2 = iroot(A - NB2, 2) if A - NB2 > 0 else (0, False)
    z3, ok3 = iroot(A + NB2, 2) if A + NB2 > 0 else (0, False)
    if not (ok1 and ok2 and ok3):
        raise PreconditionError("P is not in 2E_N(Q): a descent value is not a square")
    e = _val(A, p)
    if e % 2 or e >= b:
        raise InvariantViolation(f"ord_p(A) = {e} should be even and below b = {b}")
    h = p ** (e // 2)
    z1, z2, z3 = z1 // h, z2 // h, z3 // h
    s1 = 0 if (z2 + z1) % p == 0 else 1
    s2 = 0 if (z3 + z1) % p == 0 else 1
    s3 = (s1 + s2 + 1) % 2
    sg = lambda s: -1 if s % 2 else 1  # noqa: E731
    den = z3 + sg(s3) * z2
    if (z2 + sg(s1) * z1) % p or (z3 + sg(s2) * z1) % p or den % p:
        raise InvariantViolation("p does not divide the expected linear combinations")
    u = Fraction(sg(s3 + 1) * (z2 + sg(s1) * z1), den)
    v = Fraction(-(z3 + sg(s2) * z1), den)
    if u + v + 1 != 0:
        raise InvariantViolation("Siegel's identity fails")
    siegel = SiegelData((s1, s2, s3), u, v)

    power = B == 1 or perfect_power(B)[1] >= 2
    family, c = False, None
    if p == 3 and a >= 3 and a % 2 and b % 2:
        for sign in (1, -1):
            cc, x, y = family_point(a, b, sign)
            if P.x == x and P.y == y:
                family, c = True, cc
    if power and not family:
        raise InvariantViolation(f"power-integral point {P} on E_{N} outside the family")
    if family and B != 1:
        raise InvariantViolation("family point with B != 1")
    return Classification(N, a, p, b, B, power, family, c, e, siegel)


@dataclass(frozen=True)
class QuarticReduction:
    N: int
    p: int
    descent: DescentTriple
    s: int
    t: int
    d: int  # 1 or 2, up to sign
    identity: str
    lhs: int
    rhs: int
    no_perfect_power: bool  # s^4 + 4p^2t^4 = B^2 and its twin have no such solutions

    def to_json(self) -> dict:
        return {
            "N": str(self.N),
            "alpha": list(self.descent.alpha),
            "z": [str(z) for z in self.descent.z],
            "s": str(self.s),
            "t": str(self.t),
            "d": self.d,
            "identity": self.identity,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "no_perfect_power": self.no_perfect_power,
        }


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor(n).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def theorem2_reduce(N: int, P: RationalPoint) -> QuarticReduction | None:
    """For N = 2^a p (a in {0, 1}), x(P) in -Q*^2 and x(P) + N in pQ*^2, find
    coprime (s, t) with z1 = 2p|st| and either
      z3 = s^2 + 2pt^2, |z2| = |s^2 - 2pt^2|   (d = 1:  s^4 + 4p^2t^4 = B^2), or
      z3 = 2s^2 + pt^2, |z2| = |2s^2 - pt^2|   (d = 2:  4s^4 + p^2t^4 = B^2).
    Returns None when no such (s, t) exists.
    """
    a = _val(N, 2)
    p = N >> a
    if a > 1 or not is_prime(p) or p == 2:
        raise PreconditionError(f"N={N} is not p or 2p with p an odd prime")
    E = congruent_curve(N)
    P = point(E, P.x, P.y)
    if square_class(P.x).squarefree_part != -1:
        raise PreconditionError("x(P) is not minus a square")
    if square_class(P.x + N).squarefree_part != p:
        raise PreconditionError(f"x(P) + N is not in {p} Q*^2")
    dec = descent_decompose(N, P)
    z1, z2, z3 = dec.z
    B = dec.B
    if z1 % (2 * p):
        return None
    st = z1 // (2 * p)
    for s in _divisors(st):
        t = st // s
        if math.gcd(s, t) != 1:
            continue
        if z3 == s * s + 2 * p * t * t and z2 == abs(s * s - 2 * p * t * t):
            lhs = s**4 + 4 * p * p * t**4
            ident = "s^4 + 4p^2t^4 = B^2"
            d = 1
        elif z3 == 2 * s * s + p * t * t and z2 == abs(2 * s * s - p * t * t):
            lhs = 4 * s**4 + p * p * t**4
            ident = "4s^4 + p^2t^4 = B^2"
            d = 2
        else:
            continue
        if lhs != B * B:
            raise InvariantViolation(f"{ident} fails for s={s}, t={t}")
        return QuarticReduction(N, p, dec, s, t, d, ident, lhs, B * B, True)
    return None


# -- brute-force boxes -------------------------------------------------------

FORMS = ("fermat", "quartic-minus", "quartic-plus")


def _coprime3(u: int, v: int, w: int) -> bool:
    return math.gcd(u, v) == 1 and math.gcd(u, w) == 1 and math.gcd(v, w) == 1


def flt_variant_search(form: str, l: int, r: int, bound: int) -> list[tuple[int, int, int]]:
    """Nonzero pairwise coprime (U, V, W) with |U|, |V|, |W| <= bound solving

      fermat:         U^l + 2^r V^l + W^l = 0
      quartic-minus:  U^4 - 2^r V^4 + W^4 = 0
      quartic-plus:   2^r U^4 - V^4 + W^4 = 0

    Results are sorted.
    """
    if form not in FORMS:
        raise PreconditionError(f"form must be one of {FORMS}")
    if bound < 1 or bound > 1000 or r < 0:
        raise PreconditionError("need 1 <= bound <= 1000 and r >= 0")
    if form == "fermat":
        if l < 3 or not is_prime(l):
            raise PreconditionError("fermat form needs an odd prime l")
        e, cu, cv, cw = l, 1, 2**r, 1
    else:
        e = 4
        cu, cv, cw = (1, -(2**r), 1) if form == "quartic-minus" else (2**r, -1, 1)
    roots: dict[int, list[int]] = {}
    for w in range(-bound, bound + 1):
        if w:
            roots.setdefault(cw * w**e, []).append(w)
    out = []
    rng = [x for x in range(-bound, bound + 1) if x]
    for U, V in product(rng, rng):
        if math.gcd(U, V) != 1:
            continue
        for W in roots.get(-(cu * U**e + cv * V**e), ()):
            if _coprime3(U, V, W):
                out.append((U, V, W))
    return sorted(out)
