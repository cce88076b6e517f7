"""Elliptic divisibility sequences B_m and checks of their divisibility laws."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .arith import DEFAULT_BUDGET, Factorization, _val, factor, is_lth_power, is_prime, perfect_power
from .errors import InvariantViolation, PreconditionError
from .klein import division_polynomial
from .polys import peval
from .weierstrass import (
    BpTriple,
    RationalPoint,
    WeierstrassModel,
    _add,
    _check,
    _singular_at,
    bp_triple,
    scalar_mul,
)

# indices cross-checked against division polynomials (degree m^2, so keep small)
DIVPOLY_CHECKS = (2, 3, 4, 5, 7)


@dataclass(frozen=True)
class EdsTerm:
    m: int
    triple: BpTriple
    factorization: Factorization | None = None

    @property
    def B(self) -> int:
        return self.triple.B

    def to_json(self) -> dict:
        out = {"m": self.m, "A": str(self.triple.A), "B": str(self.triple.B), "C": str(self.triple.C)}
        if self.factorization is not None:
            out["B_factors"] = [[str(p), e] for p, e in self.factorization.factors]
            out["complete"] = self.factorization.complete
        return out


@dataclass(frozen=True)
class EdsSequence:
    model: WeierstrassModel
    point: RationalPoint
    terms: tuple[EdsTerm, ...]

    @property
    def m_max(self) -> int:
        return len(self.terms)

    def term(self, m: int) -> EdsTerm:
        if not 1 <= m <= self.m_max:
            raise PreconditionError(f"index {m} outside generated range 1..{self.m_max}")
        return self.terms[m - 1]

    def B(self, m: int) -> int:
        return self.term(m).B

    def Bs(self) -> list[int]:
        return [t.B for t in self.terms]


def generate(model: WeierstrassModel, P: RationalPoint, m_max: int, check: bool = True) -> EdsSequence:
    """Terms 1..m_max by repeated addition of P.

    With ``check`` on, selected terms are recomputed from division
    polynomials and by double-and-add, and B_m | B_n is verified for all
    m | n in range.
    """
    if m_max < 1:
        raise PreconditionError("m_max must be >= 1")
    _check(model, P)
    if P.is_identity:
        raise PreconditionError("P is the identity")
    terms = []
    R = P
    for m in range(1, m_max + 1):
        if R.is_identity:
            raise PreconditionError(f"P is torsion: {m}P is the identity")
        if _singular_at(model, R.x, R.y):
            raise PreconditionError(f"{m}P is the singular point")
        terms.append(EdsTerm(m, bp_triple(R)))
        R = _add(model, R, P)
    seq = EdsSequence(model, P, tuple(terms))
    if check:
        _cross_check(seq)
    return seq


def _cross_check(seq: EdsSequence) -> None:
    model, P = seq.model, seq.point
    for m in DIVPOLY_CHECKS:
        if m > seq.m_max:
            break
        psq, theta = division_polynomial(model, m)
        den = peval(psq, P.x)
        t = seq.term(m).triple
        if den == 0 or Fraction(peval(theta, P.x)) / den != Fraction(t.A, t.B**2):
            raise InvariantViolation(f"division polynomial disagrees with the group law at m={m}")
    last = seq.term(seq.m_max).triple
    R = scalar_mul(model, P, seq.m_max)
    if bp_triple(R) != last:
        raise InvariantViolation("double-and-add disagrees with repeated addition")
    Bs = seq.Bs()
    for m in range(1, seq.m_max + 1):
        for n in range(2 * m, seq.m_max + 1, m):
            if Bs[n - 1] % Bs[m - 1]:
                raise InvariantViolation(f"B_{m} does not divide B_{n}")


def _factor_one(args):
    B, budget, seed = args
    return factor(B, budget=budget, seed=seed)


def factor_terms(seq: EdsSequence, budget: int = DEFAULT_BUDGET, seed: int = 0, threads: int = 1) -> EdsSequence:
    """Attach factorizations of every B_m; output order is by index."""
    jobs = [(t.B, budget, seed) for t in seq.terms]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            facs = list(pool.map(_factor_one, jobs))
    else:
        facs = [_factor_one(j) for j in jobs]
    terms = tuple(EdsTerm(t.m, t.triple, f) for t, f in zip(seq.terms, facs))
    return EdsSequence(seq.model, seq.point, terms)


# -- divisibility laws -------------------------------------------------------


@dataclass(frozen=True)
class ApparitionRecord:
    p: int
    m0: int
    ord_at_m0: int


def rank_of_apparition(seq: EdsSequence, p: int) -> ApparitionRecord:
    """Smallest m0 with p | B_m0, after checking p | B_m iff m0 | m in range."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    Bs = seq.Bs()
    m0 = next((m for m, B in enumerate(Bs, 1) if B % p == 0), None)
    if m0 is None:
        raise PreconditionError(f"{p} divides no B_m for m <= {seq.m_max}")
    for m, B in enumerate(Bs, 1):
        if (B % p == 0) != (m % m0 == 0):
            raise InvariantViolation(f"p={p}: divisibility of B_{m} breaks the m0={m0} pattern")
    return ApparitionRecord(p, m0, _val(Bs[m0 - 1], p))


@dataclass(frozen=True)
class ValuationReport:
    p: int
    n: int
    m: int
    expected: int  # ord_p(B_n) + ord_p(m)
    actual: int  # ord_p(B_mn)
    exact_law: bool  # odd p, or p = 2 with a1 even

    @property
    def deviation(self) -> int:
        return self.actual - self.expected


def valuation_law_check(seq: EdsSequence, p: int, n: int, m: int) -> ValuationReport:
    """Compare ord_p(B_mn) with ord_p(B_n) + ord_p(m).

    Where the law is exact a nonzero deviation raises; for p = 2 with a1 odd
    the deviation is only reported.
    """
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if m < 1 or n < 1 or m * n > seq.m_max:
        raise PreconditionError(f"m*n = {m * n} outside generated range")
    Bn = seq.B(n)
    if Bn % p:
        raise PreconditionError(f"{p} does not divide B_{n}")
    expected = _val(Bn, p) + _val(m, p)
    actual = _val(seq.B(m * n), p)
    exact = p != 2 or seq.model.a1 % 2 == 0
    rep = ValuationReport(p, n, m, expected, actual, exact)
    if exact and rep.deviation:
        raise InvariantViolation(f"ord_{p}(B_{m * n}) = {actual}, expected {expected}")
    return rep


def gcd_law_check(seq: EdsSequence, m: int, n: int) -> bool:
    """gcd(B_m, B_n) == B_gcd(m, n)."""
    return math.gcd(seq.B(m), seq.B(n)) == seq.B(math.gcd(m, n))


@dataclass(frozen=True)
class PrimitiveDivisors:
    m: int
    primes: tuple[int, ...]
    complete: bool
    cofactor: int = 1  # unfactored part of the primitive residual


def primitive_residual(seq: EdsSequence, m: int) -> int:
    """B_m stripped of every prime shared with some B_k, k < m."""
    r = seq.B(m)
    for k in range(1, m):
        g = math.gcd(r, seq.B(k))
        while g > 1:
            r //= g
            g = math.gcd(r, g)
    return r


def primitive_divisor(seq: EdsSequence, m: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> PrimitiveDivisors:
    """Primes dividing B_m but no earlier term, by factoring the primitive residual."""
    r = primitive_residual(seq, m)
    if r == 1:
        return PrimitiveDivisors(m, (), True)
    f = factor(r, budget=budget, seed=seed)
    return PrimitiveDivisors(m, tuple(f.primes()), f.complete, f.cofactor)


@dataclass(frozen=True)
class PowerHit:
    m: int
    base: int
    exp: int

    def to_json(self) -> dict:
        return {"m": self.m, "base": str(self.base), "exp": self.exp}


@dataclass(frozen=True)
class PowerScan:
    hits: tuple[PowerHit, ...]
    ones: tuple[int, ...]  # indices with B_m = 1


def scan_perfect_powers(seq: EdsSequence, l_min: int = 2) -> PowerScan:
    """Indices where B_m > 1 is a perfect power of exponent >= l_min; B_m = 1 listed apart."""
    hits, ones = [], []
    for t in seq.terms:
        if t.B == 1:
            ones.append(t.m)
            continue
        base, exp = perfect_power(t.B)
        if exp >= l_min:
            hits.append(PowerHit(t.m, base, exp))
    return PowerScan(tuple(hits), tuple(ones))


@dataclass(frozen=True)
class StripResult:
    m_prime: int
    premise: bool  # B_m is an l-th power
    conclusion: bool  # B_m' is an l-th power prime to p (checked only under the premise)

    @property
    def holds(self) -> bool:
        return not self.premise or self.conclusion


def strip_exponent(seq: EdsSequence, m: int, p: int, l: int) -> StripResult:
    """Remove the p-part of m when the rank of apparition of p is p itself.

    If B_m is an l-th power then B_m' must be one too, and prime to p.
    """
    if seq.model.a1 % 2:
        raise PreconditionError("stripping needs a1 even")
    rec = rank_of_apparition(seq, p)
    if rec.m0 != p:
        raise PreconditionError(f"rank of apparition of {p} is {rec.m0}, not {p}")
    m_prime = m
    while m_prime % p == 0:
        m_prime //= p
    premise = is_lth_power(seq.B(m), l)
    conclusion = False
    if premise:
        Bp = seq.B(m_prime)
        conclusion = is_lth_power(Bp, l) and Bp % p != 0
        if not conclusion:
            raise InvariantViolation(f"B_{m} is an {l}-th power but B_{m_prime} is not (or p divides it)")
    return StripResult(m_prime, premise, conclusion)
