"""Division polynomials, Klein forms and the Frey curve attached to them.

A binary form of degree k is stored as its coefficient list in descending
powers of x:  coeffs[i] is the coefficient of x**(k-i) * y**i.  Products of
forms are then plain convolutions, and partial derivatives are one-liners.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import DEFAULT_BUDGET, _val, factor, iroot
from .errors import InvariantViolation, PreconditionError
from .polys import homogeneous_eval, padd, peval, pmul, psub, pscale, resultant, trim
from .weierstrass import (
    RationalPoint,
    WeierstrassModel,
    bp_triple,
    local_data,
)

# -- division polynomials ----------------------------------------------------


@lru_cache(maxsize=None)
def _f(model: WeierstrassModel, n: int):
    """x-part of psi_n: psi_n = f_n for odd n, psi_n = psi_2 * f_n for even n."""
    b2, b4, b6, b8 = model.b2, model.b4, model.b6, model.b8
    if n == 0:
        return ()
    if n in (1, 2):
        return (1,)
    if n == 3:
        return trim((b8, 3 * b6, 3 * b4, b2, 3))
    if n == 4:
        return trim((b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2))
    F = psi2_squared(model)
    m = n // 2
    if n % 2:
        left = pmul(_f(model, m + 2), _pow3(_f(model, m)))
        right = pmul(_f(model, m - 1), _pow3(_f(model, m + 1)))
        if m % 2 == 0:
            left = pmul(pmul(F, F), left)
        else:
            right = pmul(pmul(F, F), right)
        return psub(left, right)
    inner = psub(
        pmul(_f(model, m + 2), pmul(_f(model, m - 1), _f(model, m - 1))),
        pmul(_f(model, m - 2), pmul(_f(model, m + 1), _f(model, m + 1))),
    )
    return pmul(_f(model, m), inner)


def _pow3(p):
    return pmul(p, pmul(p, p))


def psi2_squared(model: WeierstrassModel):
    return trim((model.b6, 2 * model.b4, model.b2, 4))


def psi_squared(model: WeierstrassModel, n: int):
    """psi_n^2 as a polynomial in x."""
    n = abs(n)
    f = _f(model, n)
    sq = pmul(f, f)
    return pmul(psi2_squared(model), sq) if n % 2 == 0 else sq


def division_polynomial(model: WeierstrassModel, n: int):
    """Return (psi_n^2, theta_n) with x([n]P) = theta_n(x) / psi_n^2(x).

    Both are coefficient tuples, lowest degree first.  theta_n is monic of
    degree n^2.
    """
    if n <= 0:
        raise PreconditionError("division polynomials need n >= 1")
    psq = psi_squared(model, n)
    prod = pmul(_f(model, n + 1), _f(model, n - 1))
    if n % 2:
        prod = pmul(psi2_squared(model), prod)
    theta = psub(pmul((0, 1), psq), prod)
    return psq, theta


def psi3(model: WeierstrassModel):
    return _f(model, 3)


# -- binary forms ------------------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def index(self) -> int:
        if self.degree not in (3, 4, 6, 12):
            raise PreconditionError("index is defined for degrees 3, 4, 6, 12")
        return 6 - 12 // self.degree

    def __call__(self, x, y):
        k = self.degree
        return sum(c * x ** (k - i) * y**i for i, c in enumerate(self.coeffs))

    @property
    def discriminant(self) -> int:
        return form_discriminant(self.coeffs)

    def transvectant(self) -> int:
        """12 a0 a4 - 3 a1 a3 + a2^2 for a quartic; zero iff Klein (when separable)."""
        if self.degree != 4:
            raise PreconditionError("transvectant invariant is for quartics")
        a0, a1, a2, a3, a4 = self.coeffs
        return 12 * a0 * a4 - 3 * a1 * a3 + a2 * a2

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "BinaryForm":
        form = cls(tuple(int(c) for c in obj["coeffs"]))
        if "degree" in obj and int(obj["degree"]) != form.degree:
            raise PreconditionError("degree does not match coefficient count")
        return form

    def __str__(self) -> str:
        k = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{k - i}*y^{i}")
        return " + ".join(terms) or "0"


def form_discriminant(coeffs) -> int:
    """Discriminant of a binary form, via the resultant of its dehomogenization."""
    coeffs = list(coeffs)
    k = len(coeffs) - 1
    if k < 1:
        raise PreconditionError("degree must be positive")
    if not any(coeffs):
        raise PreconditionError("zero form")
    # y -> y + x has determinant 1 and leaves the discriminant unchanged
    while coeffs[0] == 0:
        coeffs = _shift(coeffs)
    f = tuple(reversed(coeffs))  # f(x) = F(x, 1), lowest degree first
    fp = tuple(i * a for i, a in enumerate(f))[1:]
    res = resultant(f, fp)
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, coeffs[0])
    assert r == 0
    return q


def _shift(coeffs):
    # coefficients of F(x, x + y)
    k = len(coeffs) - 1
    out = [0] * (k + 1)
    for i, c in enumerate(coeffs):
        # c x^(k-i) (x+y)^i = sum_j c C(i, j) x^(k-j) y^j
        for j in range(i + 1):
            out[j] += c * math.comb(i, j)
    return out


def _mul(p, q):
    return pmul(p, q) if p and q else ()


def _dx(c):
    k = len(c) - 1
    return tuple(a * (k - i) for i, a in enumerate(c[:-1]))


def _dy(c):
    return tuple(a * i for i, a in enumerate(c))[1:]


def _full(c, deg):
    # pad a trimmed product back to deg + 1 coefficients
    c = list(c)
    return tuple(c + [0] * (deg + 1 - len(c)))


def _fmul(p, q):
    return _full(_mul(p, q), len(p) + len(q) - 2)


def _fsub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _exact_div(c, d, what):
    out = []
    for a in c:
        q = Fraction(a, d)
        if q.denominator != 1:
            raise PreconditionError(f"{what} does not have integer coefficients")
        out.append(int(q))
    return tuple(out)


@dataclass(frozen=True)
class FreyQuartet:
    form: BinaryForm
    H: BinaryForm
    G: BinaryForm
    d_n: int
    n: int
    S_F: tuple[int, ...]


def covariants(F: BinaryForm, check: bool = True) -> FreyQuartet:
    """Hessian H, Jacobian G and the constant d_n of 4H^3 + G^2 = d_n F^n."""
    k = F.degree
    if k not in (3, 4):
        raise PreconditionError("covariants are implemented for cubic and quartic forms")
    disc = F.discriminant
    if disc == 0:
        raise PreconditionError("form is not separable")
    c = F.coeffs
    fxx, fxy, fyy = _dx(_dx(c)), _dy(_dx(c)), _dy(_dy(c))
    hess = _fsub(_fmul(fxx, fyy), _fmul(fxy, fxy))
    H = _exact_div(hess, (k - 1) ** 2, "H")
    jac = _fsub(_fmul(_dx(c), _dy(H)), _fmul(_dy(c), _dx(H)))
    G = _exact_div(jac, k - 2, "G")
    n = 6 - 12 // k
    S_F = tuple(factor(n * disc).primes())
    if n == 2:
        candidates = (-27 * disc,)
    else:
        if (-disc) % 27:
            raise PreconditionError("-disc/27 is not an integer square")
        r, exact = iroot(-disc // 27, 2) if -disc > 0 else (0, False)
        if not exact:
            raise PreconditionError("-disc/27 is not an integer square")
        # the square root is only determined up to sign; the syzygy fixes it
        candidates = (2**8 * r, -(2**8) * r)
    for d in candidates:
        quartet = FreyQuartet(F, BinaryForm(H), BinaryForm(G), d, n, S_F)
        if not syzygy_defect(quartet):
            return quartet
    if check:
        raise InvariantViolation(f"4H^3 + G^2 != d_n F^n for {F}")
    return quartet


def syzygy_defect(q: FreyQuartet) -> tuple[int, ...]:
    """Coefficients of 4H^3 + G^2 - d_n F^n; all zero when the syzygy holds."""
    H, G, F = q.H.coeffs, q.G.coeffs, q.form.coeffs
    lhs = padd(pscale(_mul(H, _mul(H, H)), 4), _mul(G, G))
    Fn = (1,)
    for _ in range(q.n):
        Fn = _mul(Fn, F)
    return psub(lhs, pscale(Fn, q.d_n))


def klein_form(model: WeierstrassModel, n: int) -> BinaryForm:
    """K_2 = psi_2^2(x/y) y^3, K_3 = psi_3(x/y) y^4, homogenized."""
    if model.is_singular:
        raise PreconditionError("Klein forms need a nonsingular model")
    if n == 2:
        poly, deg = psi2_squared(model), 3
    elif n == 3:
        poly, deg = psi3(model), 4
    else:
        raise PreconditionError("n must be 2 or 3")
    coeffs = [0] * (deg + 1)
    for i, a in enumerate(poly):
        coeffs[deg - i] = a
    return BinaryForm(tuple(coeffs))


# -- Frey curve --------------------------------------------------------------


def _coprime_nonroot(F: BinaryForm, A: int, B: int) -> int:
    if math.gcd(A, B) != 1:
        raise PreconditionError("A and B must be coprime")
    val = F(A, B)
    if val == 0:
        raise PreconditionError("F(A, B) = 0")
    return val


def frey_quartic(F: BinaryForm, A: int, B: int, t: int = 1) -> WeierstrassModel:
    """Y^2 = X^3 + 3 H(A,B) t^2 X + G(A,B) t^3, with its discriminant checked.

    The discriminant is -2^4 3^3 d_n F(A,B)^n t^6; for cubic F (n = 2) this
    is the familiar F(A,B)^2.
    """
    q = covariants(F)
    val = _coprime_nonroot(F, A, B)
    E = WeierstrassModel(0, 0, 0, 3 * q.H(A, B) * t * t, q.G(A, B) * t**3)
    expected = -(2**4) * 3**3 * q.d_n * val**q.n * t**6
    if E.discriminant != expected:
        raise InvariantViolation(f"Frey discriminant {E.discriminant} != {expected}")
    return E


@dataclass(frozen=True)
class TwistChoice:
    t: int
    checked_primes: tuple[int, ...]
    complete: bool  # False if F(A, B) was not fully factored


def _twist_ok(E: WeierstrassModel, p: int, n: int, vF: int) -> bool:
    ld = local_data(E, p)
    return (
        ld.conductor_exponent == 1
        and _val(E.discriminant, p) == ld.disc_valuation
        and ld.disc_valuation == n * vF
    )


def twist_select(F: BinaryForm, A: int, B: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> TwistChoice:
    """First t in (1, -1, 3, -3) making the twisted Frey curve semistable, with
    ord_p(disc_min) = n ord_p(F(A,B)), at every p outside S_F dividing F(A,B)."""
    q = covariants(F)
    val = _coprime_nonroot(F, A, B)
    fac = factor(val, budget=budget, seed=seed)
    primes = tuple(p for p in fac.primes() if p not in q.S_F)
    for t in (1, -1, 3, -3):
        E = frey_quartic(F, A, B, t)
        if all(_twist_ok(E, p, q.n, _val(val, p)) for p in primes):
            return TwistChoice(t, primes, fac.complete)
    raise InvariantViolation(f"no twist in (1, -1, 3, -3) works for F={F}, (A,B)=({A},{B})")


def level_N0(F: BinaryForm, A: int, B: int, t: int) -> int:
    """Product over p in S_F of p^(conductor exponent of the twisted Frey curve)."""
    q = covariants(F)
    E = frey_quartic(F, A, B, t)
    N0 = 1
    for p in q.S_F:
        N0 *= p ** local_data(E, p).conductor_exponent
    return N0


# -- K_n at a point ----------------------------------------------------------


def kn_at_point(model: WeierstrassModel, n: int, Q: RationalPoint) -> int:
    """K_n(A_Q, B_Q^2) for the Klein form K_n of ``model``."""
    tr = bp_triple(Q)
    K = klein_form(model, n)
    return K(tr.A, tr.B**2)


@dataclass(frozen=True)
class MultiplicationSplit:
    numerator: int  # B^(2n^2) theta_n(A/B^2)
    denominator: int  # B^2 * psi_n^2(A/B^2) * B^(2(n^2-1))
    common_primes: tuple[int, ...]
    bad_common_primes: tuple[int, ...]  # common primes not dividing disc(E)


def multiplication_split(model: WeierstrassModel, n: int, Q: RationalPoint) -> MultiplicationSplit:
    """Write x(nQ) with the homogenized numerator and K_n-shaped denominator.

    Checks x(nQ) = numerator/denominator and that every prime dividing both
    divides the discriminant of the model.
    """
    from .weierstrass import scalar_mul

    tr = bp_triple(Q)
    A, B2 = tr.A, tr.B**2
    psq, theta = division_polynomial(model, n)
    num = homogeneous_eval(theta, n * n, A, B2)
    den = B2 * homogeneous_eval(psq, n * n - 1, A, B2)
    K = kn_at_point(model, n, Q)
    expected_den = B2 * (K if n == 2 else K * K) if n in (2, 3) else den
    if den != expected_den:
        raise InvariantViolation("K_n does not match the homogenized psi_n^2")
    nQ = scalar_mul(model, Q, n)
    if nQ.is_identity or Fraction(num, den) != nQ.x:
        raise InvariantViolation("theta_n / psi_n^2 disagrees with the group law")
    g = math.gcd(num, den)
    common = tuple(factor(g).primes()) if g > 1 else ()
    disc = model.discriminant
    bad = tuple(p for p in common if disc % p)
    return MultiplicationSplit(num, den, common, bad)
