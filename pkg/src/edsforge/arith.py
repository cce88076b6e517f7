"""Exact integer and rational utilities.

Everything here works on Python ints and ``fractions.Fraction``; nothing
is approximate.  Primality is Miller-Rabin: deterministic below 2**64
(fixed witness set), and 40 random rounds above that, so a composite is
accepted with probability at most 4**-40.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError

TRIAL_BOUND = 10_000
DEFAULT_BUDGET = 200_000
MR_ROUNDS = 40

_DET_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _small_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


SMALL_PRIMES = _small_primes(TRIAL_BOUND)


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _DET_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        return all(_mr_round(n, d, s, a) for a in _DET_WITNESSES)
    # seeded from n so the answer is reproducible
    rng = random.Random(n)
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(MR_ROUNDS))


def iroot(n: int, k: int) -> tuple[int, bool]:
    """Integer k-th root of n >= 0: returns (floor(n**(1/k)), exact)."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if n < 2 or k == 1:
        return n, True
    if k == 2:
        r = math.isqrt(n)
        return r, r * r == n
    # Newton from an overestimate
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x, x**k == n


def ord_p(n: int, p: int) -> int:
    """Largest e with p**e dividing n."""
    if n == 0:
        raise PreconditionError("ord_p of zero is undefined")
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _val(n: int, p: int) -> int:
    # unchecked ord_p used on hot paths; n == 0 gives a large sentinel
    if n == 0:
        return 1 << 30
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@dataclass(frozen=True)
class Factorization:
    """Signed prime factorization, possibly with an unfactored cofactor.

    ``value == sign * prod(p**e) * cofactor``.  ``complete`` is False
    exactly when ``cofactor > 1`` (a composite we ran out of budget on).
    """

    value: int
    sign: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    complete: bool = True

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def recompose(self) -> int:
        out = self.sign * self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def _brent(n: int, rng: random.Random, budget: list[int]) -> int | None:
    """Pollard-Brent rho; returns a nontrivial factor or None when out of budget."""
    while budget[0] > 0:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            budget[0] -= r
            r *= 2
            if budget[0] <= 0 and g == 1:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def factor(n: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Factorization:
    """Trial division up to TRIAL_BOUND, then Pollard-Brent rho.

    ``budget`` caps the total number of rho iterations; if it runs out the
    leftover composite part is returned as ``cofactor`` with
    ``complete=False``.  The same (n, budget, seed) always gives the same
    answer.
    """
    if n == 0:
        raise PreconditionError("cannot factor zero")
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}
    for p in SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    cofactor = 1
    if m > 1:
        rng = random.Random(seed)
        left = [budget]
        stack = [m]
        while stack:
            c = stack.pop()
            if c == 1:
                continue
            if c <= TRIAL_BOUND**2 or is_prime(c):
                # anything below TRIAL_BOUND**2 left after trial division is prime
                found[c] = found.get(c, 0) + 1
                continue
            b, e = perfect_power(c)
            if e > 1:
                stack.extend([b] * e)
                continue
            d = _brent(c, rng, left)
            if d is None:
                cofactor *= c
                continue
            stack.extend([d, c // d])
    return Factorization(
        value=n,
        sign=sign,
        factors=tuple(sorted(found.items())),
        cofactor=cofactor,
        complete=cofactor == 1,
    )


def perfect_power(n: int) -> tuple[int, int]:
    """Return (b, e) with n == b**e and e maximal.

    ``perfect_power(1) == (1, 0)``: exponent 0 stands for "an l-th power
    for every l".
    """
    if n < 1:
        raise PreconditionError("perfect_power needs n >= 1")
    if n == 1:
        return 1, 0
    base, exp = n, 1
    k = 2
    while (1 << k) <= base:
        r, exact = iroot(base, k)
        if exact:
            base, exp = r, exp * k
            continue  # try the same k again
        k += 1 if k == 2 else 2
        while not is_prime(k):
            k += 2
    return base, exp


def is_lth_power(n: int, l: int) -> bool:
    """Is n (any sign) an l-th power of an integer?"""
    if n == 0:
        return True
    if n < 0:
        return l % 2 == 1 and iroot(-n, l)[1]
    return iroot(n, l)[1]


def squarefree_decomposition(n: int, budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    """n = s * r**2 with s square-free (carrying the sign) and r > 0."""
    if n == 0:
        raise PreconditionError("zero has no square class")
    f = factor(n, budget=budget)
    if not f.complete:
        raise PreconditionError(f"could not fully factor {n} within budget")
    s, r = f.sign, 1
    for p, e in f.factors:
        s *= p ** (e % 2)
        r *= p ** (e // 2)
    return s, r


@dataclass(frozen=True)
class SquareClass:
    squarefree_part: int
    root: Fraction

    def value(self) -> Fraction:
        return self.squarefree_part * self.root**2


def square_class(q, budget: int = DEFAULT_BUDGET) -> SquareClass:
    """Write a nonzero rational as s * r**2, s square-free, r > 0."""
    q = Fraction(q)
    if q == 0:
        raise PreconditionError("zero has no square class")
    # q = a/b = (a*b) / b**2
    s, r = squarefree_decomposition(q.numerator * q.denominator, budget)
    return SquareClass(s, Fraction(r, q.denominator))


def rad3(n: int) -> int:
    """Product of the distinct primes other than 3 dividing n."""
    if n == 0:
        raise PreconditionError("rad3 of zero")
    f = factor(n)
    if not f.complete:
        raise PreconditionError(f"could not fully factor {n}")
    return math.prod(p for p in f.primes() if p != 3)


def prime_divisors(n: int) -> list[int]:
    """Distinct prime divisors of |n|; raises if factoring stalls."""
    f = factor(n)
    if not f.complete:
        raise PreconditionError(f"could not fully factor {n}")
    return f.primes()


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def primes_up_to(bound: int) -> list[int]:
    if bound <= TRIAL_BOUND:
        return [p for p in SMALL_PRIMES if p <= bound]
    return _small_primes(bound)


def parse_rational(text) -> Fraction:
    """Accept ints, Fractions, 'n', 'n/d' strings."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())
