"""Newform coefficient records and the congruence sieve on the exponent l.

A newform of level N attached (by level lowering) to a Frey curve E forces
c_p = a_p(E) modulo a prime above l at good primes p, and c_p = +-(1 + p)
at primes of multiplicative reduction for E not dividing N.  Each such
congruence confines l to the prime divisors of a difference; intersecting
over several p is the sieve.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .arith import is_prime, prime_divisors
from .errors import PreconditionError
from .weierstrass import WeierstrassModel, ap, conductor

Coefficient = int | tuple[int, int]  # degree 2: (r, s) meaning r + s*theta

BUNDLED = "newforms.json"


@dataclass(frozen=True, eq=False)
class NewformRecord:
    label: str
    level: int
    degree: int
    coeffs: dict[int, Coefficient]
    representative_curve: tuple[int, ...] | None = None
    # monic minimal polynomial x^2 + b x + c of theta, as (c, b, 1), if known
    theta_minpoly: tuple[int, int, int] | None = None
    _extra: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def curve(self) -> WeierstrassModel | None:
        if self.representative_curve is None:
            return None
        return WeierstrassModel.from_list(self.representative_curve)

    def coefficient(self, p: int) -> Coefficient | None:
        """c_p from the stored table, else from the representative curve."""
        if p in self.coeffs:
            return self.coeffs[p]
        if p in self._extra:
            return self._extra[p]
        E = self.curve()
        if E is None:
            return None
        c = ap(E, p)
        self._extra[p] = c
        return c

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "level": self.level,
            "degree": self.degree,
            "coeffs": {str(p): _coeff_json(c) for p, c in sorted(self.coeffs.items())},
        }
        if self.representative_curve is not None:
            out["representative_curve"] = [str(a) for a in self.representative_curve]
        if self.theta_minpoly is not None:
            out["theta_minpoly"] = [str(a) for a in self.theta_minpoly]
        return out


def _coeff_json(c):
    return {"r": str(c[0]), "s": str(c[1])} if isinstance(c, tuple) else str(c)


def _parse_coeff(v, degree: int, label: str) -> Coefficient:
    if isinstance(v, dict):
        if degree < 2:
            raise PreconditionError(f"{label}: (r, s) coefficient on a rational form")
        r, s = int(v["r"]), int(v["s"])
        return r if s == 0 else (r, s)
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise PreconditionError(f"{label}: malformed coefficient {v!r}")
    return int(v)


def record_from_json(obj: dict) -> NewformRecord:
    try:
        label = str(obj["label"])
        level = int(obj["level"])
        degree = int(obj.get("degree", 1))
        raw = obj["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed newform record: {exc}") from None
    if level < 1 or degree < 1:
        raise PreconditionError(f"{label}: level and degree must be positive")
    coeffs = {}
    for k, v in raw.items():
        p = int(k)
        if not is_prime(p):
            raise PreconditionError(f"{label}: coefficient index {p} is not prime")
        coeffs[p] = _parse_coeff(v, degree, label)
    curve = obj.get("representative_curve")
    if curve is not None:
        if degree != 1:
            raise PreconditionError(f"{label}: representative curve on a non-rational form")
        curve = tuple(int(a) for a in curve)
    minpoly = obj.get("theta_minpoly")
    if minpoly is not None:
        minpoly = tuple(int(a) for a in minpoly)
        if len(minpoly) != 3 or minpoly[2] != 1:
            raise PreconditionError(f"{label}: theta_minpoly must be monic quadratic [c, b, 1]")
    return NewformRecord(label, level, degree, coeffs, curve, minpoly)


def validate(rec: NewformRecord) -> None:
    """Check a representative curve against the record; raise on mismatch."""
    E = rec.curve()
    if E is None:
        return
    if E.is_singular:
        raise PreconditionError(f"{rec.label}: representative curve is singular")
    N = conductor(E)
    if N != rec.level:
        raise PreconditionError(f"{rec.label}: curve conductor {N} != level {rec.level}")
    for p, c in rec.coeffs.items():
        if ap(E, p) != c:
            raise PreconditionError(f"{rec.label}: c_{p} = {c} but the curve has a_{p} = {ap(E, p)}")


def ingest(path: str | Path | None = None, check: bool = True) -> list[NewformRecord]:
    """Load a JSON array of records; ``None`` loads the bundled levels 198/594 set."""
    if path is None:
        text = resources.files("edsforge.data").joinpath(BUNDLED).read_text()
    else:
        text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"records file is not JSON: {exc}") from None
    if not isinstance(raw, list):
        raise PreconditionError("records file must hold a JSON array")
    records = [record_from_json(o) for o in raw]
    if check:
        for rec in records:
            validate(rec)
    return records


# -- sieve -------------------------------------------------------------------

GOOD, RESIDUE, MULTIPLICATIVE = "good", "residue", "multiplicative"


@dataclass(frozen=True)
class SieveConstraint:
    p: int
    kind: str
    values: tuple[int, ...] = ()  # a_p (good: one value; residue: the allowed set)

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"constraint prime {self.p} is not prime")
        if self.kind not in (GOOD, RESIDUE, MULTIPLICATIVE):
            raise PreconditionError(f"unknown constraint kind {self.kind!r}")
        if self.kind == GOOD and len(self.values) != 1:
            raise PreconditionError("a good-reduction constraint carries exactly one a_p")
        if self.kind == RESIDUE and not self.values:
            raise PreconditionError("a residue constraint needs at least one a_p value")

    @classmethod
    def from_json(cls, obj) -> "SieveConstraint":
        try:
            return cls(int(obj["p"]), str(obj["kind"]), tuple(int(v) for v in obj.get("values", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed constraint: {exc}") from None

    def targets(self) -> tuple[int, ...]:
        if self.kind == MULTIPLICATIVE:
            return (1 + self.p, -(1 + self.p))
        return self.values


@dataclass(frozen=True)
class Survivors:
    """Primes l compatible with the constraints.  ``primes is None`` means all l."""

    primes: frozenset[int] | None
    indeterminate_at: tuple[int, ...] = ()

    @property
    def is_all(self) -> bool:
        return self.primes is None

    @property
    def eliminated(self) -> bool:
        return self.primes is not None and not self.primes

    def __and__(self, other: "Survivors") -> "Survivors":
        if self.primes is None:
            primes = other.primes
        elif other.primes is None:
            primes = self.primes
        else:
            primes = self.primes & other.primes
        return Survivors(primes, tuple(sorted(set(self.indeterminate_at) | set(other.indeterminate_at))))

    def __or__(self, other: "Survivors") -> "Survivors":
        if self.primes is None or other.primes is None:
            primes = None
        else:
            primes = self.primes | other.primes
        return Survivors(primes, tuple(sorted(set(self.indeterminate_at) | set(other.indeterminate_at))))

    def at_least(self, floor: int) -> "Survivors":
        if self.primes is None:
            return self
        return Survivors(frozenset(l for l in self.primes if l >= floor), self.indeterminate_at)

    def to_json(self) -> dict:
        return {
            "l": "all" if self.primes is None else sorted(self.primes),
            "indeterminate_at": list(self.indeterminate_at),
        }


ALL = Survivors(None)


def _divisor_survivors(diff: int) -> Survivors:
    if diff == 0:
        return ALL
    return Survivors(frozenset(prime_divisors(abs(diff))))


def _norm(u: int, s: int, minpoly) -> int:
    # N(u + s theta) for theta a root of x^2 + b x + c
    c, b, _ = minpoly
    return u * u - b * u * s + c * s * s


def congruence_survivors(rec: NewformRecord, con: SieveConstraint) -> Survivors:
    """Primes l for which c_p of ``rec`` is congruent to one of the allowed values."""
    if con.kind == MULTIPLICATIVE and rec.level % con.p == 0:
        raise PreconditionError(f"multiplicative constraint at {con.p} divides the level {rec.level}")
    c = rec.coefficient(con.p)
    if c is None:
        return Survivors(None, (con.p,))
    out = Survivors(frozenset())
    for target in con.targets():
        if isinstance(c, tuple):
            r, s = c
            if rec.theta_minpoly is None:
                return Survivors(None, (con.p,))
            out = out | _divisor_survivors(_norm(r - target, s, rec.theta_minpoly))
        else:
            out = out | _divisor_survivors(c - target)
    if not rec.is_rational and out.primes is not None:
        # the congruence is only guaranteed for l != p unless the form is rational
        out = Survivors(out.primes | {con.p}, out.indeterminate_at)
    return out


def kraus_bound(
    records: Iterable[NewformRecord], constraints: Iterable[SieveConstraint], floor: int = 5
) -> dict[str, Survivors]:
    """Per record, the intersection of congruence_survivors over all constraints, l >= floor."""
    constraints = list(constraints)
    if not constraints:
        raise PreconditionError("kraus_bound needs at least one constraint")
    out = {}
    for rec in records:
        surv = ALL
        for con in constraints:
            surv = surv & congruence_survivors(rec, con)
        out[rec.label] = surv.at_least(floor)
    return out


def level_bound(p: int, degree: int = 1) -> int:
    """Largest integer below (1 + sqrt p)^(2 degree); l must not exceed it."""
    if not is_prime(p) or degree < 1:
        raise PreconditionError("level_bound needs a prime p and degree >= 1")
    # (1 + sqrt p)^(2d) = X + Y sqrt p
    X, Y = 1, 0
    for _ in range(2 * degree):
        X, Y = X + Y * p, X + Y
    return X + math.isqrt(Y * Y * p)
