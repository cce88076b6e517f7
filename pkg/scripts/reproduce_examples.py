"""Recompute the worked examples and print one JSON line per example.

    python3 scripts/reproduce_examples.py --m-max 25
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from _config import parse_config

from edsforge.eds import generate, primitive_divisor, rank_of_apparition, scan_perfect_powers
from edsforge.families import classify_2EN, congruent_curve, descent_decompose, theorem2_reduce
from edsforge.weierstrass import RationalPoint, WeierstrassModel, point


@dataclass(frozen=True)
class Config:
    m_max: int = 20
    families: tuple = (24, 96, 216)


def sequences(cfg):
    fib = WeierstrassModel(1, -2, 1, 0, 0)
    seq = generate(fib, point(fib, 0, 0), cfg.m_max)
    scan = scan_perfect_powers(seq)
    yield {
        "example": "fibonacci",
        "B": [str(b) for b in seq.Bs()],
        "powers": [h.to_json() for h in scan.hits],
        "ones": list(scan.ones),
    }

    ex = WeierstrassModel(1, 1, 0, -7, 5)
    seq = generate(ex, point(ex, 2, -3), max(cfg.m_max, 12))
    scan = scan_perfect_powers(seq)
    yield {"example": "B12", "powers": [h.to_json() for h in scan.hits], "ones": list(scan.ones)}

    d11 = WeierstrassModel(0, 0, 0, 0, 11)
    seq = generate(d11, point(d11, Fraction(-7, 4), Fraction(19, 8)), max(cfg.m_max, 13))
    yield {
        "example": "mordell-11",
        "B_1": str(seq.B(1)),
        "B_2": str(seq.B(2)),
        "apparition": {p: rank_of_apparition(seq, p).m0 for p in (7, 19, 619)},
        "primitive_13": [str(p) for p in primitive_divisor(seq, 13).primes],
        "powers": [h.to_json() for h in scan_perfect_powers(seq).hits],
    }


def congruent(cfg):
    for N in cfg.families:
        E = congruent_curve(N)
        # the family point for N = 2^a 3^b sits at x = 25 c^2 with c^2 = N / 24
        c = {24: 1, 96: 2, 216: 3}.get(N)
        if c is None:
            continue
        P = point(E, 25 * c * c, 35 * c**3)
        yield {"example": f"family-{N}", **classify_2EN(N, P).to_json()}

    P = RationalPoint(Fraction(-3600, 1681), Fraction(-455700, 68921))
    d = descent_decompose(5, P)
    red = theorem2_reduce(5, P)
    yield {"example": "N=5", "alpha": list(d.alpha), "z": list(d.z), **red.to_json()}


def main():
    cfg = parse_config(Config, description=__doc__.splitlines()[0])
    for row in (*sequences(cfg), *congruent(cfg)):
        print(json.dumps(row))


if __name__ == "__main__":
    main()
