"""The y^2 = x^3 + 11 exponent sieve, step by step.

Finds where 13, 19 and 619 enter the sequence, runs the newform sieve with
multiplicative constraints there, then adds the a_7 constraint for 7 | A
and the mod-7 test on the unit parameterizations.

    python3 scripts/mordell11_sieve.py --records my_forms.json
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from _config import parse_config

from edsforge.eds import generate, rank_of_apparition
from edsforge.families import mod7_sieve, mordell_frey_ap_values, mordell_params
from edsforge.newforms import SieveConstraint, ingest, kraus_bound, level_bound
from edsforge.weierstrass import WeierstrassModel, point


@dataclass(frozen=True)
class Config:
    m_max: int = 20
    primes: tuple = (13, 19, 619)
    floor: int = 5
    records: str = ""  # empty: bundled records


def main():
    cfg = parse_config(Config, description=__doc__.splitlines()[0])
    E = WeierstrassModel(0, 0, 0, 0, 11)
    seq = generate(E, point(E, Fraction(-7, 4), Fraction(19, 8)), cfg.m_max)
    for p in cfg.primes:
        rec = rank_of_apparition(seq, p)
        print(json.dumps({"step": "apparition", "p": p, "m0": rec.m0, "level_bound": level_bound(p)}))

    records = ingest(cfg.records or None)
    base = [SieveConstraint(p, "multiplicative") for p in cfg.primes]
    a7 = mordell_frey_ap_values(11, 7, [0])
    runs = {
        "multiplicative": base,
        "multiplicative+a7": base + [SieveConstraint(7, "residue", a7)],
    }
    for name, cons in runs.items():
        out = kraus_bound(records, cons, floor=cfg.floor)
        alive = {k: v.to_json() for k, v in out.items() if not v.eliminated}
        print(json.dumps({"step": "sieve", "constraints": name, "a7_values": list(a7), "survivors": alive}))

    for param in mordell_params():
        verdicts = [
            {"r": v.r, "B3_cube": v.b_is_cube, "C_cube": v.c_is_cube, "survives": v.survives}
            for v in mod7_sieve(param)
        ]
        print(json.dumps({"step": "mod7", "u": param.u, "v": param.v, "residues": verdicts}))


if __name__ == "__main__":
    main()
