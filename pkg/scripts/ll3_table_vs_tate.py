"""Compare the (l,l,3) conductor table with Tate's algorithm on random instances.

Instances come from small A, B, x, y with C z^3 the cube-free split of
A x^l + B y^l.  Prints a histogram of the 3-adic exponent and every mismatch.

    python3 scripts/ll3_table_vs_tate.py --instances 2000 --seed 3
"""

import json
import random
from collections import Counter
from dataclasses import asdict, dataclass

from _config import parse_config

from edsforge.arith import factor
from edsforge.errors import InvariantViolation, PreconditionError
from edsforge.ll3 import LL3Instance, is_exceptional, ll3_conductor, ll3_frey, ll3_level
from edsforge.weierstrass import conductor


@dataclass(frozen=True)
class Config:
    instances: int = 500
    coeff_bound: int = 30
    var_bound: int = 6
    exponents: tuple = (5, 7)
    seed: int = 0


def cube_split(S):
    z = 1
    for p, e in factor(S).factors:
        z *= p ** (e // 3)
    return S // z**3, z


def draw(rng, cfg):
    while True:
        l = rng.choice(cfg.exponents)
        A = rng.randint(1, cfg.coeff_bound)
        B = rng.choice([-1, 1]) * rng.randint(1, cfg.coeff_bound)
        x, y = rng.randint(-cfg.var_bound, cfg.var_bound), rng.randint(-cfg.var_bound, cfg.var_bound)
        S = A * x**l + B * y**l
        if S == 0:
            continue
        C, z = cube_split(S)
        try:
            return LL3Instance(A, B, C, x, y, z, l)
        except PreconditionError:
            continue


def main():
    cfg = parse_config(Config, description=__doc__.splitlines()[0])
    rng = random.Random(cfg.seed)
    alphas, betas = Counter(), Counter()
    mismatches, conflicts, exceptional = [], [], 0
    for _ in range(cfg.instances):
        inst = draw(rng, cfg)
        try:
            alpha, N = ll3_conductor(inst)
        except InvariantViolation as exc:
            conflicts.append({"instance": asdict(inst), "error": str(exc)})
            continue
        alphas[alpha] += 1
        lv = ll3_level(inst)
        if lv.exceptional:
            exceptional += 1
        else:
            betas[lv.beta] += 1
        N_tate = conductor(ll3_frey(inst))
        if N != N_tate:
            mismatches.append({"instance": asdict(inst), "alpha": alpha, "N": N, "tate": N_tate})
        if is_exceptional(inst):
            print(json.dumps({"exceptional": asdict(inst)}))
    for m in mismatches + conflicts:
        print(json.dumps(m))
    print(
        json.dumps(
            {
                "config": asdict(cfg),
                "alpha_histogram": dict(sorted(alphas.items())),
                "beta_histogram": dict(sorted(betas.items())),
                "exceptional": exceptional,
                "mismatches": len(mismatches),
                "table_conflicts": len(conflicts),
            }
        )
    )


if __name__ == "__main__":
    main()
