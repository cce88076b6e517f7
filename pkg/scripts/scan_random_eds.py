"""Batch perfect-power scan over random curves through an integral point.

Each curve is generated, checked against the divisibility laws, and scanned;
curves run in a process pool and results come back in input order.

    python3 scripts/scan_random_eds.py --curves 200 --m-max 30 --threads 4
"""

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from _config import parse_config

from edsforge.eds import gcd_law_check, generate, scan_perfect_powers
from edsforge.errors import PreconditionError
from edsforge.weierstrass import WeierstrassModel, point


@dataclass(frozen=True)
class Config:
    curves: int = 50
    m_max: int = 25
    bound: int = 10
    l_min: int = 2
    seed: int = 0
    threads: int = 1


def draw_curve(rng, bound):
    while True:
        a1, a2, a3, a4 = (rng.randint(-bound, bound) for _ in range(4))
        x0, y0 = rng.randint(-bound, bound), rng.randint(-bound, bound)
        a6 = y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0**3 - a2 * x0 * x0 - a4 * x0
        E = WeierstrassModel(a1, a2, a3, a4, a6)
        if E.discriminant:
            return E.ainvs, (x0, y0)


def scan_one(job):
    ainvs, xy, m_max, l_min = job
    E = WeierstrassModel(*ainvs)
    t0 = time.perf_counter()
    try:
        seq = generate(E, point(E, *xy), m_max)
    except PreconditionError as exc:
        return {"curve": list(ainvs), "point": list(xy), "skipped": str(exc)}
    scan = scan_perfect_powers(seq, l_min)
    gcd_ok = all(gcd_law_check(seq, m, n) for m in range(1, m_max + 1) for n in range(m, m_max + 1))
    return {
        "curve": list(ainvs),
        "point": list(xy),
        "powers": [h.to_json() for h in scan.hits],
        "ones": list(scan.ones),
        "gcd_law": gcd_ok,
        "digits_B_max": len(str(seq.B(m_max))),
        "seconds": round(time.perf_counter() - t0, 4),
    }


def main():
    cfg = parse_config(Config, description=__doc__.splitlines()[0])
    rng = random.Random(cfg.seed)
    jobs = [(*draw_curve(rng, cfg.bound), cfg.m_max, cfg.l_min) for _ in range(cfg.curves)]
    if cfg.threads > 1:
        with ProcessPoolExecutor(cfg.threads) as pool:
            rows = list(pool.map(scan_one, jobs))
    else:
        rows = [scan_one(j) for j in jobs]
    for row in rows:
        print(json.dumps(row))
    done = [r for r in rows if "skipped" not in r]
    summary = {
        "config": asdict(cfg),
        "scanned": len(done),
        "torsion_or_singular": len(rows) - len(done),
        "with_power_terms": sum(1 for r in done if r["powers"]),
        "gcd_law_failures": sum(1 for r in done if not r["gcd_law"]),
    }
    print(json.dumps({"summary": summary}))


if __name__ == "__main__":
    main()
