"""Command-line entry point: ``edsforge <group> <command> [flags]``.

Every result is one JSON object per line; big integers are decimal strings.
Exit status is 0 on success and 2 on invalid input, with an error object
``{"error": {"type": ..., "message": ...}}`` on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import nullcontext
from dataclasses import dataclass
from fractions import Fraction

from . import eds, families, klein, ll3, newforms
from .arith import DEFAULT_BUDGET, parse_rational
from .errors import InvariantViolation, PreconditionError
from .weierstrass import RationalPoint, WeierstrassModel, point

ENV_RECORDS = "EDSFORGE_NEWFORMS"


class UsageError(PreconditionError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    threads: int = 1
    output: str | None = None


# -- input parsing -----------------------------------------------------------


def parse_curve(text: str) -> WeierstrassModel:
    text = text.strip()
    try:
        vals = json.loads(text) if text.startswith("[") else text.split(",")
        return WeierstrassModel.from_list(vals)
    except (ValueError, TypeError) as exc:
        raise PreconditionError(f"malformed curve {text!r}: {exc}") from None


def parse_point(text: str) -> tuple[Fraction, Fraction]:
    text = text.strip()
    try:
        if text.startswith("{"):
            obj = json.loads(text)
            return parse_rational(obj["x"]), parse_rational(obj["y"])
        xs, ys = text.strip("()").split(",")
        return parse_rational(xs), parse_rational(ys)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise PreconditionError(f"malformed point {text!r}: {exc}") from None


def _curve_point(args) -> tuple[WeierstrassModel, RationalPoint]:
    E = parse_curve(args.curve)
    return E, point(E, *parse_point(args.point))


def _load_json_arg(text: str):
    """A JSON literal, or a path (optionally prefixed with @) to a JSON file."""
    if text.lstrip().startswith(("{", "[")):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"malformed JSON: {exc}") from None
    path = text[1:] if text.startswith("@") else text
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"malformed JSON in {path}: {exc}") from None


# -- commands ----------------------------------------------------------------


def cmd_eds_gen(args, cfg):
    E, P = _curve_point(args)
    seq = eds.generate(E, P, args.m_max)
    if args.factor:
        seq = eds.factor_terms(seq, budget=cfg.budget, seed=cfg.seed, threads=cfg.threads)
    for t in seq.terms:
        yield t.to_json()


def cmd_eds_scan(args, cfg):
    E, P = _curve_point(args)
    scan = eds.scan_perfect_powers(eds.generate(E, P, args.m_max), args.l_min)
    if args.flag_ones:
        for m in scan.ones:
            yield {"m": m, "B": "1", "unit": True}
    for hit in scan.hits:
        yield hit.to_json()


def cmd_eds_apparition(args, cfg):
    E, P = _curve_point(args)
    seq = eds.generate(E, P, args.m_max)
    for p in args.p:
        rec = eds.rank_of_apparition(seq, p)
        yield {"p": str(rec.p), "m0": rec.m0, "ord_at_m0": rec.ord_at_m0}


def cmd_eds_primitive(args, cfg):
    E, P = _curve_point(args)
    seq = eds.generate(E, P, args.m_max)
    ms = args.m or range(1, args.m_max + 1)
    for m in ms:
        res = eds.primitive_divisor(seq, m, budget=cfg.budget, seed=cfg.seed)
        yield {
            "m": m,
            "primes": [str(p) for p in res.primes],
            "complete": res.complete,
            "cofactor": str(res.cofactor),
        }


def _quartet_json(q: klein.FreyQuartet) -> dict:
    return {
        "form": q.form.to_json(),
        "discriminant": str(q.form.discriminant),
        "n": q.n,
        "H": q.H.to_json(),
        "G": q.G.to_json(),
        "d_n": str(q.d_n),
        "S_F": [str(p) for p in q.S_F],
    }


def cmd_frey_klein(args, cfg):
    E = parse_curve(args.curve)
    F = klein.klein_form(E, args.n)
    out = _quartet_json(klein.covariants(F))
    if args.n == 3:
        out["transvectant"] = str(F.transvectant())
    yield out


def _form_arg(args) -> klein.BinaryForm:
    if args.form is not None:
        obj = _load_json_arg(args.form)
        if isinstance(obj, list):
            return klein.BinaryForm(tuple(int(c) for c in obj))
        return klein.BinaryForm.from_json(obj)
    if args.curve is None or args.n is None:
        raise PreconditionError("give --form, or --curve with --n")
    return klein.klein_form(parse_curve(args.curve), args.n)


def cmd_frey_build(args, cfg):
    F = _form_arg(args)
    choice = klein.twist_select(F, args.A, args.B, budget=cfg.budget, seed=cfg.seed)
    model = klein.frey_quartic(F, args.A, args.B, choice.t)
    yield {
        "form": F.to_json(),
        "A": str(args.A),
        "B": str(args.B),
        "F_value": str(F(args.A, args.B)),
        "t": choice.t,
        "model": [str(a) for a in model.ainvs],
        "discriminant": str(model.discriminant),
        "checked_primes": [str(p) for p in choice.checked_primes],
        "complete": choice.complete,
        "N0": str(klein.level_N0(F, args.A, args.B, choice.t)),
    }


def cmd_recipe_ll3(args, cfg):
    if args.instance is not None:
        inst = ll3.LL3Instance.from_json(_load_json_arg(args.instance))
    else:
        vals = [args.A, args.B, args.C, args.x, args.y, args.z, args.l]
        if any(v is None for v in vals):
            raise PreconditionError("give --instance or all of --A --B --C --x --y --z --l")
        inst = ll3.LL3Instance(*vals)
    alpha, N = ll3.ll3_conductor(inst)
    lev = ll3.ll3_level(inst)
    yield {
        "model": [str(a) for a in ll3.ll3_frey(inst).ainvs],
        "alpha": alpha,
        "N": str(N),
        "beta": lev.beta,
        "N0": None if lev.N0 is None else str(lev.N0),
        "exceptional": lev.exceptional,
    }


def cmd_sieve(args, cfg):
    path = args.records or os.environ.get(ENV_RECORDS) or None
    records = newforms.ingest(path)
    raw = _load_json_arg(args.constraints)
    if not isinstance(raw, list):
        raise PreconditionError("constraints file must hold a JSON array")
    constraints = [newforms.SieveConstraint.from_json(c) for c in raw]
    result = newforms.kraus_bound(records, constraints, floor=args.floor)
    for rec in records:
        yield {"label": rec.label, "level": rec.level, **result[rec.label].to_json()}


def cmd_cn_classify(args, cfg):
    x, y = parse_point(args.point)
    yield families.classify_2EN(args.N, RationalPoint(x, y)).to_json()


def cmd_cn_reduce2(args, cfg):
    x, y = parse_point(args.point)
    red = families.theorem2_reduce(args.N, RationalPoint(x, y))
    if red is None:
        yield {"N": str(args.N), "found": False}
    else:
        yield {"found": True, **red.to_json()}


def cmd_mordell_check(args, cfg):
    x, y = parse_point(args.point)
    rep = families.duplication_split(args.D, RationalPoint(x, y), l=args.l)
    yield {
        "D": str(args.D),
        "A": str(rep.A),
        "B": str(rep.B),
        "C": str(rep.C),
        "x2Q_numerator": str(rep.numerator),
        "x2Q_denominator": str(rep.denominator),
        "B_2Q": str(rep.B2),
        "common_primes": [str(p) for p in rep.common_primes],
        "power_deduction": rep.power_deduction,
    }


def cmd_search_flt(args, cfg):
    for U, V, W in families.flt_variant_search(args.form, args.l, args.r, args.bound):
        yield {"U": U, "V": V, "W": W}


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="edsforge", description=__doc__.splitlines()[0])
    root.add_argument("--seed", type=int, default=0, help="seed for randomized factoring")
    root.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="factoring effort per number")
    root.add_argument("--threads", type=int, default=1, help="worker processes for batch factoring")
    root.add_argument("--output", default=None, help="write JSON lines here instead of stdout")
    groups = root.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, name, func, help_):
        p = group.add_parser(name, help=help_)
        p.set_defaults(func=func, command=name)
        return p

    def curve_point(p):
        p.add_argument("--curve", required=True, help="a1,a2,a3,a4,a6")
        p.add_argument("--point", required=True, help="x,y as rationals, or JSON {x, y}")
        p.add_argument("--m-max", type=int, default=20)

    g = groups.add_parser("eds").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "gen", cmd_eds_gen, "generate B_m terms")
    curve_point(p)
    p.add_argument("--factor", action="store_true", help="attach factorizations of B_m")
    p = sub(g, "scan-powers", cmd_eds_scan, "find perfect-power terms")
    curve_point(p)
    p.add_argument("--l-min", type=int, default=2)
    p.add_argument("--flag-ones", action="store_true", help="also emit the indices with B_m = 1")
    p = sub(g, "apparition", cmd_eds_apparition, "rank of apparition of primes")
    curve_point(p)
    p.add_argument("--p", type=int, action="append", required=True)
    p = sub(g, "primitive-divisors", cmd_eds_primitive, "primitive prime divisors of B_m")
    curve_point(p)
    p.add_argument("--m", type=int, action="append")

    g = groups.add_parser("frey").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "klein", cmd_frey_klein, "Klein form K_n with covariants")
    p.add_argument("--curve", required=True)
    p.add_argument("--n", type=int, choices=(2, 3), required=True)
    p = sub(g, "build", cmd_frey_build, "twisted Frey curve at (A, B)")
    p.add_argument("--form", help="JSON form, coefficient list, or @file")
    p.add_argument("--curve")
    p.add_argument("--n", type=int, choices=(2, 3))
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--B", type=int, required=True)

    g = groups.add_parser("recipe").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "ll3", cmd_recipe_ll3, "conductor and level for A x^l + B y^l = C z^3")
    p.add_argument("--instance", help="JSON object or @file")
    for name in ("A", "B", "C", "x", "y", "z", "l"):
        p.add_argument(f"--{name}", type=int)

    g = groups.add_parser("sieve").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "bound-l", cmd_sieve, "surviving exponents per newform")
    p.add_argument("--records", help=f"records file (default: ${ENV_RECORDS}, else bundled)")
    p.add_argument("--constraints", required=True, help="JSON array or file")
    p.add_argument("--floor", type=int, default=5)

    g = groups.add_parser("cn").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "classify", cmd_cn_classify, "classify a point of 2E_N(Q)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--point", required=True)
    p = sub(g, "reduce2", cmd_cn_reduce2, "reduce to s^4 + 4p^2t^4 = B^2 or its twin")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--point", required=True)

    g = groups.add_parser("mordell").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "check", cmd_mordell_check, "duplication checks on y^2 = x^3 + D")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--l", type=int)

    g = groups.add_parser("search").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sub(g, "flt", cmd_search_flt, "brute-force Fermat-type box")
    p.add_argument("--form", choices=families.FORMS, default="fermat")
    p.add_argument("--l", type=int, default=3)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--bound", type=int, default=50)
    return root


def _emit(obj, out) -> None:
    out.write(json.dumps(obj) + "\n")


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(f"{args.group} {args.command}", args.seed, args.budget, args.threads, args.output)
        rows = list(args.func(args, cfg))
    except PreconditionError as exc:
        kind = "usage" if isinstance(exc, UsageError) else "precondition"
        _emit({"error": {"type": kind, "message": str(exc)}}, stdout)
        return 2
    except InvariantViolation as exc:
        _emit({"error": {"type": "invariant", "message": str(exc)}}, stdout)
        return 2
    ctx = open(cfg.output, "w") if cfg.output else nullcontext(stdout)
    with ctx as out:
        for row in rows:
            _emit(row, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
