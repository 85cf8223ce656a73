"""Command-line entry point: one subcommand per computation, JSON reports.

All outputs are exact: rationals as "a/b" strings, p-adic values as digit
strings with an explicit error valuation.  Exit codes: 0 success, 2 usage,
3 precision exhaustion, 4 mathematical failure report.  The --seed flag
fully determines every randomized sample, so identical invocations produce
byte-identical reports apart from the wall_time_ms field.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import currents, poles, skeleton, torsor
from .errors import (NoAdmissibleOrderError, NonarchError, NonStabilizedError,
                     NotSeparatedError, PoleCollisionError,
                     PrecisionExhaustedError, TailCertificateError,
                     UndecidableSlopeError)
from .padic import DEFAULT_PREC, INF, NEG_INF, PadicNumber, padic_digit_string

USAGE_ERROR, PRECISION_ERROR, MATH_FAILURE = 2, 3, 4


def _frac_str(x) -> str:
    if x is INF or x == INF:
        return "inf"
    if x is NEG_INF or x == NEG_INF:
        return "-inf"
    return str(Fraction(x))


def _parse_frac(s: str) -> Fraction:
    return Fraction(s.strip())


def _parse_scalar(s: str, p: int, prec: int) -> PadicNumber:
    """Accept 'p', 'p^k', 'p**k', '-p^k', or a rational 'a/b'."""
    t = s.strip().replace("**", "^")
    sign = 1
    if t.startswith("-"):
        sign, t = -1, t[1:]
    if t == "p":
        return PadicNumber.from_rational(p, sign * p, prec)
    if t.startswith("p^"):
        return PadicNumber.from_rational(p, sign * Fraction(p) ** int(t[2:]), prec)
    return PadicNumber.from_rational(p, sign * Fraction(t), prec)


def _parse_pole(entry, p: int, prec: int) -> PadicNumber:
    if isinstance(entry, dict):
        return PadicNumber(p, Fraction(entry["rat"]), Fraction(entry.get("pi", 0)), prec)
    return _parse_scalar(str(entry), p, prec)


def _padic_json(x: PadicNumber, err) -> dict:
    return {
        "digits": padic_digit_string(x, err),
        "valuation": _frac_str(x.val),
        "error_valuation": _frac_str(err),
        "exact": x.to_json(),
    }


# -- subcommand handlers -------------------------------------------------


def _cmd_splitting_radius(args) -> dict:
    exact = torsor.splitting_logradius_exact(args.N, args.n, args.p)
    cert = torsor.artin_schreier_certificate(args.N, args.p)
    out = {"logradius": _frac_str(exact), "genus_flag": cert.forces_vertex}
    if args.numeric:
        germ = torsor.RamifiedGerm.model(args.p, args.N, args.prec)
        numeric = torsor.splitting_logradius_numeric(germ, args.n)
        out["numeric_logradius"] = _frac_str(numeric)
        out["agrees"] = numeric == exact
    return out


def _cmd_as_genus(args) -> dict:
    return torsor.artin_schreier_certificate(args.e, args.p).to_json()


def _load_pole_family(args) -> poles.PoleFamily:
    with open(args.poles, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    p = int(data["p"])
    prec = args.prec
    x = _parse_pole(data.get("x") if args.x is None else args.x, p, prec)
    members = tuple(_parse_pole(e, p, prec) for e in data["poles"])
    return poles.PoleFamily(members, x)


def _cmd_order_set(args) -> dict:
    fam = _load_pole_family(args)
    result = poles.order_set(fam, args.nmax, args.prec)
    out = result.to_json()
    out["inequality_dim_le_C_u"] = result.check_inequality()
    return out


def _cmd_find_order(args) -> dict:
    fam = _load_pole_family(args)
    p = args.p or fam.p
    coeffs = poles.find_nonppower_order(fam, p, args.nmax)
    order = poles.order_of_combination(coeffs, fam)
    return {
        "coefficients": [_frac_str(c) for c in coeffs],
        "order": order,
        "order_plus_one": order + 1,
    }


def _load_current(path: str) -> currents.Current:
    with open(path, "r", encoding="utf-8") as fh:
        return currents.Current.from_json(json.load(fh))


def _cmd_current(args) -> dict:
    cur = _load_current(args.file)
    report = currents.validate_current(cur)
    out = {"valid": report.ok}
    if not report.ok:
        out["violation_index"] = report.index
        out["message"] = report.message
        return out
    if args.alpha_at is not None or args.delta_at is not None:
        if args.p is None:
            raise ValueError("--p is required to evaluate a current")
        q = _parse_scalar(args.q, args.p, args.prec)
        if args.alpha_at is not None:
            z = _parse_scalar(args.alpha_at, args.p, args.prec)
            res = currents.alpha_eval(cur, q, z, args.J)
            out["alpha"] = _padic_json(res.value, res.error_valuation)
        if args.delta_at is not None:
            z = _parse_scalar(args.delta_at, args.p, args.prec)
            res = currents.delta_eval(cur, q, z, args.J)
            if res.is_pole:
                out["delta"] = {"pole_ord": res.pole_ord}
            else:
                out["delta"] = _padic_json(res.value, res.error_valuation)
    return out


def _cmd_moebius_check(args) -> dict:
    q = _parse_scalar(args.q, args.p, args.prec)
    res = currents.delta_at_one(args.n, q, args.J)
    target = q ** args.n
    diff = res.value - target
    ok = diff.exact_valuation >= res.error_valuation
    return {
        "value": padic_digit_string(res.value, res.error_valuation),
        "target": padic_digit_string(target, res.error_valuation),
        "error_valuation": _frac_str(res.error_valuation),
        "difference_valuation": _frac_str(diff.exact_valuation),
        "ok": ok,
    }


def _cmd_poly_eval(args) -> dict:
    q = _parse_scalar(args.q, args.p, args.prec)
    coeffs = [Fraction(c) for c in args.coeffs.split(",")]
    res = currents.poly_current_eval(coeffs, q, args.J)
    direct = PadicNumber.zero(args.p)
    for n, a in enumerate(coeffs):
        direct = direct + (q ** n) * a
    diff = res.value - direct
    return {
        "value": padic_digit_string(res.value, res.error_valuation),
        "direct": padic_digit_string(direct, res.error_valuation),
        "error_valuation": _frac_str(res.error_valuation),
        "ok": diff.exact_valuation >= res.error_valuation,
    }


def _parse_factored(args) -> currents.FactoredFunction:
    zeros = tuple((int(j), int(k)) for j, k in json.loads(args.factors))
    return currents.FactoredFunction(x_exponent=args.x_exponent, zeros=zeros)


def _cmd_theta(args) -> dict:
    q = _parse_scalar(args.q, args.p, args.prec)
    fd = _parse_factored(args)
    z = _parse_scalar(args.z, args.p, args.prec)
    z0 = _parse_scalar(args.z0, args.p, args.prec)
    res = currents.theta_product(fd, q, args.l, z, z0, args.M)
    out = {
        "value": _padic_json(res.value, res.error_valuation),
        "error_valuation": _frac_str(res.error_valuation),
    }
    qlz = q ** args.l * z
    shifted = currents.theta_product(fd, q, args.l, qlz, z0, args.M)
    ratio = shifted.value / res.value
    rel = min(res.error_valuation - res.value.exact_valuation,
              shifted.error_valuation - shifted.value.exact_valuation)
    out["automorphy_ratio"] = _padic_json(
        ratio, rel if rel is INF else rel + ratio.exact_valuation)
    out["automorphy_constant"] = _padic_json(
        currents.theta_automorphy_constant(fd, q), INF)
    return out


def _cmd_ladder_ord(args) -> dict:
    cur = _load_current(args.file)
    q = _parse_scalar(args.q, args.p, args.prec)
    z = _parse_scalar(args.z, args.p, args.prec)
    res = currents.ladder_ord(cur, q, z, args.nmax)
    return {
        "ord_plus_one": res.value,
        "pole_short_circuit": res.pole,
        "levels": [list(row) for row in res.table],
    }


def _load_tower(path: str) -> skeleton.SkeletonTower:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    graphs = [skeleton.SkeletonGraph.from_json(g) for g in data["graphs"]]
    refs = []
    for r in data["refinements"]:
        refs.append(skeleton.Refinement.build(
            graphs[r["coarse"]], graphs[r["fine"]],
            dict(r["vertex_map"]),
            {e: [tuple(step) for step in p] for e, p in r["edge_paths"].items()}))
    return skeleton.SkeletonTower(tuple(graphs), tuple(refs))


def _parse_point(s: str) -> skeleton.GraphPoint:
    t = s.strip()
    if "@" in t:
        eid, off = t.split("@", 1)
        return skeleton.GraphPoint.on_edge(eid, Fraction(off))
    return skeleton.GraphPoint.at_vertex(t)


def _cmd_skeleton_tower(args) -> dict:
    tower = _load_tower(args.file)
    if args.check == "compose":
        if tower.depth < 2:
            raise ValueError("compose check needs at least two refinements")
        rng = random.Random(args.seed)
        reports = []
        for i in range(tower.depth - 1):
            r12 = tower.refinements[i + 1]  # fine = graphs[i+2] -> graphs[i+1]
            r23 = tower.refinements[i]      # fine = graphs[i+1] -> graphs[i]
            rep = skeleton.compose_check(r12, r23, samples=args.samples,
                                         seed=rng.randrange(2 ** 30))
            reports.append({"levels": [i + 2, i + 1, i], "ok": rep.ok,
                            "message": rep.message})
        return {"check": "compose", "ok": all(r["ok"] for r in reports),
                "reports": reports}
    x = _parse_point(args.x)
    y = _parse_point(args.y)
    level = skeleton.tower_separation(tower, x, y)
    return {"check": "separation", "level": level}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nonarch",
        description="Exact non-archimedean computation kernels")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for all randomized sampling")
    common.add_argument("--prec", type=int, default=DEFAULT_PREC,
                        help="absolute p-adic precision cap")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=(
        lambda **kw: argparse.ArgumentParser(parents=[common], **kw)))

    sp = sub.add_parser("splitting-radius", help="splitting log-radius of the "
                        "p^n-torsor of 1 + X^N")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--numeric", action="store_true")
    sp.set_defaults(handler=_cmd_splitting_radius)

    sp = sub.add_parser("as-genus", help="Artin-Schreier certificate for T^p-T=X^e")
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(handler=_cmd_as_genus)

    sp = sub.add_parser("order-set", help="achieved vanishing orders of "
                        "combinations of simple poles")
    sp.add_argument("--poles", required=True, help="JSON file with p, x, poles")
    sp.add_argument("--x", default=None, help="override the base point")
    sp.add_argument("--nmax", type=int, default=12)
    sp.set_defaults(handler=_cmd_order_set)

    sp = sub.add_parser("find-order", help="combination whose order+1 is not a p-power")
    sp.add_argument("--poles", required=True)
    sp.add_argument("--x", default=None)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--nmax", type=int, default=None)
    sp.set_defaults(handler=_cmd_find_order)

    sp = sub.add_parser("current", help="validate/evaluate a current file")
    sp.add_argument("--file", required=True)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--q", default="p")
    sp.add_argument("--J", type=int, default=None)
    sp.add_argument("--alpha-at", dest="alpha_at", default=None)
    sp.add_argument("--delta-at", dest="delta_at", default=None)
    sp.set_defaults(handler=_cmd_current)

    sp = sub.add_parser("moebius-check", help="delta(c_n)(1) = q^n within the "
                        "certified tail")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--J", type=int, default=12)
    sp.set_defaults(handler=_cmd_moebius_check)

    sp = sub.add_parser("poly-eval", help="delta(c_P)(1) = P(q) within the "
                        "certified tail")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--coeffs", required=True, help="comma-separated a_0,a_1,...")
    sp.add_argument("--J", type=int, default=12)
    sp.set_defaults(handler=_cmd_poly_eval)

    sp = sub.add_parser("theta", help="truncated theta product with tail certificate")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--factors", required=True,
                    help='JSON list [[j, k], ...] of grid zeros/poles')
    sp.add_argument("--x-exponent", dest="x_exponent", type=int, default=0)
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--z", required=True)
    sp.add_argument("--z0", required=True)
    sp.add_argument("--M", type=int, default=8)
    sp.set_defaults(handler=_cmd_theta)

    sp = sub.add_parser("ladder-ord", help="ladder estimate of ord_z(delta(c)) + 1")
    sp.add_argument("--file", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--nmax", type=int, default=6)
    sp.set_defaults(handler=_cmd_ladder_ord)

    sp = sub.add_parser("skeleton-tower", help="compose/separation checks on a tower")
    sp.add_argument("--file", required=True)
    sp.add_argument("--check", choices=["compose", "separation"], required=True)
    sp.add_argument("--x", default=None)
    sp.add_argument("--y", default=None)
    sp.add_argument("--samples", type=int, default=100)
    sp.set_defaults(handler=_cmd_skeleton_tower)

    return ap


def dispatch(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k != "handler"}
    started = time.monotonic()
    try:
        result = args.handler(args)
        code = 0
        payload = {"command": args.command, "inputs": inputs, "result": result}
    except (PrecisionExhaustedError, UndecidableSlopeError) as exc:
        code = PRECISION_ERROR
        payload = {"command": args.command, "inputs": inputs,
                   "error": {"kind": type(exc).__name__, "reason": str(exc)}}
    except (NoAdmissibleOrderError, NonStabilizedError, NotSeparatedError,
            TailCertificateError, PoleCollisionError, NonarchError) as exc:
        code = MATH_FAILURE
        payload = {"command": args.command, "inputs": inputs,
                   "error": {"kind": type(exc).__name__, "reason": str(exc)}}
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        code = USAGE_ERROR
        payload = {"command": args.command, "inputs": inputs,
                   "error": {"kind": type(exc).__name__, "reason": str(exc)}}
    payload["wall_time_ms"] = round((time.monotonic() - started) * 1000, 3)
    return code, payload


def main(argv=None) -> int:
    code, payload = dispatch(argv)
    json.dump(payload, sys.stdout, sort_keys=True, default=str)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
