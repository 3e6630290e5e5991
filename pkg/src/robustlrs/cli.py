"""Command-line front end: problem files in, certificates out.

Exit codes: 0 = YES, 1 = NO, 2 = UNSUPPORTED, 3 = input error.  All
scalars in JSON are strings (never binary floating point); output is
deterministic for a fixed seed, so certificates can be diffed byte for
byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .certificates import SCHEMA
from .diophantine import (
    Psi,
    cf_expand,
    construct_target,
    estimate_L,
    estimate_Linf,
    ostrowski_expand,
    ostrowski_value,
    verify_target,
)
from .falsify import FalsifierConfig, falsify
from .neighbourhoods import Neighbourhood
from .nonuniform import decide_nonuniform
from .recurrences import LinearRecurrence, LrsInstance
from .scalars import InvalidInputError, format_scalar, parse_scalar, scalar_sign
from .uniform import decide_robust_positivity, decide_robust_uniform_ultimate

QUERIES = {
    "robust-positivity": decide_robust_positivity,
    "robust-uniform-ultimate": decide_robust_uniform_ultimate,
    "robust-nonuniform-ultimate": decide_nonuniform,
}

EXIT = {"YES": 0, "NO": 1, "UNSUPPORTED": 2}

ALIASES = {
    "golden": "-1/2+1/2*sqrt(5)",
    "sqrt2": "sqrt(2)",
    "sqrt2-1": "-1+1*sqrt(2)",
}


def _scalar(text: str):
    return parse_scalar(ALIASES.get(text, text))


class ProblemError(Exception):
    pass


def load_problem(path: str):
    """Parse and validate a problem file, with positioned diagnostics."""
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as exc:
        raise ProblemError(f"{path}: {exc}") from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProblemError(
            f"{path}:{exc.lineno}:{exc.colno}: JSON parse error: {exc.msg}"
        ) from None
    for field in ("order", "recurrence", "initialisation", "S", "query"):
        if field not in doc:
            raise ProblemError(f"{path}: missing field '{field}'")
    order = doc["order"]
    if not isinstance(order, int) or order < 1:
        raise ProblemError(f"{path}: 'order' must be a positive integer")

    def scalars(vals, where):
        out = []
        for i, v in enumerate(vals):
            try:
                out.append(_scalar(str(v)))
            except InvalidInputError as exc:
                raise ProblemError(f"{path}: {where}[{i}]: {exc}") from None
        return out

    rec = scalars(doc["recurrence"], "recurrence")
    init = scalars(doc["initialisation"], "initialisation")
    if len(rec) != order or len(init) != order:
        raise ProblemError(
            f"{path}: recurrence and initialisation must have length {order}"
        )
    S_rows = doc["S"]
    if len(S_rows) != order or any(len(r) != order for r in S_rows):
        raise ProblemError(f"{path}: S must be a {order}x{order} matrix")
    S = [scalars(row, f"S[{i}]") for i, row in enumerate(S_rows)]
    query = doc["query"]
    if query not in QUERIES:
        raise ProblemError(
            f"{path}: unknown query '{query}' (expected one of {sorted(QUERIES)})"
        )
    try:
        inst = LrsInstance(LinearRecurrence(rec), init)
        nb = Neighbourhood(S)
    except InvalidInputError as exc:
        raise ProblemError(f"{path}: {exc}") from None
    return inst, nb, query


def cmd_decide(args) -> int:
    inst, nb, query = load_problem(args.file)
    out = QUERIES[query](inst, nb)
    doc = out.to_json()
    if args.falsify:
        cfg = FalsifierConfig(
            horizon=args.horizon, samples=args.samples, seed=args.seed
        )
        w = falsify(inst, nb, cfg)
        doc["falsifier"] = (
            {
                "n": w.n,
                "c_prime": [format_scalar(x) for x in w.c_prime],
                "value": format_scalar(w.value),
            }
            if w
            else None
        )
    print(json.dumps(doc, sort_keys=True, indent=2))
    return EXIT[out.decision]


def cmd_verify(args) -> int:
    inst, nb, _ = load_problem(args.file)
    with open(args.certificate) as fh:
        doc = json.load(fh)
    if doc.get("schema") != SCHEMA:
        print(json.dumps({"verified": False, "reason": "unknown schema"}))
        return 3
    if doc.get("decision") != "NO" or not doc.get("witness"):
        print(json.dumps({"verified": False, "reason": "nothing to replay"}))
        return 3
    w = doc["witness"]
    c_prime = [_scalar(s) for s in w["c_prime"]]
    n = int(w["n"])
    inside = scalar_sign(nb.boundary_distance_sq(inst.init, c_prime) - 1) <= 0
    val = LrsInstance(inst.recurrence, c_prime).evaluate(n)
    ok = inside and scalar_sign(val) < 0
    print(
        json.dumps(
            {
                "verified": bool(ok),
                "in_ball": bool(inside),
                "value": format_scalar(val),
                "n": n,
            },
            sort_keys=True,
            indent=2,
        )
    )
    return 0 if ok else 1


def cmd_dio(args) -> int:
    if args.dio_cmd == "cf":
        cf = cf_expand(_scalar(args.x), args.depth)
        doc = {
            "quotients": cf.partial_quotients(min(args.depth, len(cf.quotients)) if cf.terminated else args.depth),
            "terminated": cf.terminated,
            "periodic": cf.is_periodic,
            "convergents": [
                [p, q]
                for p, q in cf.convergents(
                    min(args.depth, len(cf.quotients)) if cf.terminated else args.depth
                )
            ],
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
        return 0
    if args.dio_cmd == "linf":
        t = _scalar(args.t)
        fn = estimate_Linf if not args.infimum else estimate_L
        res = fn(t, Fraction(args.s), args.n_max)
        doc = {
            "enclosure": [str(res.enclosure.lo), str(res.enclosure.hi)],
            "approx": float((res.enclosure.lo + res.enclosure.hi) / 2),
            "records": len(res.records),
            "rational_flagged": res.rational_flagged,
        }
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write("n,n_dist\n")
                for n, v in res.records:
                    fh.write(f"{n},{v}\n")
            doc["csv"] = args.csv
        print(json.dumps(doc, sort_keys=True, indent=2))
        return 0
    if args.dio_cmd == "ostrowski":
        base = _scalar(args.base)
        exp = ostrowski_expand(Fraction(args.y), base, args.depth)
        val, tail = ostrowski_value(exp)
        from .scalars import scalar_enclosure

        vlo, vhi = scalar_enclosure(val, Fraction(1, 10**15))
        tlo, thi = scalar_enclosure(tail, Fraction(1, 10**15))
        doc = {
            "digits": exp.digits,
            "legal": exp.legal(),
            "value_approx": float((vlo + vhi) / 2),
            "tail_bound": float(thi),
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
        return 0
    if args.dio_cmd == "target":
        psi = (
            Psi.geometric(*[Fraction(v) for v in args.psi_geometric.split(",")])
            if args.psi_geometric
            else Psi.inverse_power(args.psi_power)
        )
        lo, hi = (Fraction(v) for v in args.interval.split(","))
        w = construct_target(_scalar(args.x), psi, (lo, hi), args.parity, args.count)
        ok = verify_target(_scalar(args.x), w, psi)
        doc = {
            "y_enclosure": [str(w.y_lo), str(w.y_hi)],
            "indices": [str(n) for n in w.indices],
            "parity": w.parity,
            "verified": bool(ok),
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
        return 0 if ok else 1
    raise ProblemError(f"unknown dio subcommand {args.dio_cmd}")


def cmd_reduce(args) -> int:
    from .reduction import (
        SuffixScanOracle,
        build_instance,
        critical_inequality_holds,
        stability_index,
    )

    cos_theta = _scalar(args.cos_theta)
    cos_phi = _scalar(args.cos_phi)
    r = Fraction(args.r)
    inst = build_instance(cos_theta, cos_phi, r)
    if args.reduce_cmd == "build":
        doc = {
            "order": 5,
            "recurrence": [format_scalar(c) for c in inst.recurrence.coeffs],
            "initialisation": [format_scalar(c) for c in inst.init],
            "S": [[format_scalar(x) for x in row] for row in inst.nb.S],
            "query": "robust-uniform-ultimate",
        }
        text = json.dumps(doc, sort_keys=True, indent=2)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        print(text)
        return 0
    if args.reduce_cmd == "scan":
        eps = Fraction(args.eps)
        N = stability_index(r, eps)
        oracle = SuffixScanOracle(horizon=args.horizon)
        verdict = oracle(inst, N)
        from .angles import pi_enclosure
        from .scalars import sqrt_bounds

        pi_lo, pi_hi = pi_enclosure(Fraction(1, 10**12))
        s_lo, s_hi = sqrt_bounds(7 * r, Fraction(1, 10**12))
        doc = {
            "suffix_holds": bool(verdict),
            "N": N,
            "horizon": args.horizon,
            "oracle": "scan (heuristic, non-rigorous)",
            "implied_bound": (
                {"liminf_at_least": str((1 - eps) * s_lo / (4 * pi_hi))}
                if verdict
                else {"liminf_at_most": str(s_hi / ((1 - eps) * 4 * pi_lo))}
            ),
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
        return 0
    raise ProblemError(f"unknown reduce subcommand {args.reduce_cmd}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="robustlrs",
        description="exact robust-positivity deciders and Diophantine tooling",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("decide", help="decide a problem file")
    p.add_argument("file")
    p.add_argument("--falsify", action="store_true")
    p.add_argument("--horizon", type=int, default=10_000)
    p.add_argument("--samples", type=int, default=1_000)
    p.add_argument("--seed", type=int, default=20240517)
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("verify", help="replay a NO certificate exactly")
    p.add_argument("file")
    p.add_argument("certificate")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("dio", help="Diophantine utilities")
    dsub = p.add_subparsers(dest="dio_cmd", required=True)
    pc = dsub.add_parser("cf")
    pc.add_argument("--x", required=True)
    pc.add_argument("--depth", type=int, default=20)
    pl = dsub.add_parser("linf")
    pl.add_argument("--t", required=True)
    pl.add_argument("--s", default="0")
    pl.add_argument("--n-max", type=int, default=10**6)
    pl.add_argument("--infimum", action="store_true", help="estimate the inf, not the liminf")
    pl.add_argument("--csv")
    po = dsub.add_parser("ostrowski")
    po.add_argument("--y", required=True)
    po.add_argument("--base", default="golden")
    po.add_argument("--depth", type=int, default=30)
    pt = dsub.add_parser("target")
    pt.add_argument("--x", required=True)
    pt.add_argument("--parity", choices=["even", "odd"], required=True)
    pt.add_argument("--interval", default="0.3,0.4")
    pt.add_argument("--count", type=int, default=20)
    pt.add_argument("--psi-power", type=int, default=2)
    pt.add_argument("--psi-geometric", help="c,beta for a geometric psi")
    p.set_defaults(fn=cmd_dio)

    p = sub.add_parser("reduce", help="hardness-instance builder")
    rsub = p.add_subparsers(dest="reduce_cmd", required=True)
    pb = rsub.add_parser("build")
    pb.add_argument("--cos-theta", required=True)
    pb.add_argument("--cos-phi", required=True)
    pb.add_argument("-r", required=True)
    pb.add_argument("--out")
    ps = rsub.add_parser("scan")
    ps.add_argument("--cos-theta", required=True)
    ps.add_argument("--cos-phi", required=True)
    ps.add_argument("-r", required=True)
    ps.add_argument("--eps", default="1/10")
    ps.add_argument("--horizon", type=int, default=20_000)
    p.set_defaults(fn=cmd_reduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ProblemError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 3
    except InvalidInputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
