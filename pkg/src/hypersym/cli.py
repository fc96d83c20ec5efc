"""Command line: hypersym {verify,groups,eval,typos}.

Exit codes: 0 when everything passes, 1 on any failure, 2 on a usage error.
The JSON report goes to --out, or to stdout; progress and tables go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .errors import GrowthError, HypersymError
from .report import dumps, make_report
from .runner import RunConfig, effective_jobs, run_typos, run_verify

LOW_CONFIDENCE = 10

FAMILIES = {
    "4f3": "F4", "an4f3": "F4_Rect", "an4f3-tri": "F4_Tri", "10e9": "E10",
    "enm": "Enm_Rect", "enm-tri": "Enm_Tri",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--samples", type=int, default=None,
                        help="points per identity (verify: 100) or per reading (typos: 50)")
    common.add_argument("--n-max", dest="n_max", type=int, default=3, help="dimension bound n")
    common.add_argument("--m-max", dest="m_max", type=int, default=3, help="bound on each m_i")
    common.add_argument("--N-max", dest="N_max", type=int, default=6, help="length bound N")
    common.add_argument("--nome", type=parse_complex, default=0.2 + 0j, help="theta nome p, |p| < 1")
    common.add_argument("--delta", type=parse_complex, default=0.31 + 0.07j, help="elliptic shift delta")
    common.add_argument("--tol", type=float, default=1e-8, help="relative tolerance (elliptic)")
    common.add_argument("--filter", default=None, help="identity name glob(s), comma separated")
    common.add_argument("--out", default=None, help="report path (default: stdout)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes; HYPERSYM_JOBS overrides")

    p = _Parser(prog="hypersym", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("verify", parents=[common], help="run the identity suite and structural checks")
    sub.add_parser("groups", parents=[common], help="certify group orders, relations and cosets")
    ev = sub.add_parser("eval", parents=[common], help="evaluate one series")
    ev.add_argument("family", help="one of: " + ", ".join(FAMILIES))
    ev.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                    help="slot or list value, e.g. a1=1/2, x=0,1/3, m=1,2, N=3")
    ev.add_argument("--params", default=None, metavar="FILE", help="JSON object of parameters")
    sub.add_parser("typos", parents=[common], help="resolve ambiguous printed tokens")
    return p


def _config(args, default_samples) -> RunConfig:
    samples = args.samples if args.samples is not None else default_samples
    try:
        jobs = effective_jobs(args.jobs)
        return RunConfig(seed=args.seed, samples=samples, n_max=args.n_max, m_max=args.m_max,
                         N_max=args.N_max, nome=args.nome, delta=args.delta, tol=args.tol,
                         filter=args.filter, jobs=jobs)
    except ValueError as ex:
        raise UsageError(str(ex)) from None


def _warnings(cfg: RunConfig) -> list[str]:
    if cfg.samples < LOW_CONFIDENCE:
        return [f"low confidence: only {cfg.samples} sample(s) per item"]
    return []


def cmd_verify(args):
    cfg = _config(args, 100)
    try:
        res = run_verify(cfg)
    except ValueError as ex:
        raise UsageError(str(ex)) from None
    for row in res["identities"]:
        extra = f" worst {row['worst_residual']:.1e}" if row.get("worst_residual") is not None else ""
        _log(f"{row['identity']:10s} {row['passes']}/{row['samples']} {row['status'].upper()}{extra}")
    for row in res["checks"]:
        if row["status"] != "pass":
            _log(f"{row['check']} {row['name']} {row['status'].upper()}")
    status = "pass" if res["failures"] == 0 else "fail"
    return cfg, make_report("verify", cfg.to_json(), status, res, _warnings(cfg))


def cmd_groups(args):
    from .groups import certify_all
    cfg = _config(args, 1)
    try:
        res = certify_all()
    except GrowthError as ex:
        return cfg, make_report("groups", cfg.to_json(), "error", {}, error=str(ex))
    ok = True
    for section, rows in res.items():
        for r in rows:
            ok &= r.passed
            _log(f"{r.name} {r.observed} {r.status.upper()}")
    out = {k: [r.to_json() for r in rows] for k, rows in res.items()}
    return cfg, make_report("groups", cfg.to_json(), "pass" if ok else "fail", out)


def cmd_typos(args):
    cfg = _config(args, 50)
    warn = _warnings(cfg)
    for w in warn:
        _log("warning: " + w)
    res = run_typos(cfg)
    ok = True
    for row in res["ambiguities"] + res["corrections"]:
        best = max(row["candidates"], key=lambda c: c["passes"])
        _log(f"{row['identity']:10s} {row['status']:9s} {best['reading']} {best['passes']}/{row['samples']}")
        ok &= row["status"] == "UNIQUE"
    return cfg, make_report("typos", cfg.to_json(), "pass" if ok else "fail", res, warn)


def _scalar(text, exact):
    if isinstance(text, (list, tuple)) and len(text) == 2 and not exact:
        return complex(float(text[0]), float(text[1]))
    if exact:
        return Fraction(str(text))
    return parse_complex(str(text))


def parse_params(shape: str, items: dict):
    from .shapes import SHAPES, ParamVector
    sh = SHAPES[shape]
    values, lists, N = {}, {}, None
    list_names = {name for name, _ in sh.lists}
    for key, raw in items.items():
        if key == "N":
            N = int(raw)
        elif key in list_names:
            parts = raw if isinstance(raw, list) else [t for t in str(raw).split(",") if t != ""]
            if key == "m":
                lists[key] = [int(t) for t in parts]
            else:
                lists[key] = [_scalar(t, sh.exact) for t in parts]
        elif key in sh.slots:
            values[key] = _scalar(raw, sh.exact)
        else:
            raise UsageError(f"{shape} has no parameter {key!r}")
    missing = [s for s in sh.slots if s not in values and s != sh.solve]
    if missing:
        raise UsageError(f"missing parameters: {', '.join(missing)}")
    if sh.length == "N" and N is None:
        raise UsageError("missing parameter N")
    if "m" in list_names and "m" not in lists:
        raise UsageError("missing list m")
    n = len(lists.get("m", lists.get("b", lists.get("a", []))))
    if "x" in list_names and "x" not in lists:
        lists["x"] = [Fraction(0) if sh.exact else 0j] * n
    sizes = {len(v) for k, v in lists.items() if k in ("m", "x", "b", "a")}
    if len(sizes) > 1:
        raise UsageError("per-index lists have different lengths")
    solve = sh.solve is not None and sh.solve not in values
    if solve:
        values[sh.solve] = Fraction(0) if sh.exact else 0j
    return ParamVector(shape, values, lists, N if sh.length == "N" else None), solve


def format_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    v = complex(v)
    return f"{v.real:.16g}{v.imag:+.16g}i"


def cmd_eval(args):
    from .brackets import BracketClass, EllipticParams
    from .shapes import SHAPES, check_balancing, evaluate, solve_balancing
    cfg = _config(args, 1)
    shape = FAMILIES.get(args.family.lower(), args.family)
    if shape not in SHAPES or shape in ("VWP", "Enm_Dual"):
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    items = {}
    if args.params:
        try:
            with open(args.params) as fh:
                items.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as ex:
            raise UsageError(f"cannot read {args.params}: {ex}") from None
    for item in args.param:
        if "=" not in item:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        items[k.strip()] = v.strip()
    try:
        p, solve = parse_params(shape, items)
    except (ValueError, ZeroDivisionError) as ex:
        raise UsageError(str(ex)) from None
    ep = None if SHAPES[shape].exact else EllipticParams(cfg.delta, BracketClass.theta(cfg.nome))
    conf = cfg.to_json()
    try:
        p = solve_balancing(p, ep) if solve else p
        check_balancing(p, ep)
        val = evaluate(p, ep)
    except (HypersymError, ZeroDivisionError) as ex:
        _log(f"error: {ex}")
        return cfg, make_report("eval", conf, "error", {"shape": shape, "point": p.to_json()}, error=str(ex))
    text = format_value(val.value)
    _log(text + ("" if SHAPES[shape].exact else f"  (error budget {val.error:.1e})"))
    res = {"shape": shape, "point": p.to_json(), "value": text, "exact": SHAPES[shape].exact,
           "error_budget": float(val.error), "terms": int(val.terms)}
    return cfg, make_report("eval", conf, "pass", res)


COMMANDS = {"verify": cmd_verify, "groups": cmd_groups, "eval": cmd_eval, "typos": cmd_typos}


def _log(msg):
    print(msg, file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        t0 = time.perf_counter()
        _, report = COMMANDS[args.command](args)
    except UsageError as ex:
        print(f"usage error: {ex}", file=sys.stderr)
        return 2
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    _log(f"{args.command}: {report['status']} in {time.perf_counter() - t0:.1f}s")
    return 0 if report["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
