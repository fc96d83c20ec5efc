"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` (or as a script) to see the
lines; each test also fails on its own when a criterion or runtime limit
is missed.
"""

import sys
import time

import numpy as np
import pytest

from hypersym import checks, groups
from hypersym.brackets import BracketClass, EllipticParams, bracket_array, bracket_factorial
from hypersym.catalog import catalog
from hypersym.runner import RunConfig, run_verify

EXACT = [t.name for t in catalog() if t.exact]
ELLIPTIC = ["EBaileyT1", "mn1EBDT1", "BaileyT3", "BaileyT4", "EBDT1", "m1EBDT", "MN", "KN",
            "T20", "T30", "T11", "T21", "T31", "LMN", "LKN", "LMNKN"]
CLASSES = [BracketClass.rational(), BracketClass.trigonometric(), BracketClass.theta(0.2)]


def _rows_ok(rows):
    bad = [r.name for r in rows if not r.passed]
    return not bad, f"{len(rows) - len(bad)}/{len(rows)} rows" + (f", failing: {bad[:3]}" if bad else "")


def crit_orders():
    return _rows_ok(groups.order_checks())


def crit_relations():
    return _rows_ok(groups.relation_checks() + groups.e6_pairwise_orders())


def crit_cosets():
    rows = groups.coset_checks()
    ok, detail = _rows_ok(rows)
    counts = [r.observed for r in rows if r.name.endswith("orbit count")]
    return ok and counts == [4, 8, 3, 5, 8], f"{detail}, counts {counts}"


def crit_exact_suite():
    cfg = RunConfig(samples=100, n_max=3, m_max=3, N_max=6, filter=",".join(EXACT))
    res = run_verify(cfg, structural=False)
    inv = checks.check_invariants(0, 100, forms=[checks.INVARIANT_FORMS["Hardy4F3"],
                                                 checks.INVARIANT_FORMS["Norm4F3An"]])
    ids = res["identities"]
    ok = len(ids) == 14 and all(r["passes"] == r["samples"] == 100 for r in ids) and all(r.passed for r in inv)
    fails = [r["identity"] for r in ids if r["failures"]] + [r.name for r in inv if not r.passed]
    return ok, f"{len(ids)} identities x 100 points, {len(inv)} invariances, failing: {fails}"


def crit_elliptic_suite():
    cfg = RunConfig(samples=50, n_max=2, m_max=2, N_max=4, filter=",".join(ELLIPTIC))
    res = run_verify(cfg, structural=False)
    ids = res["identities"]
    worst = max(r["worst_residual"] for r in ids)
    ok = len(ids) == len(ELLIPTIC) and all(r["passes"] == r["samples"] == 50 for r in ids) and worst < 1e-8
    return ok, f"{len(ids)} identities x 50 points, worst residual {worst:.1e}"


def crit_degenerations():
    return _rows_ok(checks.check_degenerations(0, 20))


def crit_compositions():
    return _rows_ok(checks.verify_composition_consistency(0, 20))


def crit_hardy():
    row = checks.check_hardy_s5(0, points=10, perms=20, tol=1e-8)
    return row.passed, f"worst relative deviation {row.detail['worst_deviation']:.1e}"


def crit_brackets():
    rng = np.random.default_rng(1)
    worst = {"riemann": 0.0, "odd": 0.0, "split": 0.0}
    for cls in CLASSES:
        x, y, u, v = rng.uniform(-1, 1, (4, 1000)) + 1j * rng.uniform(-0.5, 0.5, (4, 1000))
        br = lambda z: bracket_array(z, cls)
        lhs = br(x + y) * br(x - y) * br(u + v) * br(u - v) - br(x + u) * br(x - u) * br(y + v) * br(y - v)
        rhs = br(x + v) * br(x - v) * br(u + y) * br(u - y)
        worst["riemann"] = max(worst["riemann"], float(np.max(np.abs(lhs - rhs) / np.maximum(1, np.abs(lhs)))))
        worst["odd"] = max(worst["odd"], float(np.max(np.abs(br(-x) + br(x)) / np.maximum(1, np.abs(br(x))))))
        ep = EllipticParams(0.31 + 0.07j, cls)
        for z, j, k in zip(x[:200], rng.integers(0, 6, 200), rng.integers(0, 6, 200)):
            w = bracket_factorial(z, j + k, ep)
            s = bracket_factorial(z, j, ep) * bracket_factorial(z + j * ep.delta, k, ep)
            worst["split"] = max(worst["split"], abs(w - s) / max(abs(w), 1e-300))
    ok = worst["riemann"] < 1e-10 and worst["odd"] < 1e-12 and worst["split"] < 1e-10
    return ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items())


def crit_typos():
    res = checks.resolve_typos(0, 50)
    flagged = res["ambiguities"]
    ok = len(flagged) == 4
    for r in flagged:
        if r["status"] == "UNIQUE":
            ok &= max(c["passes"] for c in r["candidates"]) == 50
        else:
            ok &= r["status"] == "OPEN"
    ok &= all(r["status"] != "MISMATCH" for r in res["corrections"])
    return ok, "; ".join(f"{r['identity']} {r['status']}" for r in flagged)


CRITERIA = [
    ("group orders", crit_orders, 10),
    ("Coxeter relations", crit_relations, None),
    ("double cosets", crit_cosets, 30),
    ("exact identity suite", crit_exact_suite, 60),
    ("elliptic identity suite", crit_elliptic_suite, None),
    ("degeneration matrix", crit_degenerations, None),
    ("composition closure", crit_compositions, None),
    ("Hardy S5 symmetry", crit_hardy, None),
    ("bracket layer", crit_brackets, None),
    ("typo resolution", crit_typos, None),
]


def evaluate(name, fn, limit):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    in_time = limit is None or dt < limit
    passed = bool(ok and in_time)
    budget = f" (limit {limit} s)" if limit else ""
    line = f"{'PASS' if passed else 'FAIL'}  {name}: {detail}; {dt:.1f} s{budget}"
    return passed, line


@pytest.mark.parametrize("name,fn,limit", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, fn, limit, capsys):
    passed, line = evaluate(name, fn, limit)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
