"""Run configuration and the verification work queue.

Work is split into tasks (an identity with a block of sample ids, or one
structural check).  Tasks are independent and keyed by name, so results are
the same whether they run in-process or in a worker pool, and in any order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass


from . import checks
from .brackets import BracketClass, EllipticParams
from .catalog import MAX_BUDGET, catalog, lookup, select, verify
from .sampling import Bounds, SamplingError, admissible, draw_point, stream

BLOCK = 25    # samples per identity task


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    samples: int = 100
    n_max: int = 3
    m_max: int = 3
    N_max: int = 6
    nome: complex = 0.2 + 0j
    delta: complex = 0.31 + 0.07j
    tol: float = 1e-8
    filter: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be positive")
        for name in ("n_max", "m_max", "N_max"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.tol <= 1e-2:
            raise ValueError("tolerance must lie in (0, 1e-2]")
        if not abs(self.nome) < 1:
            raise ValueError("nome must satisfy |nome| < 1")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")

    @property
    def bounds(self) -> Bounds:
        # elliptic runs keep the smaller default caps unless asked for less
        return Bounds(n_max=self.n_max, m_max=self.m_max, N_max=self.N_max,
                      n_max_elliptic=min(self.n_max, Bounds.n_max_elliptic),
                      N_max_elliptic=min(self.N_max, Bounds.N_max_elliptic))

    @property
    def elliptic(self) -> EllipticParams:
        return EllipticParams(self.delta, BracketClass.theta(self.nome))

    def to_json(self) -> dict:
        out = asdict(self)
        out["nome"] = [self.nome.real, self.nome.imag]
        out["delta"] = [self.delta.real, self.delta.imag]
        return out


def effective_jobs(requested: int) -> int:
    env = os.environ.get("HYPERSYM_JOBS")
    if env:
        try:
            val = int(env)
        except ValueError:
            raise ValueError(f"HYPERSYM_JOBS must be an integer, got {env!r}") from None
        if val < 1:
            raise ValueError("HYPERSYM_JOBS must be positive")
        return val
    return requested


# -- identity samples ---------------------------------------------------------------


@dataclass
class SampleOutcome:
    identity: str
    sample: int
    passed: bool
    residual: float | None
    rejected: int
    result: dict | None = None
    point: dict | None = None
    error: str | None = None


def run_sample(name: str, j: int, cfg: RunConfig) -> SampleOutcome:
    t = lookup(name)
    ep = None if t.exact else checks.elliptic_params(j, cfg.elliptic)
    rng = stream(cfg.seed, name, j)
    budget = None if t.exact else MAX_BUDGET
    b = cfg.bounds
    try:
        p, r, rej = admissible(lambda: draw_point(t.shape, rng, b, ep),
                               lambda p: verify(t, p, ep, cfg.tol, sample=j, max_budget=budget))
    except SamplingError as ex:
        return SampleOutcome(name, j, False, None, 0, error=str(ex))
    res = None if t.exact else float(r.residual)
    out = SampleOutcome(name, j, r.passed, res, rej)
    if not r.passed:
        out.result = r.to_json()
        out.point = p.to_json()
    return out


def _identity_task(name, start, stop, cfg):
    return [run_sample(name, j, cfg) for j in range(start, stop)]


def summarize_identity(name: str, outcomes: list[SampleOutcome]) -> dict:
    t = lookup(name)
    fails = [o for o in outcomes if not o.passed]
    residuals = [o.residual for o in outcomes if o.residual is not None]
    row = {"identity": name, "family": t.family, "shape": t.shape, "exact": t.exact,
           "samples": len(outcomes), "passes": len(outcomes) - len(fails), "failures": len(fails),
           "rejected_draws": int(sum(o.rejected for o in outcomes)),
           "status": "pass" if not fails else "fail"}
    if not t.exact:
        row["worst_residual"] = max(residuals) if residuals else None
    if fails:
        row["failed_samples"] = [{"sample": o.sample, "error": o.error, "result": o.result, "point": o.point}
                                 for o in fails[:5]]
    return row


# -- structural checks -------------------------------------------------------------


def _structural_tasks(cfg: RunConfig):
    ep = cfg.elliptic
    s, n = cfg.seed, cfg.samples
    tasks = []
    for form in checks.INVARIANT_FORMS.values():
        tasks.append(("invariant:" + form.name, checks.check_invariants, (s, n, cfg.tol, ep, [form])))
    for a, b in checks.DEGENERATIONS:
        tasks.append((f"degeneration:{a}", _one, (checks.check_degeneration, a, b, s, n, cfg.tol, ep)))
    tasks.append(("composition", checks.verify_composition_consistency, (s, max(20, min(n, 50)), cfg.tol, ep)))
    tasks.append(("hardy_s5", _one, (checks.check_hardy_s5, s, 10, 20, cfg.tol)))
    for t in catalog():
        tasks.append((f"canonicalization:{t.name}", checks.check_canonicalization,
                      (s, min(n, 20), cfg.tol, ep, [t.name])))
    return tasks


def _one(fn, *args):
    return [fn(*args)]


def _call(fn, args):
    return fn(*args)


def run_verify(cfg: RunConfig, structural: bool | None = None) -> dict:
    names = [t.name for t in select(cfg.filter)] if cfg.filter else [t.name for t in catalog()]
    if not names:
        raise ValueError(f"filter {cfg.filter!r} matches no identity")
    if structural is None:
        structural = cfg.filter is None
    jobs = effective_jobs(cfg.jobs)
    id_tasks = [(name, a, min(a + BLOCK, cfg.samples)) for name in names for a in range(0, cfg.samples, BLOCK)]
    st_tasks = _structural_tasks(cfg) if structural else []
    if jobs <= 1:
        id_res = [_identity_task(nm, a, b, cfg) for nm, a, b in id_tasks]
        st_res = [_call(fn, args) for _, fn, args in st_tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            f_id = [pool.submit(_identity_task, nm, a, b, cfg) for nm, a, b in id_tasks]
            f_st = [pool.submit(_call, fn, args) for _, fn, args in st_tasks]
            id_res = [f.result() for f in f_id]
            st_res = [f.result() for f in f_st]
    by_name = {}
    for (nm, _, _), outs in zip(id_tasks, id_res):
        by_name.setdefault(nm, []).extend(outs)
    identities = [summarize_identity(nm, sorted(by_name[nm], key=lambda o: o.sample)) for nm in sorted(names)]
    rows = [r.to_json() for res in st_res for r in res]
    failures = sum(r["failures"] for r in identities) + sum(r["status"] != "pass" for r in rows)
    return {"identities": identities, "checks": rows, "failures": int(failures)}


def run_typos(cfg: RunConfig) -> dict:
    return checks.resolve_typos(cfg.seed, cfg.samples, cfg.tol, cfg.elliptic)
