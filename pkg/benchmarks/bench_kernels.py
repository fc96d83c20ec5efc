"""numba vs pure-numpy timings for the two hot kernels, plus group closure.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The per-kernel rows call both implementations directly in one process.  The
closure row runs W(E6) enumeration in two subprocesses, one of them with
HYPERSYM_DISABLE_NUMBA=1, so it measures the switch end to end.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hypersym import kernels
from hypersym._jit import USE_NUMBA
from hypersym.groups import e6_generators


def best_of(fn, repeat):
    fn()  # warm-up (and JIT compile)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_theta(repeat):
    rng = np.random.default_rng(0)
    x = rng.uniform(-2, 2, 20000) + 1j * rng.uniform(-2, 2, 20000)
    nome = 0.2 + 0j
    a = kernels.theta_bracket_numpy(x, nome)
    b = kernels._theta_bracket_jit(x, nome, kernels.THETA_TOL)
    agree = float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300)))
    t_np = best_of(lambda: kernels.theta_bracket_numpy(x, nome), repeat)
    t_nb = best_of(lambda: kernels._theta_bracket_jit(x, nome, kernels.THETA_TOL), repeat)
    return "theta bracket (20000 points)", t_np, t_nb, agree


def bench_theta_small(repeat):
    # the shape the series code actually uses: many calls on a few points
    rng = np.random.default_rng(1)
    xs = [rng.uniform(-2, 2, 8) + 1j * rng.uniform(-2, 2, 8) for _ in range(2000)]
    nome = 0.2 + 0j
    agree = 0.0
    for x in xs[:50]:
        a = kernels.theta_bracket_numpy(x, nome)
        b = kernels._theta_bracket_jit(x, nome, kernels.THETA_TOL)
        agree = max(agree, float(np.max(np.abs(a - b) / np.abs(a))))
    t_np = best_of(lambda: [kernels.theta_bracket_numpy(x, nome) for x in xs], repeat)
    t_nb = best_of(lambda: [kernels._theta_bracket_jit(x, nome, kernels.THETA_TOL) for x in xs], repeat)
    return "theta bracket (2000 calls x 8 pts)", t_np, t_nb, agree


def bench_matmul(repeat):
    gens = np.stack(list(e6_generators().values()))
    rng = np.random.default_rng(0)
    frontier = rng.integers(-3, 4, size=(4000, 8, 8)).astype(np.int64)
    a = kernels.batch_matmul_numpy(gens, frontier)
    b = kernels._batch_matmul_jit(gens, frontier)
    agree = float(np.max(np.abs(a - b)))
    t_np = best_of(lambda: kernels.batch_matmul_numpy(gens, frontier), repeat)
    t_nb = best_of(lambda: kernels._batch_matmul_jit(gens, frontier), repeat)
    return "batch matmul (6 x 4000 8x8)", t_np, t_nb, agree


CLOSURE = ("import time; from hypersym.groups import Group, e6_generators; Group(e6_generators()); "
           "t = time.perf_counter(); g = Group(e6_generators()); print(time.perf_counter() - t, g.order)")


def bench_closure():
    out = {}
    for label, flag in (("numba", ""), ("numpy", "1")):
        env = dict(os.environ, HYPERSYM_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", CLOSURE], env=env, capture_output=True, text=True, check=True)
        t, order = res.stdout.split()
        out[label] = (float(t), int(order))
    agree = 0.0 if out["numba"][1] == out["numpy"][1] == 51840 else float("nan")
    return "W(E6) closure (51840 elements)", out["numpy"][0], out["numba"][0], agree


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not USE_NUMBA:
        sys.exit("numba is disabled in this process; unset HYPERSYM_DISABLE_NUMBA to compare")
    rows = [bench_theta(args.repeat), bench_theta_small(args.repeat), bench_matmul(args.repeat), bench_closure()]
    print(f"{'kernel':34s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s} {'max rel diff':>12s}")
    for name, t_np, t_nb, agree in rows:
        print(f"{name:34s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f} {agree:12.1e}")


if __name__ == "__main__":
    main()
