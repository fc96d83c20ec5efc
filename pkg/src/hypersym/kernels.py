"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Only two loops are hot enough to matter: the theta product behind the
elliptic bracket and the batched integer matrix products used by group
closure.  Each kernel has a ``*_numpy`` twin so the two can be compared
(see ``benchmarks/bench_kernels.py``).
"""

import numpy as np

from ._jit import USE_NUMBA, njit

THETA_TOL = 1e-16
_MAX_THETA_TERMS = 4000


def theta_bracket_numpy(x, nome, tol=THETA_TOL):
    x = np.asarray(x, dtype=np.complex128)
    out = np.sin(np.pi * x)
    q = complex(nome) ** 2
    c2 = np.cos(2.0 * np.pi * x)
    qk = 1.0 + 0.0j
    for _ in range(_MAX_THETA_TERMS):
        qk *= q
        delta = -2.0 * qk * c2 + qk * qk
        out = out * (1.0 + delta)
        if np.all(np.abs(delta) < tol):
            break
    return out


@njit
def _theta_bracket_jit(x, nome, tol):
    n = x.shape[0]
    out = np.empty(n, dtype=np.complex128)
    q = nome * nome
    for i in range(n):
        xi = x[i]
        val = np.sin(np.pi * xi)
        c2 = np.cos(2.0 * np.pi * xi)
        qk = 1.0 + 0.0j
        for _ in range(_MAX_THETA_TERMS):
            qk *= q
            delta = -2.0 * qk * c2 + qk * qk
            val *= 1.0 + delta
            if abs(delta) < tol:
                break
        out[i] = val
    return out


def theta_bracket(x, nome, tol=THETA_TOL):
    """Odd theta product sin(pi x) prod_k (1 - 2 p^2k cos(2 pi x) + p^4k)."""
    if not USE_NUMBA:
        return theta_bracket_numpy(x, nome, tol)
    arr = np.ascontiguousarray(np.asarray(x, dtype=np.complex128).ravel())
    return _theta_bracket_jit(arr, complex(nome), float(tol)).reshape(np.shape(x))


def batch_matmul_numpy(gens, frontier):
    """All products g @ f, shape (len(gens) * len(frontier), n, n), gens-major."""
    n = gens.shape[-1]
    return np.matmul(gens[:, None, :, :], frontier[None, :, :, :]).reshape(-1, n, n)


@njit
def _batch_matmul_jit(gens, frontier):
    g, n, _ = gens.shape
    f = frontier.shape[0]
    out = np.zeros((g * f, n, n), dtype=np.int64)
    for a in range(g):
        for b in range(f):
            k = a * f + b
            for i in range(n):
                for l in range(n):
                    gil = gens[a, i, l]
                    if gil != 0:
                        for j in range(n):
                            out[k, i, j] += gil * frontier[b, l, j]
    return out


def batch_matmul(gens, frontier):
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    frontier = np.ascontiguousarray(frontier, dtype=np.int64)
    if not USE_NUMBA:
        return batch_matmul_numpy(gens, frontier)
    return _batch_matmul_jit(gens, frontier)
