"""Evaluators for every terminating series family used by the catalog.

Ordinary families are summed in exact rational arithmetic; elliptic families
in complex double precision.  Multi-indices are iterated in colexicographic
order and every Pochhammer / shifted factorial is read from a per-axis table,
so one term costs O(n^2) multiplications.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .brackets import (
    EllipticParams,
    as_rational,
    bracket_factorial_table,
    gamma_real,
    pochhammer,
)
from .errors import ConstraintError, PoleError, RangeError

EPS = np.finfo(float).eps
BALANCE_TOL = 1e-12
DEFAULT_POLE_FLOOR = 1e-9


# --------------------------------------------------------------------------
# multi-index iteration


def rectangular_range(m: Sequence[int]):
    """All gamma with 0 <= gamma_i <= m_i, first index fastest (colex)."""
    for rev in itertools.product(*(range(mi + 1) for mi in reversed(m))):
        yield tuple(reversed(rev))


def triangular_range(n: int, N: int):
    """All gamma in N^n with |gamma| <= N, ordered by length then colex."""
    for length in range(N + 1):
        for rev in _compositions(n, length):
            yield tuple(reversed(rev))


def _compositions(n, total):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


# --------------------------------------------------------------------------
# ordinary series


def _poch_table(c: Fraction, kmax: int) -> list[Fraction]:
    out = [Fraction(1)]
    for j in range(kmax):
        out.append(out[-1] * (c + j))
    return out


def _check_den(c: Fraction, kmax: int, label: str):
    # [c]_k vanishes for some k <= kmax iff c is an integer in [1-kmax, 0]
    if c.denominator == 1 and 1 - kmax <= c <= 0:
        raise PoleError(f"denominator [{label}]_k vanishes at k={1 - int(c)} ({label}={c})", label)


def eval_4f3_terminating(N: int, a: Sequence, d: Sequence) -> Fraction:
    """Terminating balanced 4F3(-N, a1, a2, a3; d1, d2, d3; 1), exact."""
    a = [as_rational(v) for v in a]
    d = [as_rational(v) for v in d]
    if len(a) != 3 or len(d) != 3:
        raise ValueError("need three numerator and three denominator parameters")
    if N < 0:
        raise ConstraintError("N must be a non-negative integer")
    if sum(a) + 1 - N != sum(d):
        raise ConstraintError(f"balancing violated: a1+a2+a3+1-N - (d1+d2+d3) = {sum(a) + 1 - N - sum(d)}")
    for j, dj in enumerate(d, 1):
        _check_den(dj, N, f"d{j}")
    total = Fraction(0)
    term = Fraction(1)
    for k in range(N + 1):
        total += term
        num = (k - N) * (a[0] + k) * (a[1] + k) * (a[2] + k)
        den = (k + 1) * (d[0] + k) * (d[1] + k) * (d[2] + k)
        term = term * num / den if num else Fraction(0)
    return total


@dataclass(frozen=True)
class Series4F3An:
    """A_n 4F3 series

        sum_gamma Delta(x+gamma)/Delta(x) prod_{i,j} [b_j+x_i-x_j]_{g_i}/[1+x_i-x_j]_{g_i}
                  prod_i [c+x_i]_{g_i}/[d+x_i]_{g_i} [a1,a2]_{|g|}/[e1,e2]_{|g|}

    kind="rect": b_i = -m_i.  kind="tri": a1 = -N and the b_i are free.
    """

    kind: str
    b: tuple
    x: tuple
    a1: Fraction
    a2: Fraction
    e1: Fraction
    e2: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        if self.kind not in ("rect", "tri"):
            raise ValueError(f"unknown kind {self.kind!r}")
        for name in ("a1", "a2", "e1", "e2", "c", "d"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        object.__setattr__(self, "b", tuple(as_rational(v) for v in self.b))
        object.__setattr__(self, "x", tuple(as_rational(v) for v in self.x))
        if len(self.b) != len(self.x) or not self.x:
            raise ValueError("b and x must have the same positive length")

    @classmethod
    def rectangular(cls, m, x, a1, a2, e1, e2, c, d):
        return cls("rect", tuple(-as_rational(v) for v in m), tuple(x), a1, a2, e1, e2, c, d)

    @classmethod
    def triangular(cls, N, b, x, a, e1, e2, c, d):
        return cls("tri", tuple(b), tuple(x), -as_rational(N), a, e1, e2, c, d)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def m(self) -> tuple:
        return tuple(int(-bi) for bi in self.b)

    @property
    def N(self) -> int:
        return int(-self.a1)

    @property
    def balance_defect(self) -> Fraction:
        return self.a1 + self.a2 + sum(self.b) + self.c + 1 - self.d - self.e1 - self.e2

    def validate(self):
        if self.kind == "rect":
            if any(bi.denominator != 1 or bi > 0 for bi in self.b):
                raise ConstraintError("rectangular series needs b_i = -m_i with m_i in N")
        elif self.a1.denominator != 1 or self.a1 > 0:
            raise ConstraintError("triangular series needs a1 = -N with N in N")
        if self.balance_defect != 0:
            raise ConstraintError(f"balancing violated by {self.balance_defect}")
        if len(set(self.x)) != len(self.x):
            raise ConstraintError("variables x_i must be pairwise distinct")


def _vandermonde_ratio(x, gamma):
    num = Fraction(1)
    den = Fraction(1)
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            num *= x[i] + gamma[i] - x[j] - gamma[j]
            den *= x[i] - x[j]
    return num / den


def eval_an_4f3(spec: Series4F3An) -> Fraction:
    spec.validate()
    n, x, b = spec.n, spec.x, spec.b
    if spec.kind == "rect":
        bounds = spec.m
        lmax = sum(bounds)
        gammas = rectangular_range(bounds)
    else:
        lmax = spec.N
        bounds = (lmax,) * n
        gammas = triangular_range(n, lmax)

    # preflight every denominator over the whole range
    for i in range(n):
        for j in range(n):
            if i != j:
                _check_den(1 + x[i] - x[j], bounds[i], f"1+x{i + 1}-x{j + 1}")
        _check_den(spec.d + x[i], bounds[i], f"d+x{i + 1}")
    _check_den(spec.e1, lmax, "e1")
    _check_den(spec.e2, lmax, "e2")

    axis = []
    for i in range(n):
        g = bounds[i]
        tab = [Fraction(1)] * (g + 1)
        for j in range(n):
            num = _poch_table(b[j] + x[i] - x[j], g)
            den = _poch_table(1 + x[i] - x[j], g)
            tab = [t * p / q for t, p, q in zip(tab, num, den)]
        num = _poch_table(spec.c + x[i], g)
        den = _poch_table(spec.d + x[i], g)
        axis.append([t * p / q for t, p, q in zip(tab, num, den)])
    lt = [
        p1 * p2 / (q1 * q2)
        for p1, p2, q1, q2 in zip(
            _poch_table(spec.a1, lmax),
            _poch_table(spec.a2, lmax),
            _poch_table(spec.e1, lmax),
            _poch_table(spec.e2, lmax),
        )
    ]

    total = Fraction(0)
    for gamma in gammas:
        term = lt[sum(gamma)]
        if not term:
            continue
        for i in range(n):
            term *= axis[i][gamma[i]]
            if not term:
                break
        else:
            total += term * _vandermonde_ratio(x, gamma)
    return total


def an_4f3_term(spec: Series4F3An, gamma) -> Fraction:
    """Single term of the A_n 4F3 sum at an arbitrary multi-index (no range bound)."""
    x, b = spec.x, spec.b
    n = len(x)
    term = _vandermonde_ratio(x, gamma)
    for i in range(n):
        for j in range(n):
            term *= pochhammer(b[j] + x[i] - x[j], gamma[i]) / pochhammer(1 + x[i] - x[j], gamma[i])
        term *= pochhammer(spec.c + x[i], gamma[i]) / pochhammer(spec.d + x[i], gamma[i])
    L = sum(gamma)
    return term * pochhammer(spec.a1, L) * pochhammer(spec.a2, L) / (
        pochhammer(spec.e1, L) * pochhammer(spec.e2, L)
    )


# --------------------------------------------------------------------------
# elliptic series


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    error: float
    terms: int


def _ell_den_table(arg, kmax, ep, floor, label):
    if kmax > 0:
        step = ep.brs(complex(arg) + ep.delta * np.arange(kmax))
        small = np.abs(step) < floor
        if np.any(small):
            k = int(np.argmax(small))
            raise PoleError(f"denominator [[{label}]]_k vanishes at factor k={k}", label)
    return bracket_factorial_table(arg, kmax, ep)


def _finite(value, what):
    if not np.all(np.isfinite(value)):
        raise RangeError(f"{what} is not finite in double precision")
    return value


def _check_balance(lhs, rhs, what):
    scale = max(1.0, abs(lhs), abs(rhs))
    if abs(lhs - rhs) > BALANCE_TOL * scale * 10:
        raise ConstraintError(f"{what} balancing violated: residual {abs(lhs - rhs):.3e}")


def eval_very_well_poised(s, params: Sequence[complex], N: int, ep: EllipticParams,
                          check_balance: bool = True, floor: float = DEFAULT_POLE_FLOOR,
                          detailed: bool = False):
    """Terminating balanced {r+3}E{r+2}(s; u_1..u_r) summed over k = 0..N.

    One of the u's is expected to be -N*delta; the sum is truncated at N
    explicitly rather than relying on an exactly vanishing bracket.
    """
    s = complex(s)
    params = [complex(u) for u in params]
    r = len(params)
    delta = ep.delta
    if check_balance:
        if r % 2 == 0:
            raise ConstraintError("balanced very-well-poised series needs an odd number of parameters")
        _check_balance(sum(params), (r - 1) / 2 * s + (r - 3) / 2 * delta, f"{r + 3}E{r + 2}")
        if min(abs(u + N * delta) for u in params) > 1e-9 * max(1.0, abs(N * delta)):
            raise ConstraintError("no parameter equals -N*delta; series does not terminate at N")
    if N < 0:
        raise ConstraintError("N must be non-negative")
    if abs(ep.br(s)) < floor:
        raise PoleError("[[s]] vanishes", "s")
    num = bracket_factorial_table(s, N, ep) / _ell_den_table(delta, N, ep, floor, "delta")
    for idx, u in enumerate(params):
        num = num * bracket_factorial_table(u, N, ep) / _ell_den_table(
            delta + s - u, N, ep, floor, f"delta+s-u{idx}")
    ks = np.arange(N + 1)
    wp = ep.brs(s + 2 * ks * delta) / ep.br(s)
    terms = _finite(wp * num, "very-well-poised term")
    value = complex(terms.sum())
    if not detailed:
        return value
    nfac = 4 * r + 6
    return SeriesValue(value, float(np.abs(terms).sum() * nfac * EPS), N + 1)


def eval_10e9(s, c: Sequence[complex], N: int, ep: EllipticParams, **kw):
    """10E9(s; c0..c5, -N delta) with balancing c0+..+c5 = (2+N) delta + 3 s."""
    if len(c) != 6:
        raise ValueError("10E9 needs six parameters c0..c5")
    _check_balance(sum(complex(v) for v in c), (2 + N) * ep.delta + 3 * complex(s), "10E9")
    return eval_very_well_poised(s, list(c) + [-N * ep.delta], N, ep, check_balance=False, **kw)


@dataclass(frozen=True)
class SeriesEnm:
    """Multiple elliptic series E^{n,m}.

    termination is ("rect", (m_1..m_n)) with a_i = -m_i delta, or ("tri", N)
    with some v_k = -N delta.
    """

    a: tuple
    x: tuple
    s: complex
    u: tuple
    v: tuple
    ep: EllipticParams
    termination: tuple
    floor: float = DEFAULT_POLE_FLOOR

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(complex(v) for v in self.a))
        object.__setattr__(self, "x", tuple(complex(v) for v in self.x))
        object.__setattr__(self, "u", tuple(complex(v) for v in self.u))
        object.__setattr__(self, "v", tuple(complex(v) for v in self.v))
        object.__setattr__(self, "s", complex(self.s))
        kind, bound = self.termination
        if kind == "rect":
            object.__setattr__(self, "termination", ("rect", tuple(int(v) for v in bound)))
        elif kind == "tri":
            object.__setattr__(self, "termination", ("tri", int(bound)))
        else:
            raise ValueError(f"unknown termination {kind!r}")
        if len(self.a) != len(self.x) or len(self.u) != len(self.v):
            raise ValueError("a/x and u/v must have matching lengths")

    @classmethod
    def rectangular(cls, m, x, s, u, v, ep, **kw):
        return cls(tuple(-mi * ep.delta for mi in m), tuple(x), s, tuple(u), tuple(v), ep,
                   ("rect", tuple(m)), **kw)

    @classmethod
    def triangular(cls, N, a, x, s, u, v, ep, **kw):
        return cls(tuple(a), tuple(x), s, tuple(u), tuple(v), ep, ("tri", N), **kw)

    @property
    def n(self):
        return len(self.x)

    @property
    def m(self):
        return len(self.u)

    def validate(self):
        delta = self.ep.delta
        kind, bound = self.termination
        if kind == "rect":
            if len(bound) != self.n or min(bound, default=0) < 0:
                raise ConstraintError("rectangular termination needs one m_i >= 0 per variable")
            for ai, mi in zip(self.a, bound):
                if abs(ai + mi * delta) > 1e-9 * max(1.0, abs(mi * delta)):
                    raise ConstraintError("rectangular series needs a_i = -m_i delta")
        else:
            if bound < 0:
                raise ConstraintError("N must be non-negative")
            if not any(abs(vk + bound * delta) <= 1e-9 * max(1.0, abs(bound * delta)) for vk in self.v):
                raise ConstraintError("triangular series needs some v_k = -N delta")
        lhs = sum(self.a) + sum(self.u) + sum(self.v)
        _check_balance(lhs, (self.m - 1) * delta + self.m * self.s, f"E^{{{self.n},{self.m}}}")


def _sum_enm(spec: SeriesEnm) -> SeriesValue:
    spec.validate()
    ep, floor = spec.ep, spec.floor
    n, x, a, s, delta = spec.n, spec.x, spec.a, spec.s, spec.ep.delta
    kind, bound = spec.termination
    if kind == "rect":
        bounds = bound
        lmax = sum(bounds)
        gammas = rectangular_range(bounds)
    else:
        lmax = bound
        bounds = (lmax,) * n
        gammas = triangular_range(n, lmax)

    axis = []
    for i in range(n):
        g = bounds[i]
        tab = np.ones(g + 1, dtype=np.complex128)
        for j in range(n):
            tab *= bracket_factorial_table(a[j] + x[i] - x[j], g, ep)
            tab /= _ell_den_table(delta + x[i] - x[j], g, ep, floor, f"delta+x{i + 1}-x{j + 1}")
        for k, (uk, vk) in enumerate(zip(spec.u, spec.v)):
            tab *= bracket_factorial_table(uk + x[i], g, ep)
            tab /= _ell_den_table(delta + s - vk + x[i], g, ep, floor, f"delta+s-v{k}+x{i + 1}")
        axis.append(tab)
    lt = np.ones(lmax + 1, dtype=np.complex128)
    for j in range(n):
        lt *= bracket_factorial_table(s + x[j], lmax, ep)
        lt /= _ell_den_table(delta + s - a[j] + x[j], lmax, ep, floor, f"delta+s-a{j + 1}+x{j + 1}")
    for k, (uk, vk) in enumerate(zip(spec.u, spec.v)):
        lt *= bracket_factorial_table(vk, lmax, ep)
        lt /= _ell_den_table(delta + s - uk, lmax, ep, floor, f"delta+s-u{k}")

    base = ep.brs(np.array([s + xi for xi in x]))
    if np.any(np.abs(base) < floor):
        raise PoleError("[[s+x_i]] vanishes", "s+x_i")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if pairs:
        vd0 = ep.brs(np.array([x[i] - x[j] for i, j in pairs]))
        if np.any(np.abs(vd0) < floor):
            raise PoleError("Delta[x] vanishes: x_i not distinct modulo the bracket zeros", "Delta[x]")
    gammas = list(gammas)
    G = np.array(gammas, dtype=np.int64).reshape(len(gammas), n)
    L = G.sum(axis=1)
    # well-poised factor and Vandermonde ratio, vectorised over all multi-indices
    wp_args = (L[:, None] + G) * delta + s + np.array(x)[None, :]
    wp = np.prod(ep.brs(wp_args) / base[None, :], axis=1)
    if pairs:
        vd_args = np.array([[x[i] + g[i] * delta - x[j] - g[j] * delta for i, j in pairs] for g in G])
        vd = np.prod(ep.brs(vd_args) / vd0[None, :], axis=1)
    else:
        vd = np.ones(len(G), dtype=np.complex128)
    ax = np.ones(len(G), dtype=np.complex128)
    for i in range(n):
        ax *= axis[i][G[:, i]]
    terms = _finite(vd * wp * ax * lt[L], "E^{n,m} term")
    nfac = 2 * n * n + 4 * n * spec.m + n * n + 4 * n + 4 * spec.m
    return SeriesValue(complex(terms.sum()), float(np.abs(terms).sum() * nfac * EPS), len(G))


def eval_enm(spec: SeriesEnm) -> complex:
    return _sum_enm(spec).value


def eval_enm_budget(spec: SeriesEnm) -> SeriesValue:
    return _sum_enm(spec)


def enm_term(spec: SeriesEnm, gamma) -> complex:
    """Single E^{n,m} term at an arbitrary multi-index (no range bound)."""
    ep, x, a, s, delta = spec.ep, spec.x, spec.a, spec.s, spec.ep.delta
    from .brackets import bracket_factorial as bf

    n = len(x)
    L = sum(gamma)
    t = 1 + 0j
    for i in range(n):
        for j in range(i + 1, n):
            t *= ep.br(x[i] + gamma[i] * delta - x[j] - gamma[j] * delta) / ep.br(x[i] - x[j])
        t *= ep.br((L + gamma[i]) * delta + s + x[i]) / ep.br(s + x[i])
        t *= bf(s + x[i], L, ep) / bf(delta + s - a[i] + x[i], L, ep)
        for j in range(n):
            t *= bf(a[j] + x[i] - x[j], gamma[i], ep) / bf(delta + x[i] - x[j], gamma[i], ep)
    for uk, vk in zip(spec.u, spec.v):
        t *= bf(vk, L, ep) / bf(delta + s - uk, L, ep)
        for i in range(n):
            t *= bf(uk + x[i], gamma[i], ep) / bf(delta + s - vk + x[i], gamma[i], ep)
    return t


# --------------------------------------------------------------------------
# Hardy's 3F2


@dataclass(frozen=True)
class HardyVector:
    x1: float
    x2: float
    x3: float
    x4: float
    x5: float

    @property
    def s(self) -> float:
        return self.x1 + self.x2 + self.x3 - self.x4 - self.x5

    def as_tuple(self):
        return (self.x1, self.x2, self.x3, self.x4, self.x5)


HARDY_TERMS = 400
HARDY_TAIL_TOL = 1e-10
HARDY_MARGIN = 0.1


def eval_hardy_3f2(v: HardyVector, terms: int = HARDY_TERMS) -> float:
    """3F2(2x1-s, 2x2-s, 2x3-s; 2x4, 2x5; 1) / (Gamma(s) Gamma(2x4) Gamma(2x5))."""
    s = v.s
    if not s > HARDY_MARGIN:
        raise ConstraintError(f"3F2 at unit argument needs s > {HARDY_MARGIN} (got s={s:g})")
    if terms < 1:
        raise ValueError("terms must be positive")
    a = [2 * v.x1 - s, 2 * v.x2 - s, 2 * v.x3 - s]
    e = [2 * v.x4, 2 * v.x5]
    for ej in e:
        if ej <= 0 and abs(ej - round(ej)) < 1e-12:
            raise PoleError(f"denominator parameter {ej} is a non-positive integer", "2x4/2x5")
    total = 0.0
    term = 1.0
    k = 0
    for k in range(terms):
        total += term
        term *= (a[0] + k) * (a[1] + k) * (a[2] + k) / ((k + 1) * (e[0] + k) * (e[1] + k))
        if term == 0.0:
            break
    else:
        # remaining terms decay like k^(-1-s): bound the tail by the integral
        tail = abs(term) * terms / s
        if tail > HARDY_TAIL_TOL * max(1.0, abs(total)):
            raise ConstraintError(f"3F2 tail estimate {tail:.2e} exceeds {HARDY_TAIL_TOL:g}")
    return total / (gamma_real(s) * gamma_real(e[0]) * gamma_real(e[1]))
