"""Random admissible parameter points.

Every (seed, label, sample id) triple gets its own Philox stream, so a
sample does not depend on which worker draws it or in what order.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .brackets import EllipticParams
from .errors import HypersymError
from .shapes import SHAPES, ParamVector, solve_balancing

MAX_RETRIES = 1000
MASK64 = (1 << 64) - 1


class SamplingError(HypersymError, RuntimeError):
    """No admissible point found within the retry cap."""


def stream(seed: int, *labels) -> np.random.Generator:
    words = [int(seed) & MASK64]
    for lab in labels:
        words.append(zlib.crc32(str(lab).encode()) if not isinstance(lab, int) else int(lab) & MASK64)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(words)))


@dataclass(frozen=True)
class Bounds:
    n_max: int = 3          # dimension bound, ordinary series
    m_max: int = 3          # bound on each m_i
    N_max: int = 6          # length bound, ordinary series
    n_max_elliptic: int = 2
    N_max_elliptic: int = 4
    dual_max: int = 2       # number of (u_k, v_k) pairs in the duality formulas
    height: int = 40        # |numerator|, denominator bound of random rationals
    re_span: float = 2.0    # real parts of complex parameters in [-re_span, re_span]
    im_span: float = 2.0    # imaginary parts in [-im_span, im_span]


def rational(rng, height=40) -> Fraction:
    return Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, height + 1)))


def cplx(rng, b: Bounds) -> complex:
    return complex(rng.uniform(-b.re_span, b.re_span), rng.uniform(-b.im_span, b.im_span))


def _distinct(draw, n):
    out = []
    while len(out) < n:
        v = draw()
        if v not in out:
            out.append(v)
    return out


def draw_point(shape: str, rng, b: Bounds = Bounds(), ep: EllipticParams | None = None,
               n: int | None = None, zero_x: bool = False, N: int | None = None,
               m: tuple | None = None, k: int | None = None) -> ParamVector:
    """One random point of the shape with the balancing condition solved.

    No pole screening happens here; see :func:`admissible`.
    """
    sh = SHAPES[shape]
    exact = sh.exact
    scalar = (lambda: rational(rng, b.height)) if exact else (lambda: cplx(rng, b))
    nmax = b.n_max if exact else b.n_max_elliptic
    Nmax = b.N_max if exact else b.N_max_elliptic
    if n is None:
        n = int(rng.integers(1, nmax + 1))
    values = {s: scalar() for s in sh.slots}
    lists = {}
    names = [name for name, _ in sh.lists]
    if "x" in names:
        lists["x"] = [Fraction(0) if exact else 0j] * n if zero_x else _distinct(scalar, n)
    if "m" in names:
        lists["m"] = list(m) if m is not None else [int(rng.integers(0, b.m_max + 1)) for _ in range(n)]
    for name in ("b", "a"):
        if name in names:
            lists[name] = [scalar() for _ in range(n)]
    if "u" in names:
        kk = k if k is not None else int(rng.integers(1, b.dual_max + 1))
        lists["u"] = [scalar() for _ in range(kk)]
        lists["v"] = [scalar() for _ in range(kk)]
    if sh.length == "N":
        if N is None:
            N = int(rng.integers(0, Nmax + 1))
    else:
        N = None
    p = ParamVector(shape, values, lists, N)
    return solve_balancing(p, ep)


def admissible(draw, check, retries: int = MAX_RETRIES, inadmissible=None):
    """Call check(draw()) until it does not raise an inadmissible error.

    Returns (point, check result, number of rejected draws).
    """
    if inadmissible is None:
        from .catalog import INADMISSIBLE as inadmissible
    for attempt in range(retries + 1):
        p = draw()
        try:
            return p, check(p), attempt
        except inadmissible:
            continue
    raise SamplingError(f"no admissible point after {retries} retries")
