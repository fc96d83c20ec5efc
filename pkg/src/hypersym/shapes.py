"""Series shapes: slot layout, balancing, symmetric slot groups and evaluation.

A *shape* is the concrete series a parameter point feeds.  Transformation
identities map a point of one shape to a point of the same (or, for the
duality formulas, another) shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from .brackets import EllipticParams
from .errors import ConstraintError
from .forms import LinearForm, lf
from .series import (
    Series4F3An,
    SeriesEnm,
    SeriesValue,
    eval_4f3_terminating,
    eval_an_4f3,
    eval_enm_budget,
    eval_very_well_poised,
)


@dataclass(frozen=True)
class ParamVector:
    """A point: named scalar slots, per-index lists, and the length N if any."""

    shape: str
    values: Mapping[str, object]
    lists: Mapping[str, tuple] = field(default_factory=dict)
    N: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))
        object.__setattr__(self, "lists", {k: tuple(v) for k, v in self.lists.items()})

    def __getitem__(self, key):
        return self.values[key]

    @property
    def n(self) -> int:
        for name in ("x", "b", "a"):
            if name in self.lists:
                return len(self.lists[name])
        return 1

    def replace(self, values=None, lists=None) -> ParamVector:
        vals = dict(self.values)
        vals.update(values or {})
        ls = dict(self.lists)
        ls.update(lists or {})
        return ParamVector(self.shape, vals, ls, self.N)

    def to_json(self) -> dict:
        out = {"shape": self.shape, "values": {k: encode(v) for k, v in self.values.items()}}
        if self.lists:
            out["lists"] = {k: [encode(v) for v in vs] for k, vs in self.lists.items()}
        if self.N is not None:
            out["N"] = self.N
        return out


def encode(v):
    """JSON encoding: exact rationals as "p/q", complex as [re, im]."""
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    return float(v)


@dataclass(frozen=True)
class Shape:
    name: str
    kind: str                   # "rational" | "elliptic"
    slots: tuple
    lists: tuple                # ((list name, index letter), ...)
    solve: str | None           # slot fixed by the balancing condition
    balancing: LinearForm | None
    symmetric: tuple            # groups of slots the series is symmetric in
    length: str                 # "N" (triangular) or "M" (rectangular)
    evaluate: Callable = field(repr=False, compare=False, default=None)

    @property
    def exact(self) -> bool:
        return self.kind == "rational"

    def list_index(self, name: str) -> str:
        return dict(self.lists)[name]


def environment(p: ParamVector, ep: EllipticParams | None = None) -> dict:
    """Scalar symbols a linear form may refer to at point p."""
    env = dict(p.values)
    if p.N is not None:
        env["N"] = p.N
    sums = {"m": "M", "b": "B", "a": "A", "u": "U", "v": "V"}
    for name, vals in p.lists.items():
        if name in sums:
            env[sums[name]] = sum(vals, Fraction(0) if SHAPES[p.shape].exact else 0)
    if "m" in p.lists:
        env["M"] = int(sum(p.lists["m"]))
    if ep is not None:
        d = ep.delta
        env["delta"] = d
        if p.N is not None:
            env["Ndelta"] = p.N * d
        if "M" in env:
            env["Mdelta"] = env["M"] * d
        if p.shape == "Enm_Tri":
            env["d0"] = -p.N * d
    return env


def index_environment(p: ParamVector, letter: str, i: int, ep: EllipticParams | None = None) -> dict:
    out = {}
    shape = SHAPES[p.shape]
    for name, idx in shape.lists:
        if idx == letter:
            out[f"{name}_{letter}"] = p.lists[name][i]
    if letter == "i" and "m" in p.lists and ep is not None:
        out["mdelta_i"] = p.lists["m"][i] * ep.delta
    return out


def index_count(p: ParamVector, letter: str) -> int:
    for name, idx in SHAPES[p.shape].lists:
        if idx == letter:
            return len(p.lists[name])
    return 0


def balance_defect(p: ParamVector, ep: EllipticParams | None = None):
    shape = SHAPES[p.shape]
    if p.shape == "Enm_Dual":
        env = environment(p, ep)
        K = len(p.lists["u"])
        return (env["A"] + env["U"] + env["V"] + env["c1"] + env["c2"] + env["d1"]
                - env["Ndelta"] - (K + 1) * env["delta"] - (K + 2) * env["s"])
    if shape.balancing is None:
        return 0
    return shape.balancing.evaluate(environment(p, ep))


def solve_balancing(p: ParamVector, ep: EllipticParams | None = None) -> ParamVector:
    """Return p with its designated slot set so that the balancing holds."""
    shape = SHAPES[p.shape]
    if shape.solve is None:
        return p
    zero = Fraction(0) if shape.exact else 0j
    p0 = p.replace({shape.solve: zero})
    d0 = balance_defect(p0, ep)
    coef = balance_defect(p.replace({shape.solve: zero + 1}), ep) - d0
    return p.replace({shape.solve: -d0 / coef})


def check_balancing(p: ParamVector, ep: EllipticParams | None = None, tol: float = 1e-10):
    d = balance_defect(p, ep)
    if SHAPES[p.shape].exact:
        if d != 0:
            raise ConstraintError(f"{p.shape} balancing violated by {d}")
    elif abs(d) > tol * max(1.0, *(abs(complex(v)) for v in p.values.values())):
        raise ConstraintError(f"{p.shape} balancing violated by {abs(d):.3e}")


def canonical_key(p: ParamVector, tol: float | None = None):
    """Slot values with each symmetric group sorted (exact shapes only)."""
    shape = SHAPES[p.shape]
    grouped = {s for g in shape.symmetric for s in g}
    key = [(s, p.values[s]) for s in shape.slots if s not in grouped]
    for g in shape.symmetric:
        key.append((g, tuple(sorted(p.values[s] for s in g))))
    return tuple(key)


# -- evaluation ------------------------------------------------------------------


def _exact(value) -> SeriesValue:
    return SeriesValue(value, 0.0, 0)


def _eval_f4(p, ep):
    v = p.values
    return _exact(eval_4f3_terminating(p.N, (v["a1"], v["a2"], v["a3"]), (v["d1"], v["d2"], v["d3"])))


def _eval_f4_rect(p, ep):
    v = p.values
    return _exact(eval_an_4f3(Series4F3An.rectangular(
        p.lists["m"], p.lists["x"], v["a1"], v["a2"], v["e1"], v["e2"], v["c"], v["d"])))


def _eval_f4_tri(p, ep):
    v = p.values
    return _exact(eval_an_4f3(Series4F3An.triangular(
        p.N, p.lists["b"], p.lists["x"], v["a"], v["e1"], v["e2"], v["c"], v["d"])))


def _eval_e10(p, ep):
    v = p.values
    c = [v[f"c{k}"] for k in range(6)] + [-p.N * ep.delta]
    return eval_very_well_poised(v["s"], c, p.N, ep, detailed=True)


def _eval_vwp(p, ep):
    return eval_very_well_poised(p.values["s"], list(p.lists["p"]) + [-p.N * ep.delta], p.N, ep,
                                 detailed=True)


def _eval_enm_rect(p, ep):
    v = p.values
    return eval_enm_budget(SeriesEnm.rectangular(
        p.lists["m"], p.lists["x"], v["s"], (v["c0"], v["c1"], v["c2"]), (v["d0"], v["d1"], v["d2"]), ep))


def _eval_enm_tri(p, ep):
    v = p.values
    return eval_enm_budget(SeriesEnm.triangular(
        p.N, p.lists["a"], p.lists["x"], v["s"], (v["c0"], v["c1"], v["c2"]),
        (-p.N * ep.delta, v["d1"], v["d2"]), ep))


def _eval_enm_dual(p, ep):
    v = p.values
    u = (v["c1"], v["c2"]) + p.lists["u"]
    w = (v["d1"], -p.N * ep.delta) + p.lists["v"]
    return eval_enm_budget(SeriesEnm.triangular(p.N, p.lists["a"], p.lists["x"], v["s"], u, w, ep))


SHAPES: dict[str, Shape] = {}


def _shape(name, kind, slots, lists, solve, balancing, symmetric, length, fn):
    SHAPES[name] = Shape(name, kind, tuple(slots.split()), tuple(lists), solve,
                         lf(balancing) if balancing else None,
                         tuple(tuple(g.split()) for g in symmetric), length, fn)


_shape("F4", "rational", "a1 a2 a3 d1 d2 d3", (), "d3", "a1+a2+a3+1-N-d1-d2-d3",
       ("a1 a2 a3", "d1 d2 d3"), "N", _eval_f4)
_shape("F4_Rect", "rational", "a1 a2 c d e1 e2", (("m", "i"), ("x", "i")), "e2", "a1+a2+c+1-M-d-e1-e2",
       ("a1 a2", "e1 e2"), "M", _eval_f4_rect)
_shape("F4_Tri", "rational", "a c d e1 e2", (("b", "i"), ("x", "i")), "e2", "a+B+c+1-N-d-e1-e2",
       ("e1 e2",), "N", _eval_f4_tri)
_shape("E10", "elliptic", "s c0 c1 c2 c3 c4 c5", (), "c5", "c0+c1+c2+c3+c4+c5-2delta-Ndelta-3s",
       ("c0 c1 c2 c3 c4 c5",), "N", _eval_e10)
_shape("VWP", "elliptic", "s", (("p", None),), None, None, (), "N", _eval_vwp)
_shape("Enm_Rect", "elliptic", "s c0 c1 c2 d0 d1 d2", (("m", "i"), ("x", "i")), "d2",
       "c0+c1+c2+d0+d1+d2-Mdelta-2delta-3s", ("c0 c1 c2", "d0 d1 d2"), "M", _eval_enm_rect)
_shape("Enm_Tri", "elliptic", "s c0 c1 c2 d1 d2", (("a", "i"), ("x", "i")), "d2",
       "A+c0+c1+c2+d1+d2-Ndelta-2delta-3s", ("c0 c1 c2", "d1 d2"), "N", _eval_enm_tri)
_shape("Enm_Dual", "elliptic", "s c1 c2 d1", (("a", "i"), ("x", "i"), ("u", "k"), ("v", "k")), "d1",
       None, ("c1 c2",), "N", _eval_enm_dual)


def evaluate(p: ParamVector, ep: EllipticParams | None = None) -> SeriesValue:
    shape = SHAPES[p.shape]
    if not shape.exact and ep is None:
        raise ValueError(f"{p.shape} needs elliptic parameters")
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return shape.evaluate(p, ep)
