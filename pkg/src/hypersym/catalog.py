"""The transformation identities as data.

Each identity reads  F(point) = P(point) * F'(image(point))  where F is the
series of the identity's source shape and F' that of its target shape
(the same shape except for the two duality formulas).  The image is given
slot by slot as linear forms; per-index lists (the variables x_i and, for
the duality formulas, the whole list layout) are given by forms in the
index symbols.  Prefactors are products of Pochhammer / bracket-factorial
atoms with explicit sign atoms.

A few printed formulas contain ambiguous or misprinted tokens.  Those
spots are written as ``{token}`` placeholders; ``READINGS`` holds the
reading the catalog uses, and :mod:`hypersym.checks` re-derives every one
of them by exhaustive testing over the candidate readings.
"""

from __future__ import annotations

import fnmatch
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .brackets import EllipticParams
from .errors import ConstraintError, IllConditioned, PoleError, RangeError
from .forms import LinearForm, lf
from .prefactor import Prefactor, evaluate_prefactor
from .shapes import (
    SHAPES,
    ParamVector,
    check_balancing,
    encode,
    environment,
    evaluate,
    index_count,
    index_environment,
)

FAMILIES = ("F4_A1", "F4_Rect", "F4_Tri", "E10", "Enm_Rect", "Enm_Tri", "Duality")

# readings used for the placeholder tokens (see checks.resolve_typos)
READINGS = {
    "ias1": {"e": "e1"},
    "ias2": {"e": "e1"},
    "iars2": {"e": "e1"},
    "iars3": {"e": "e1", "dx": "d+x_i"},
    "iar": {"sign": "M"},
    "las1": {"e": "e1"},
    "mn1EBDT1": {"d2": "-Ndelta"},
    "BaileyT3": {"den": "4delta+4s-c0-c1-c2-2c3-2c4-2c5"},
    "BaileyT4": {"den": "5delta+5s-2c0-2c1-2c2-2c3-2c4-2c5"},
    "EBDT1": {"d2": "-Ndelta"},
    "LMN": {"st": "delta+2s-c0-d1-d2"},
    "LMNKN": {"k": "2delta+2s"},
}


@dataclass(frozen=True)
class ListRule:
    """Image list built from parts; a part is a form over index i, k or none."""

    parts: tuple  # LinearForm, ...

    def evaluate(self, p: ParamVector, env, ep):
        out = []
        for form in self.parts:
            over = form.over
            if over is None:
                out.append(form.evaluate(env))
            else:
                for i in range(index_count(p, over)):
                    out.append(form.evaluate(env, index_environment(p, over, i, ep)))
        return tuple(out)

    def __str__(self):
        return ", ".join(str(f) for f in self.parts)


@dataclass(frozen=True)
class TransformIdentity:
    name: str
    family: str
    shape: str                  # source series shape
    target: str                 # target series shape
    slots: tuple                # ((target slot, LinearForm), ...) -- all target slots
    lists: tuple                # ((target list, ListRule), ...) -- only lists that change
    prefactor: Prefactor
    description: str = ""
    kind: str = "identity"      # or "move" for pure parameter permutations
    raw: dict = field(default=None, compare=False, repr=False)

    @property
    def exact(self) -> bool:
        return SHAPES[self.shape].exact

    @property
    def image_forms(self) -> dict:
        return dict(self.slots)

    @property
    def var_map(self) -> str:
        rules = dict(self.lists)
        if self.target != self.shape:
            return "; ".join(f"{k} -> [{v}]" for k, v in rules.items())
        if "x" in rules:
            return f"x_i -> {rules['x']}"
        return "identity"

    @property
    def balancing(self):
        return SHAPES[self.shape].balancing

    def matrix(self):
        """Integer matrix of the parameter map on the source slots (plus delta).

        Length symbols are eliminated with the balancing condition so that
        the result is the linear map acting on the slot vector; ``None`` for
        the duality formulas whose two sides have different layouts.
        """
        if self.target != self.shape or SHAPES[self.shape].balancing is None:
            return None
        shape = SHAPES[self.shape]
        bal = shape.balancing
        length = {"N": ("N", "Ndelta"), "M": ("M", "Mdelta")}[shape.length]
        sym = length[0] if shape.exact else length[1]
        c = bal.coefficient(sym)
        rest = LinearForm(tuple((s, -v / c) for s, v in bal.coeffs if s != sym), -bal.const / c)
        cols = list(shape.slots) + ([] if shape.exact else ["delta"])
        rows = []
        for slot in shape.slots:
            form = dict(self.slots)[slot].substitute({sym: rest})
            if form.const or set(form.symbols) - set(cols):
                return None
            rows.append([form.coefficient(s) for s in cols])
        if not shape.exact:
            rows.append([0] * len(shape.slots) + [1])
        m = np.array(rows, dtype=object)
        if any(v.denominator != 1 for v in m.ravel() if isinstance(v, Fraction)):
            return None
        return m.astype(np.int64)

    def to_json(self) -> dict:
        m = self.matrix()
        bal = SHAPES[self.shape].balancing
        return {
            "name": self.name,
            "family": self.family,
            "shape": self.shape,
            "target": self.target,
            "slots": {k: str(v) for k, v in self.slots},
            "var_rule": {k: str(v) for k, v in self.lists},
            "prefactor": self.prefactor.to_json(),
            "matrix": None if m is None else m.tolist(),
            "balancing": None if bal is None else {"form": str(bal), "row": _row(bal, self.shape)},
            "description": self.description,
        }


def _row(form: LinearForm, shape: str):
    cols = list(SHAPES[shape].slots)
    extra = [s for s in form.symbols if s not in cols]
    return {"columns": cols + extra + ["1"],
            "values": [encode(form.coefficient(s)) for s in cols + extra] + [encode(form.const)]}


# -- builder ---------------------------------------------------------------------------


def _fmt(text, subs):
    out = text.format(**subs)
    for a, b in (("+-", "-"), ("--", "+"), ("-+", "-"), ("++", "+")):
        out = out.replace(a, b)
    return out


def _forms(text, subs, alias):
    f = lf(_fmt(text, subs))
    return f.substitute(alias) if alias else f


def build(raw: dict, readings: dict | None = None) -> TransformIdentity:
    subs = dict(READINGS.get(raw["name"], {}))
    subs.update(readings or {})
    alias = {k: lf(v) for k, v in raw.get("alias", {}).items()}
    shape = raw["shape"]
    target = raw.get("target", shape)
    tslots = SHAPES[target].slots
    slot_alias = {k: v for k, v in raw.get("alias", {}).items()}
    given = {slot_alias.get(k, k): v for k, v in raw.get("image", {}).items()}
    slots = []
    for s in tslots:
        slots.append((s, _forms(given[s], subs, alias) if s in given else lf(s)))
    lists = []
    for name, parts in raw.get("lists", {}).items():
        parts = [parts] if isinstance(parts, str) else parts
        lists.append((name, ListRule(tuple(_forms(t, subs, alias) for t in parts))))
    signs = [_fmt(s, subs) for s in raw.get("signs", ())]
    signs = [s for s in signs if s]
    pf = Prefactor.parse([_fmt(t, subs) for t in raw.get("num", ())],
                         [_fmt(t, subs) for t in raw.get("den", ())], signs)
    if alias:
        pf = pf.substitute(alias)
    return TransformIdentity(raw["name"], raw["family"], shape, target, tuple(slots), tuple(lists), pf,
                             raw.get("description", ""), raw.get("kind", "identity"), raw)


# -- the data -------------------------------------------------------------------------

XR = "M-m_i-x_i"                     # rectangular ordinary variable reversal
XE = "Mdelta-mdelta_i-x_i"           # rectangular elliptic variable reversal
XT = "a_i-x_i-A"                     # triangular elliptic variable map

RAW: list[dict] = []


def _add(**kw):
    RAW.append(kw)


# F4_A1: terminating balanced 4F3, slots (a1 a2 a3 d1 d2 d3), length N
_add(name="d1st1", family="F4_A1", shape="F4", description="Whipple transformation",
     image=dict(a2="d1-a3", a3="d1-a2", d2="d1+d2-a2-a3", d3="d1+d3-a2-a3"),
     num=["[d2-a1]_N", "[d1+d2-a2-a3]_N"], den=["[d2]_N", "[d1+d2-a1-a2-a3]_N"])
_add(name="d1rst1", family="F4_A1", shape="F4", description="coset omega_2",
     image=dict(a1="d1-a3", a2="d2-a3", a3="d1+d2-a1-a2-a3", d1="d1+d2-a2-a3", d2="d1+d2-a1-a3",
                d3="d1+d2+d3-a1-a2-2a3"),
     num=["[d1+d2-a1-a3]_N", "[d1+d2-a2-a3]_N", "[a3]_N"], den=["[d1]_N", "[d2]_N", "[d1+d2-a1-a2-a3]_N"])
_add(name="d1r1", family="F4_A1", shape="F4", description="coset omega_3",
     image=dict(a1="d1+d2-a1-a2-a3", a2="d1+d3-a1-a2-a3", a3="d2+d3-a1-a2-a3", d1="d1+d2+d3-a1-a2-2a3",
                d2="d1+d2+d3-a1-2a2-a3", d3="d1+d2+d3-2a1-a2-a3"),
     num=["[a1]_N", "[a2]_N", "[a3]_N"], den=["[d1]_N", "[d2]_N", "[d1+d2-a1-a2-a3]_N"])
_add(name="ad1r1", family="F4_A1", shape="F4", description="reversal of the order of summation",
     image=dict(a1="1-N-d1", a2="1-N-d2", a3="1-N-d3", d1="1-N-a1", d2="1-N-a2", d3="1-N-a3"),
     num=["[a1]_N", "[a2]_N", "[a3]_N"], den=["[d1]_N", "[d2]_N", "[d3]_N"], signs=["N"])

# F4_Rect: A_n 4F3 of rectangular type, slots (a1 a2 c d e1 e2), lengths |M|, m_i
_add(name="ias2", family="F4_Rect", shape="F4_Rect", description="A_n Sears type, coset s1",
     image=dict(a2="e1-a2", c="e1-c", d="e1+e2-a2-c", e1="e1", e2="d+e1-a2-c"), lists=dict(x=XR),
     num=["[d+e1-a2-c]_M", "[d-a1+x_i]_m"], den=["[d+{e}-a1-a2-c]_M", "[d+x_i]_m"])
_add(name="ias1", family="F4_Rect", shape="F4_Rect", description="first A_n Sears type, coset s1 s2 s1",
     image=dict(a2="d-c", c="d-a2", d="d", e1="d+e2-a2-c", e2="d+e1-a2-c"),
     num=["[d+e1-a2-c]_M", "[e1-a1]_M"], den=["[d+{e}-a1-a2-c]_M", "[e1]_M"])
_add(name="ias3", family="F4_Rect", shape="F4_Rect", description="coset s1 s0 s1",
     image=dict(a1="e1-a1", a2="e1-a2", d="d+e1-a1-a2", e1="e1+e2-a1-a2", e2="e1"),
     num=["[d-c]_M", "[d+e1-a1-a2+x_i]_m"], den=["[d+e1-a1-a2-c]_M", "[d+x_i]_m"])
_add(name="iars2", family="F4_Rect", shape="F4_Rect", description="coset s1 s0 s2 s1",
     image=dict(a1="e1-a2", a2="d+e1-a1-a2-c", c="d-a2", d="d+e1-a1-a2", e1="d+e1+e2-a1-2a2-c",
                e2="d+e1-a2-c"),
     num=["[d+e1-a2-c]_M", "[a2]_M", "[d+e1-a1-a2+x_i]_m"], den=["[d+{e}-a1-a2-c]_M", "[e1]_M", "[d+x_i]_m"])
_add(name="iars1", family="F4_Rect", shape="F4_Rect", description="coset s1 s2 s1 s0 s1",
     image=dict(a1="e1-a2", a2="e2-a2", c="e1+e2-a1-a2-c", d="e1+e2-a2-c", e1="e1+e2-a1-a2",
                e2="d+e1+e2-a1-2a2-c"), lists=dict(x=XR),
     num=["[d-c]_M", "[d+e1+e2-a1-2a2-c]_M", "[d-a1+x_i]_m"],
     den=["[d+e1-a1-a2-c]_M", "[d+e2-a1-a2-c]_M", "[d+x_i]_m"])
_add(name="iars3", family="F4_Rect", shape="F4_Rect", description="coset s1 s0 s1 s2 s1",
     image=dict(a1="d-c", a2="d+e1-a1-a2-c", c="e1-c", d="d+e1+e2-a1-a2-2c", e1="d+e1-a1-c",
                e2="d+e1-a2-c"), lists=dict(x=XR),
     num=["[d+e1-a2-c]_M", "[d+e1-a1-c]_M", "[c+x_i]_m"], den=["[d+{e}-a1-a2-c]_M", "[e1]_M", "[{dx}]_m"])
_add(name="iara", family="F4_Rect", shape="F4_Rect", description="coset s1 s0 s2 s1 s0 s2 s1",
     image=dict(a1="d+e1-a1-a2-c", a2="d+e2-a1-a2-c", c="e1+e2-a1-a2-c", d="d+e1+e2-a1-a2-2c",
                e1="d+e1+e2-a1-2a2-c", e2="d+e1+e2-2a1-a2-c"), lists=dict(x=XR),
     num=["[a1]_M", "[a2]_M", "[c+x_i]_m"], den=["[e1]_M", "[d+e1-a1-a2-c]_M", "[d+x_i]_m"])
_add(name="iar", family="F4_Rect", shape="F4_Rect", description="reversal of the order of summation",
     image=dict(a1="1-M-e1", a2="1-M-e2", c="1-M-d", d="1-M-c", e1="1-M-a1", e2="1-M-a2"), lists=dict(x=XR),
     num=["[a1]_M", "[a2]_M", "[c+x_i]_m"], den=["[e1]_M", "[e2]_M", "[d+x_i]_m"], signs=["{sign}"])

# F4_Tri: A_n 4F3 of triangular type, slots (a c d e1 e2), length N
_add(name="las2", family="F4_Tri", shape="F4_Tri", description="A_n Sears type, coset s1",
     image=dict(a="e1-a", c="e1-c", d="e1+e2-a-c", e1="e1", e2="d+e1-a-c"), lists=dict(x="b_i-B-x_i"),
     num=["[d+e1-a-c]_N", "[d-b_i+x_i]_N"], den=["[d+e1-a-B-c]_N", "[d+x_i]_N"])
_add(name="las1", family="F4_Tri", shape="F4_Tri", description="A_n Sears type, coset s1 s2 s1",
     image=dict(a="d-c", c="d-a", d="d", e1="d+e2-a-c", e2="d+e1-a-c"),
     num=["[e1-B]_N", "[d+e1-a-c]_N"], den=["[{e}]_N", "[d+e1-a-B-c]_N"])

# E10: terminating balanced 10E9, slots (s c0..c5), length N
_add(name="EBaileyT1", family="E10", shape="E10", description="elliptic Bailey transformation",
     alias=dict(d0="c3", d1="c4", d2="c5"),
     image=dict(s="delta+2s-c0-c1-c2", c0="delta+s-c1-c2", c1="delta+s-c0-c2", c2="delta+s-c0-c1"),
     num=["[[delta+s]]_N", "[[delta+s-d1-d2]]_N", "[[delta+s-d0-d2]]_N", "[[delta+s-d0-d1]]_N"],
     den=["[[delta+s-d0-d1-d2]]_N", "[[delta+s-d0]]_N", "[[delta+s-d1]]_N", "[[delta+s-d2]]_N"])
_add(name="mn1EBDT1", family="E10", shape="E10", description="coset tau_3",
     alias=dict(d0="c4", d1="c5"),
     image=dict(s="d1+{d2}-d0", c0="delta+s-d0-c0", c1="delta+s-d0-c1", c2="delta+s-d0-c2",
                c3="delta+s-d0-c3", d0="d1+{d2}-s", d1="d1"),
     num=["[[d0]]_N", "[[delta+s]]_N"] + [f"[[delta+s-c{k}-d1]]_N" for k in range(4)],
     den=["[[d0-d1]]_N", "[[delta+s-d1]]_N"] + [f"[[delta+s-c{k}]]_N" for k in range(4)])
_add(name="BaileyT3", family="E10", shape="E10", description="coset tau_4",
     image=dict(s="3delta+4s-c0-c1-c2-2c3-2c4-2c5", c0="delta+s-c4-c5", c1="delta+s-c3-c5",
                c2="delta+s-c3-c4", c3="2delta+2s-c1-c2-c3-c4-c5", c4="2delta+2s-c0-c2-c3-c4-c5",
                c5="2delta+2s-c0-c1-c3-c4-c5"),
     num=["[[delta+s]]_N", "[[c3]]_N", "[[c4]]_N", "[[c5]]_N", "[[delta+s-c1-c2]]_N", "[[delta+s-c0-c2]]_N",
          "[[delta+s-c0-c1]]_N"],
     den=["[[{den}]]_N"] + [f"[[delta+s-c{k}]]_N" for k in range(6)])
_add(name="BaileyT4", family="E10", shape="E10", description="coset tau_5, reversal of summation",
     image=dict(s="4delta+5s-2c0-2c1-2c2-2c3-2c4-2c5",
                **{f"c{k}": f"2delta+2s-c0-c1-c2-c3-c4-c5+c{k}" for k in range(6)}),
     num=["[[delta+s]]_N"] + [f"[[c{k}]]_N" for k in range(6)],
     den=["[[{den}]]_N"] + [f"[[delta+s-c{k}]]_N" for k in range(6)])

# Duality: E^{n,m+2} -> E^{m,n+2}, and its m=1 reduction to a one-dimensional series
_add(name="EBDT1", family="Duality", shape="Enm_Dual", description="balanced duality transformation",
     image=dict(s="d1+{d2}-s-delta", c1="-c1", c2="-c2", d1="d1"),
     lists=dict(a="delta+s-u_k-v_k", x="delta+s-v_k", u="x_i-a_i", v="d1+{d2}-s-x_i"),
     num=["[[delta+s-c1-d1]]_N", "[[delta+s-c2-d1]]_N", "[[v_k]]_N", "[[delta+s-u_k-d1]]_N",
          "[[delta+s+x_i]]_N", "[[delta+s+x_i-a_i-d1]]_N"],
     den=["[[delta+s-c1]]_N", "[[delta+s-c2]]_N", "[[delta+s-u_k]]_N", "[[v_k-d1]]_N",
          "[[delta+s+x_i-a_i]]_N", "[[delta+s+x_i-d1]]_N"])
_add(name="m1EBDT", family="Duality", shape="Enm_Tri", target="VWP",
     description="duality with m=1: E^{n,3} to a one-dimensional series",
     alias=dict(d0="d1", d1="d2"),
     image=dict(s="d1-Ndelta-d0"),
     lists=dict(p=["delta+s-d0-c0", "delta+s-d0-c1", "delta+s-d0-c2", "delta+s-d0+x_i-a_i",
                   "d1-Ndelta-s-x_i", "d1"]),
     num=["[[d0]]_N", "[[delta+s-c0-d1]]_N", "[[delta+s-c1-d1]]_N", "[[delta+s-c2-d1]]_N",
          "[[delta+s+x_i]]_N", "[[delta+s+x_i-a_i-d1]]_N"],
     den=["[[d0-d1]]_N", "[[delta+s-c0]]_N", "[[delta+s-c1]]_N", "[[delta+s-c2]]_N",
          "[[delta+s+x_i-a_i]]_N", "[[delta+s+x_i-d1]]_N"])

# Enm_Rect: E^{n,3} with a_i = -m_i delta, slots (s c0 c1 c2 d0 d1 d2), lengths |M|, m_i
_add(name="MN", family="Enm_Rect", shape="Enm_Rect", description="A_n Bailey I (Milne-Newcomb type), b1",
     image=dict(s="delta+2s-c0-d1-d2", c0="delta+s-d1-d2", d1="delta+s-c0-d2", d2="delta+s-c0-d1"),
     num=["[[delta+s-c1-d0]]_M", "[[delta+s-c2-d0]]_M", "[[delta+s+x_i]]_m", "[[2delta+2s-c0-d0-d1-d2+x_i]]_m"],
     den=["[[delta+s-c1]]_M", "[[delta+s-c2]]_M", "[[delta+s-d0+x_i]]_m", "[[2delta+2s-c0-d1-d2+x_i]]_m"])
_add(name="KN", family="Enm_Rect", shape="Enm_Rect", description="A_n Bailey II (Kajihara-Noumi type), b2",
     image=dict(s="delta+2s-c0-c1-c2", c0="delta+s-c1-c2", c1="delta+s-c0-c2", c2="delta+s-c0-c1"),
     lists=dict(x=XE),
     num=["[[delta+s+x_i]]_m", "[[delta+s-d0-d1+x_i]]_m", "[[delta+s-d0-d2+x_i]]_m", "[[delta+s-d1-d2+x_i]]_m"],
     den=["[[delta+s-d0+x_i]]_m", "[[delta+s-d1+x_i]]_m", "[[delta+s-d2+x_i]]_m",
          "[[delta+s-d0-d1-d2+x_i]]_m"])
_add(name="T20", family="Enm_Rect", shape="Enm_Rect", description="T(2,0)",
     image=dict(s="3s+2delta-c0-c1-d0-d1-2d2", c0="s+delta-d0-d2", c1="s+delta-d1-d2", d0="s+delta-c0-d2",
                d1="s+delta-c1-d2", d2="2s+2delta-c0-c1-d0-d1-d2"),
     num=["[[d2]]_M", "[[delta+s-c2-d0]]_M", "[[delta+s-c2-d1]]_M", "[[delta+s+x_i]]_m",
          "[[2delta+2s-c0-d0-d1-d2+x_i]]_m", "[[2delta+2s-c1-d0-d1-d2+x_i]]_m"],
     den=["[[delta+s-c0]]_M", "[[delta+s-c1]]_M", "[[delta+s-c2]]_M", "[[delta+s-d0+x_i]]_m",
          "[[delta+s-d1+x_i]]_m", "[[3delta+3s-c0-c1-d0-d1-2d2+x_i]]_m"], signs=["M"])
_add(name="T30", family="Enm_Rect", shape="Enm_Rect", description="T(3,0)",
     image=dict(s="4s+3delta-c0-c1-c2-2d0-2d1-2d2", c0="s+delta-d0-d1", c1="s+delta-d0-d2",
                c2="s+delta-d1-d2", d0="2s+2delta-c0-c1-d0-d1-d2", d1="2s+2delta-c0-c2-d0-d1-d2",
                d2="2s+2delta-c1-c2-d0-d1-d2"),
     num=["[[d0]]_M", "[[d1]]_M", "[[d2]]_M", "[[delta+s+x_i]]_m", "[[2delta+2s-c0-d0-d1-d2+x_i]]_m",
          "[[2delta+2s-c1-d0-d1-d2+x_i]]_m", "[[2delta+2s-c2-d0-d1-d2+x_i]]_m"],
     den=["[[delta+s-c0]]_M", "[[delta+s-c1]]_M", "[[delta+s-c2]]_M", "[[delta+s-d0+x_i]]_m",
          "[[delta+s-d1+x_i]]_m", "[[delta+s-d2+x_i]]_m", "[[4delta+4s-c0-c1-c2-2d0-2d1-2d2+x_i]]_m"],
     signs=["M"])
_add(name="T11", family="Enm_Rect", shape="Enm_Rect", description="T(1,1)",
     image=dict(s="3s+2delta-2c0-c1-c2-d1-d2", c0="2s+2delta-c0-c1-c2-d1-d2", c1="s+delta-c0-c2",
                c2="s+delta-c0-c1", d1="s+delta-c0-d2", d2="s+delta-c0-d1"),
     lists=dict(x=XE),
     num=["[[delta+s-c1-d0]]_M", "[[delta+s-c2-d0]]_M", "[[delta+s+x_i]]_m", "[[c0+x_i]]_m",
          "[[delta+s-d0-d2+x_i]]_m", "[[delta+s-d0-d1+x_i]]_m"],
     den=["[[delta+s-c1]]_M", "[[delta+s-c2]]_M", "[[delta+s-d0+x_i]]_m", "[[delta+s-d1+x_i]]_m",
          "[[delta+s-d2+x_i]]_m", "[[c0-d0+x_i]]_m"])
_add(name="T21", family="Enm_Rect", shape="Enm_Rect", description="T(2,1)",
     image=dict(s="4s+3delta-2c0-2c1-c2-d0-d1-2d2", c0="2s+2delta-c0-c1-c2-d0-d2",
                c1="2s+2delta-c0-c1-c2-d1-d2", c2="s+delta-c0-c1", d0="s+delta-c0-d2", d1="s+delta-c1-d2",
                d2="2s+2delta-c0-c1-d0-d1-d2"),
     lists=dict(x=XE),
     num=["[[delta+s-c2-d0]]_M", "[[d2]]_M", "[[delta+s-c2-d1]]_M", "[[delta+s+x_i]]_m", "[[c1+x_i]]_m",
          "[[c0+x_i]]_m", "[[delta+s-d0-d1+x_i]]_m"],
     den=["[[delta+s-c0]]_M", "[[delta+s-c1]]_M", "[[delta+s-c2]]_M", "[[delta+s-d0+x_i]]_m",
          "[[delta+s-d1+x_i]]_m", "[[delta+s-d2+x_i]]_m", "[[-delta-s+c0+c1+d2+x_i]]_m"],
     signs=["M"])
_add(name="T31", family="Enm_Rect", shape="Enm_Rect", description="T(3,1), reversal of summation",
     image=dict(s="5s+4delta-2c0-2c1-2c2-2d0-2d1-2d2", c0="2s+2delta-c0-c1-c2-d0-d1",
                c1="2s+2delta-c0-c1-c2-d0-d2", c2="2s+2delta-c0-c1-c2-d1-d2", d0="2s+2delta-c0-c1-d0-d1-d2",
                d1="2s+2delta-c0-c2-d0-d1-d2", d2="2s+2delta-c1-c2-d0-d1-d2"),
     lists=dict(x=XE),
     num=["[[d0]]_M", "[[d1]]_M", "[[d2]]_M", "[[delta+s+x_i]]_m", "[[c0+x_i]]_m", "[[c1+x_i]]_m",
          "[[c2+x_i]]_m"],
     den=["[[delta+s-c0]]_M", "[[delta+s-c1]]_M", "[[delta+s-c2]]_M",
          "[[-2delta-2s+c0+c1+c2+d0+d1+d2+x_i]]_m", "[[delta+s-d0+x_i]]_m", "[[delta+s-d1+x_i]]_m",
          "[[delta+s-d2+x_i]]_m"], signs=["M"])

# Enm_Tri: E^{n,3} with d0 = -N delta, slots (s c0 c1 c2 d1 d2), length N
_add(name="LMN", family="Enm_Tri", shape="Enm_Tri", description="A_n Bailey I, triangular, b1",
     image=dict(s="{st}", c0="delta+s-d1-d2", d1="delta+s-c0-d2", d2="delta+s-c0-d1"),
     num=["[[delta+{st}-c1]]_N", "[[delta+{st}-c2]]_N", "[[delta+s+x_i]]_N", "[[delta+{st}+x_i-a_i]]_N"],
     den=["[[delta+s-c1]]_N", "[[delta+s-c2]]_N", "[[delta+s+x_i-a_i]]_N", "[[delta+{st}+x_i]]_N"])
_add(name="LKN", family="Enm_Tri", shape="Enm_Tri", description="A_n Bailey II, triangular, b2",
     image=dict(s="delta+2s-c0-c1-c2", c0="delta+s-c1-c2", c1="delta+s-c0-c2", c2="delta+s-c0-c1"),
     lists=dict(x=XT),
     num=["[[delta+s+x_i]]_N", "[[delta+s+x_i-d1-d2]]_N", "[[delta+s+x_i-a_i-d1]]_N", "[[delta+s+x_i-a_i-d2]]_N"],
     den=["[[delta+s+x_i-d1]]_N", "[[delta+s+x_i-d2]]_N", "[[delta+s+x_i-a_i]]_N", "[[delta+s+x_i-a_i-d1-d2]]_N"])
_add(name="LMNKN", family="Enm_Tri", shape="Enm_Tri", description="composite of b1 and b2, triangular",
     image=dict(s="2delta+3s-2c0-c1-c2-d1-d2", c0="2delta+2s-c0-c1-c2-d1-d2", c1="delta+s-c0-c2",
                c2="delta+s-c0-c1", d1="delta+s-c0-d2", d2="delta+s-c0-d1"),
     lists=dict(x=XT),
     num=["[[{k}-c0-c1-d1-d2]]_N", "[[{k}-c0-c2-d1-d2]]_N", "[[delta+s+x_i]]_N", "[[x_i+c0]]_N",
          "[[delta+s+x_i-d1-a_i]]_N", "[[delta+s+x_i-d2-a_i]]_N"],
     den=["[[delta+s-c1]]_N", "[[delta+s-c2]]_N", "[[delta+s+x_i-a_i]]_N", "[[x_i+c0-a_i]]_N",
          "[[delta+s+x_i-d1]]_N", "[[delta+s+x_i-d2]]_N"])


# parameter permutations under which each series is manifestly symmetric
def _swaps(shape, pairs):
    out = {}
    for name, (a, b) in pairs.items():
        out[name] = dict(name=name, family=shape, shape=shape, kind="move", image={a: b, b: a},
                         description=f"swap {a} and {b}")
    return out


MOVES_RAW = {
    "F4": _swaps("F4", {"r1": ("a1", "a2"), "r2": ("a2", "a3"), "t1": ("d1", "d2"), "t2": ("d2", "d3")}),
    "F4_Rect": _swaps("F4_Rect", {"s0": ("a1", "a2"), "s2": ("e1", "e2")}),
    "F4_Tri": _swaps("F4_Tri", {"s2": ("e1", "e2")}),
    "E10": _swaps("E10", {f"s{k}": (f"c{k - 1}", f"c{k}") for k in range(1, 6)}),
    "Enm_Rect": _swaps("Enm_Rect", {"s0": ("c0", "c1"), "s1": ("c1", "c2"), "t0": ("d0", "d1"),
                                    "t1": ("d1", "d2")}),
    "Enm_Tri": _swaps("Enm_Tri", {"s0": ("c0", "c1"), "s1": ("c1", "c2"), "t1": ("d1", "d2")}),
}

# generators that are genuine transformations, named as in the group engine
GENERATOR_IDENTITIES = {
    "F4": {"s": "d1st1"},
    "F4_Rect": {"s1": "ias2"},
    "F4_Tri": {"s1": "las2"},
    "E10": {"b": "EBaileyT1"},
    "Enm_Rect": {"b1": "MN", "b2": "KN"},
    "Enm_Tri": {"b1": "LMN", "b2": "LKN"},
}


@lru_cache(maxsize=None)
def _catalog() -> tuple:
    return tuple(build(r) for r in RAW)


def catalog() -> list[TransformIdentity]:
    return list(_catalog())


def lookup(name: str) -> TransformIdentity:
    for t in _catalog():
        if t.name == name:
            return t
    raise KeyError(f"no identity named {name!r}")


def select(pattern: str | None) -> list[TransformIdentity]:
    if not pattern:
        return catalog()
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    return [t for t in _catalog() if any(fnmatch.fnmatchcase(t.name, p) for p in pats)]


@lru_cache(maxsize=None)
def moves(shape: str) -> dict:
    """Generator name -> TransformIdentity (symmetries and genuine generators)."""
    out = {k: build(r) for k, r in MOVES_RAW.get(shape, {}).items()}
    for gen, name in GENERATOR_IDENTITIES.get(shape, {}).items():
        out[gen] = lookup(name)
    return out


# -- apply / verify ----------------------------------------------------------------------


@dataclass
class Applied:
    image: ParamVector
    prefactor: object
    min_step: float


def apply(t: TransformIdentity, p: ParamVector, ep: EllipticParams | None = None,
          floor: float = 1e-9, check: bool = True) -> Applied:
    if p.shape != t.shape:
        raise ConstraintError(f"{t.name} acts on {t.shape} points, got {p.shape}")
    if check:
        check_balancing(p, ep)
    image = map_point(t, p, ep)
    pv = evaluate_prefactor(t.prefactor, p, ep, floor)
    return Applied(image, pv.value, pv.min_step)


def map_point(t: TransformIdentity, p: ParamVector, ep: EllipticParams | None = None) -> ParamVector:
    """The image point alone, without the prefactor."""
    env = environment(p, ep)
    values = {s: f.evaluate(env) for s, f in t.slots}
    lists = dict(p.lists) if t.target == t.shape else {}
    for name, rule in t.lists:
        lists[name] = rule.evaluate(p, env, ep)
    return ParamVector(t.target, values, lists, p.N)


@dataclass
class VerificationResult:
    identity: str
    sample: int | None
    lhs: object
    rhs: object              # prefactor * right-hand series
    residual: object         # exact difference (rational) or relative float
    exact: bool
    status: str              # "pass" | "fail"
    error_budget: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"identity": self.identity, "sample": self.sample, "status": self.status,
               "exact": self.exact, "lhs": encode(self.lhs), "rhs": encode(self.rhs)}
        if self.exact:
            out["residual_zero"] = self.residual == 0
        else:
            out["residual"] = float(self.residual)
            out["error_budget"] = self.error_budget
        return out


MAX_BUDGET = 1e-10


def conditioned(p: ParamVector, ep: EllipticParams | None = None, max_budget: float = MAX_BUDGET):
    """Evaluate the series at p, raising IllConditioned when its relative error
    budget exceeds ``max_budget``."""
    v = evaluate(p, ep)
    if ep is not None and v.error > max_budget * max(abs(v.value), 1e-300):
        raise IllConditioned(f"relative error budget {v.error / max(abs(v.value), 1e-300):.2e} "
                             f"exceeds {max_budget:.0e}")
    return v


def residual(lhs, rhs) -> float:
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-30)


def verify(t: TransformIdentity, p: ParamVector, ep: EllipticParams | None = None,
           tol: float = 1e-8, sample: int | None = None, floor: float = 1e-9,
           max_budget: float | None = None) -> VerificationResult:
    """Evaluate both sides at p.

    ``max_budget`` (elliptic only) makes the call raise :class:`IllConditioned`
    when either side's floating-point error budget, relative to its value,
    exceeds it -- the sampler uses this to skip points where double
    precision cannot certify the tolerance.
    """
    ep = None if t.exact else ep
    if not t.exact and ep is None:
        raise ValueError(f"{t.name} needs elliptic parameters")
    left = evaluate(p, ep)
    app = apply(t, p, ep, floor)
    right = evaluate(app.image, ep)
    lhs = left.value
    rhs = app.prefactor * right.value
    if t.exact:
        diff = lhs - rhs
        return VerificationResult(t.name, sample, lhs, rhs, diff, True, "pass" if diff == 0 else "fail")
    budget = max(left.error / max(abs(lhs), 1e-300), right.error / max(abs(right.value), 1e-300))
    if max_budget is not None and budget > max_budget:
        raise IllConditioned(f"{t.name}: relative error budget {budget:.2e} exceeds {max_budget:.0e}")
    res = residual(lhs, rhs)
    status = "pass" if res < tol else "fail"
    return VerificationResult(t.name, sample, lhs, rhs, res, False, status, float(budget))


# sample points raising these are skipped by the sampler, not counted as failures
INADMISSIBLE = (PoleError, IllConditioned, RangeError, ZeroDivisionError)
