"""Prefactors: products of Pochhammer / bracket-factorial atoms and sign atoms.

Text syntax for one atom: ``[expr]_L`` (Pochhammer) or ``[[expr]]_L``
(bracket factorial), L in {N, M, m}.  ``m`` means the per-index length m_i.
An atom whose form mentions ``_i`` or ``_k`` symbols is a product over that
index.  Signs (-1)^L are separate atoms and are never folded into factors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .brackets import EllipticParams, bracket_factorial_table, pochhammer
from .errors import PoleError, RangeError
from .forms import LinearForm, lf
from .shapes import ParamVector, environment, index_count, index_environment

_ATOM = re.compile(r"^(\[\[?)(.+?)(\]\]?)_(N|M|m)$")

# symbol that stands for L (resp. L*delta) in a reflected form
_LEN_SYMBOL = {"N": "N", "M": "M", "m": "m_i"}
_LEN_DELTA = {"N": "Ndelta", "M": "Mdelta", "m": "mdelta_i"}


@dataclass(frozen=True)
class Factor:
    form: LinearForm
    length: str          # "N" | "M" | "m"
    elliptic: bool

    @classmethod
    def parse(cls, text: str) -> Factor:
        mt = _ATOM.match(text.replace(" ", ""))
        if mt is None:
            raise ValueError(f"cannot parse prefactor atom {text!r}")
        opn, body, cls_, length = mt.groups()
        if len(opn) != len(cls_):
            raise ValueError(f"unbalanced brackets in {text!r}")
        f = cls(lf(body), length, len(opn) == 2)
        if length == "m" and f.form.over not in (None, "i"):
            raise ValueError(f"length m_i needs an i-indexed form in {text!r}")
        return f

    @property
    def over(self):
        return "i" if self.length == "m" else self.form.over

    def __str__(self):
        o, c = ("[[", "]]") if self.elliptic else ("[", "]")
        return f"{o}{self.form}{c}_{self.length}"

    def reflect(self) -> Factor:
        """[z]_L -> [1-z-L]_L and [[z]]_L -> [[delta-z-L delta]]_L; the sign is separate."""
        neg = LinearForm(tuple((s, -c) for s, c in self.form.coeffs), -self.form.const)
        if self.elliptic:
            extra = lf(f"delta-{_LEN_DELTA[self.length]}")
        else:
            extra = lf(f"1-{_LEN_SYMBOL[self.length]}")
        return Factor(_add(neg, extra), self.length, self.elliptic)


def _add(a: LinearForm, b: LinearForm) -> LinearForm:
    acc = dict(a.coeffs)
    for s, c in b.coeffs:
        acc[s] = acc.get(s, Fraction(0)) + c
    return LinearForm(tuple(sorted((k, v) for k, v in acc.items() if v)), a.const + b.const)


@dataclass(frozen=True)
class Sign:
    """(-1)^L.  L = "m" is the product over i of (-1)^{m_i}, i.e. (-1)^|M|;
    L = "iN" / "kN" is (-1)^N once per index value."""

    length: str

    def __str__(self):
        return f"(-1)^{self.length}"


@dataclass(frozen=True)
class Prefactor:
    num: tuple = ()
    den: tuple = ()
    signs: tuple = ()

    @classmethod
    def parse(cls, num=(), den=(), signs=()) -> Prefactor:
        return cls(tuple(Factor.parse(t) for t in num), tuple(Factor.parse(t) for t in den),
                   tuple(Sign(s) for s in signs))

    def __str__(self):
        parts = [str(s) for s in self.signs]
        top = " ".join(str(f) for f in self.num) or "1"
        bot = " ".join(str(f) for f in self.den) or "1"
        return " ".join(parts + [f"{top} / {bot}"])

    def substitute(self, mapping) -> Prefactor:
        sub = lambda fs: tuple(Factor(f.form.substitute(mapping), f.length, f.elliptic) for f in fs)
        return Prefactor(sub(self.num), sub(self.den), self.signs)

    def to_json(self):
        return {"num": [str(f) for f in self.num], "den": [str(f) for f in self.den],
                "signs": [str(s) for s in self.signs]}


@dataclass
class PrefactorValue:
    value: object
    min_step: float      # smallest |bracket| met in any factor step (elliptic)
    steps: int


def _lengths(p: ParamVector, env):
    return {"N": p.N, "M": env.get("M")}


def _factor_args(f: Factor, p: ParamVector, env, ep):
    """Yield (base value, length) pairs for the factor at p."""
    if f.over is None:
        L = _lengths(p, env)[f.length]
        yield f.form.evaluate(env), L
        return
    for i in range(index_count(p, f.over)):
        ienv = index_environment(p, f.over, i, ep)
        L = p.lists["m"][i] if f.length == "m" else _lengths(p, env)[f.length]
        yield f.form.evaluate(env, ienv), L


def evaluate_prefactor(pf: Prefactor, p: ParamVector, ep: EllipticParams | None = None,
                       floor: float = 1e-9) -> PrefactorValue:
    env = environment(p, ep)
    exact = ep is None
    value = Fraction(1) if exact else 1 + 0j
    min_step = np.inf
    steps = 0
    for sign in pf.signs:
        if sign.length == "m":
            e = sum(p.lists["m"])
        elif sign.length[0] in "ik":
            e = index_count(p, sign.length[0]) * _lengths(p, env)[sign.length[1:]]
        else:
            e = _lengths(p, env)[sign.length]
        if e % 2:
            value = -value
    for group, power in ((pf.num, 1), (pf.den, -1)):
        for f in group:
            for base, L in _factor_args(f, p, env, ep):
                steps += L
                if f.elliptic:
                    if exact:
                        raise ValueError("bracket factor in a rational prefactor")
                    if L:
                        st = ep.brs(complex(base) + ep.delta * np.arange(L))
                        min_step = min(min_step, float(np.min(np.abs(st))))
                        if power < 0 and np.min(np.abs(st)) < floor:
                            raise PoleError(f"prefactor denominator {f} vanishes", str(f))
                    with np.errstate(over="ignore", invalid="ignore"):
                        val = complex(bracket_factorial_table(base, L, ep)[L]) if L else 1
                else:
                    val = pochhammer(base, L)
                    if power < 0 and val == 0:
                        raise PoleError(f"prefactor denominator {f} vanishes", str(f))
                value = value * val if power > 0 else value / val
    if not exact and not np.isfinite(value):
        raise RangeError("prefactor is not finite in double precision")
    return PrefactorValue(value, min_step, steps)


def _slot_weight(f: Factor) -> Fraction:
    skip = {"delta", "N", "M", "m_i", "Ndelta", "Mdelta", "mdelta_i"}
    return sum((c for s, c in f.form.coeffs if s not in skip), Fraction(0))


def canonicalize(pf: Prefactor) -> Prefactor:
    """Reflect every factor whose slot coefficients sum to a negative number.

    Each reflection contributes its (-1)^L sign atom; the result is idempotent.
    """
    signs = list(pf.signs)
    out = []
    for group in (pf.num, pf.den):
        new = []
        for f in group:
            if _slot_weight(f) < 0:
                new.append(f.reflect())
                over = f.over
                signs.append(Sign(f.length if over is None or f.length == "m" else over + f.length))
            else:
                new.append(f)
        out.append(tuple(new))
    return Prefactor(out[0], out[1], _reduce_signs(signs))


def _reduce_signs(signs):
    count = {}
    for s in signs:
        count[s.length] = count.get(s.length, 0) + 1
    return tuple(Sign(k) for k in sorted(count) if count[k] % 2)
