"""Linear forms over named parameters, parsed from strings like "d+e1-2a2-c".

Symbols ending in ``_i`` (``x_i``, ``m_i``, ``b_i``, ``a_i``) or ``_k``
(``u_k``, ``v_k``) are per-index and are resolved against one entry of the
point's variable lists.
Coefficients may be integers or fractions ("3/2s"); ``*`` is optional.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

_TOKEN = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z][A-Za-z0-9_]*)?\s*")


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple  # sorted ((symbol, Fraction), ...)
    const: Fraction = Fraction(0)

    @classmethod
    def parse(cls, text: str) -> LinearForm:
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty linear form")
        pos = 0
        acc: dict[str, Fraction] = {}
        const = Fraction(0)
        first = True
        while pos < len(src):
            mt = _TOKEN.match(src, pos)
            if mt is None or mt.end() == pos:
                raise ValueError(f"cannot parse linear form {text!r} at {src[pos:]!r}")
            sign, num, sym = mt.groups()
            if sign is None and not first:
                raise ValueError(f"missing operator in {text!r} at {src[pos:]!r}")
            if num is None and sym is None:
                raise ValueError(f"dangling operator in {text!r}")
            coef = Fraction(num) if num else Fraction(1)
            if sign == "-":
                coef = -coef
            if sym is None:
                const += coef
            else:
                acc[sym] = acc.get(sym, Fraction(0)) + coef
            pos = mt.end()
            first = False
        return cls(tuple(sorted((k, v) for k, v in acc.items() if v)), const)

    @property
    def symbols(self):
        return tuple(k for k, _ in self.coeffs)

    @property
    def per_index(self) -> bool:
        return bool(self.index_symbols)

    @property
    def index_symbols(self):
        return tuple(k for k in self.symbols if _is_index(k))

    @property
    def over(self):
        """Index letter ("i" or "k") of the per-index symbols, or None."""
        letters = {k[-1] for k in self.index_symbols}
        if len(letters) > 1:
            raise ValueError(f"form {self} mixes index letters {sorted(letters)}")
        return letters.pop() if letters else None

    def evaluate(self, env: Mapping, index_env: Mapping | None = None):
        total = self.const
        for sym, coef in self.coeffs:
            if _is_index(sym):
                if index_env is None:
                    raise KeyError(f"per-index symbol {sym} used outside an index product")
                val = index_env[sym]
            else:
                val = env[sym]
            total = total + coef * val if coef != 1 else total + val
        return total

    def substitute(self, mapping: Mapping[str, LinearForm]) -> LinearForm:
        acc: dict[str, Fraction] = {}
        const = self.const
        for sym, coef in self.coeffs:
            if sym in mapping:
                sub = mapping[sym]
                const += coef * sub.const
                for s2, c2 in sub.coeffs:
                    acc[s2] = acc.get(s2, Fraction(0)) + coef * c2
            else:
                acc[sym] = acc.get(sym, Fraction(0)) + coef
        return LinearForm(tuple(sorted((k, v) for k, v in acc.items() if v)), const)

    def coefficient(self, sym: str) -> Fraction:
        return dict(self.coeffs).get(sym, Fraction(0))

    def __str__(self):
        parts = []
        for sym, coef in self.coeffs:
            if coef == 1:
                parts.append(f"+{sym}")
            elif coef == -1:
                parts.append(f"-{sym}")
            else:
                parts.append(f"{'+' if coef > 0 else '-'}{abs(coef)}{sym}")
        if self.const or not parts:
            parts.append(f"{'+' if self.const >= 0 else '-'}{abs(self.const)}")
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


def _is_index(sym: str) -> bool:
    return sym.endswith("_i") or sym.endswith("_k")


def lf(text: str) -> LinearForm:
    return LinearForm.parse(text)
