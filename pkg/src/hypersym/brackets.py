"""Exact rational helpers and the three classes of odd bracket functions.

Rationals are :class:`fractions.Fraction`.  Brackets are evaluated in double
precision complex arithmetic; the theta class is the odd theta product

    [[x]] = sin(pi x) * prod_{k>=1} (1 - 2 p^{2k} cos(2 pi x) + p^{4k}),

which satisfies the Riemann three-term relation for every nome |p| < 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import DomainError, ConstraintError
from .kernels import THETA_TOL, theta_bracket

Rational = Fraction
Number = Union[int, Fraction]

GENERIC_HORIZON = 64
GENERIC_FLOOR = 1e-9


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("refusing to convert a float to an exact rational")
    return Fraction(value)


def pochhammer(c, k: int) -> Fraction:
    """Rising factorial [c]_k = c (c+1) ... (c+k-1), exact."""
    if k < 0:
        raise ValueError("pochhammer length must be non-negative")
    c = as_rational(c)
    out = Fraction(1)
    for j in range(k):
        out *= c + j
    return out


def pochhammer_reflect(z, m: int) -> tuple[int, Fraction]:
    """Return (sign, arg) with [z]_m == sign * [arg]_m, namely ((-1)^m, 1-z-m)."""
    if m < 0:
        raise ValueError("pochhammer length must be non-negative")
    z = as_rational(z)
    return (-1 if m % 2 else 1), 1 - z - m


@dataclass(frozen=True)
class BracketClass:
    variant: str = "theta"
    nome: complex = 0.2 + 0j

    def __post_init__(self):
        if self.variant not in ("rational", "trigonometric", "theta"):
            raise ValueError(f"unknown bracket variant {self.variant!r}")
        if self.variant == "theta" and not abs(self.nome) < 1:
            raise DomainError("theta nome must satisfy |p| < 1")

    @classmethod
    def rational(cls) -> BracketClass:
        return cls("rational", 0j)

    @classmethod
    def trigonometric(cls) -> BracketClass:
        return cls("trigonometric", 0j)

    @classmethod
    def theta(cls, nome: complex = 0.2) -> BracketClass:
        return cls("theta", complex(nome))

    @property
    def label(self) -> str:
        if self.variant == "theta":
            return f"theta(p={self.nome.real:g}{self.nome.imag:+g}i)"
        return self.variant

    def __call__(self, x):
        return bracket(x, self)


def bracket_array(x, cls: BracketClass) -> np.ndarray:
    """Vectorised [[x]] over an array of complex arguments."""
    x = np.asarray(x, dtype=np.complex128)
    if not np.all(np.isfinite(x)):
        raise DomainError("bracket argument is not finite")
    if cls.variant == "rational":
        return x.copy()
    if cls.variant == "trigonometric":
        return np.sin(np.pi * x)
    return theta_bracket(x, cls.nome, THETA_TOL)


def bracket(x, cls: BracketClass) -> complex:
    x = complex(x)
    if not cmath.isfinite(x):
        raise DomainError(f"bracket argument {x!r} is not finite")
    if cls.variant == "rational":
        return x
    if cls.variant == "trigonometric":
        return cmath.sin(math.pi * x)
    return complex(theta_bracket(np.array([x]), cls.nome, THETA_TOL)[0])


@dataclass(frozen=True)
class EllipticParams:
    """Shift delta together with the bracket class; delta is checked for genericity."""

    delta: complex = 0.31 + 0.07j
    bracket: BracketClass = BracketClass()
    horizon: int = GENERIC_HORIZON
    floor: float = GENERIC_FLOOR

    def __post_init__(self):
        object.__setattr__(self, "delta", complex(self.delta))
        ks = np.arange(1, self.horizon + 1)
        vals = np.abs(bracket_array(ks * self.delta, self.bracket))
        if np.any(vals < self.floor):
            k = int(ks[np.argmax(vals < self.floor)])
            raise ConstraintError(
                f"delta={self.delta} is not generic: |[[{k} delta]]| < {self.floor:g}"
            )

    def br(self, x) -> complex:
        return bracket(x, self.bracket)

    def brs(self, x) -> np.ndarray:
        return bracket_array(x, self.bracket)


def bracket_factorial(x, k: int, ep: EllipticParams) -> complex:
    """[[x]]_k = [[x]] [[x+delta]] ... [[x+(k-1)delta]]."""
    if k < 0:
        raise ValueError("shifted factorial length must be non-negative")
    if k == 0:
        return 1 + 0j
    args = complex(x) + ep.delta * np.arange(k)
    return complex(np.prod(ep.brs(args)))


def bracket_factorial_table(x, kmax: int, ep: EllipticParams) -> np.ndarray:
    """[[x]]_k for k = 0..kmax as one array."""
    out = np.ones(kmax + 1, dtype=np.complex128)
    if kmax > 0:
        out[1:] = np.cumprod(ep.brs(complex(x) + ep.delta * np.arange(kmax)))
    return out


def gamma_real(x: float) -> float:
    """Euler Gamma for real x; raises near the poles 0, -1, -2, ..."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("gamma argument is not finite")
    if x <= 0 and abs(x - round(x)) <= 1e-9:
        raise DomainError(f"gamma pole at {x!r}")
    return math.gamma(x)
