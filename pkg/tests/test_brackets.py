from fractions import Fraction

import math
import random
import mpmath
import numpy as np
import pytest

from hypersym.brackets import (
    BracketClass,
    EllipticParams,
    bracket,
    bracket_array,
    bracket_factorial,
    bracket_factorial_table,
    gamma_real,
    pochhammer,
    pochhammer_reflect,
)
from hypersym.errors import ConstraintError, DomainError


def rand_fraction(rng, h=10**6):
    return Fraction(int(rng.integers(-h, h)), int(rng.integers(1, h)))


# -- Pochhammer ---------------------------------------------------------------------------

@pytest.mark.parametrize("c,k,want", [(Fraction(5, 2), 0, 1), (1, 3, 6), (Fraction(1, 2), 2, Fraction(3, 4))])
def test_pochhammer_examples(c, k, want):
    assert pochhammer(c, k) == want


def test_pochhammer_returns_exact_fraction():
    assert isinstance(pochhammer(Fraction(1, 3), 4), Fraction)


def test_pochhammer_splitting(rng):
    for _ in range(20):
        c = rand_fraction(rng, 50)
        for j in range(0, 21, 4):
            for k in range(0, 21, 5):
                assert pochhammer(c, j + k) == pochhammer(c, j) * pochhammer(c + j, k)


@pytest.mark.parametrize("z,m,want", [(2, 1, (-1, -2)), (0, 0, (1, 1)), (Fraction(1, 3), 2, (1, Fraction(-4, 3)))])
def test_pochhammer_reflect_examples(z, m, want):
    sign, arg = pochhammer_reflect(z, m)
    assert (sign, arg) == want
    assert pochhammer(z, m) == sign * pochhammer(arg, m)


def test_pochhammer_reflect_random(rng):
    for _ in range(1000):
        z = rand_fraction(rng, 40)
        m = int(rng.integers(0, 9))
        sign, arg = pochhammer_reflect(z, m)
        assert pochhammer(z, m) == sign * pochhammer(arg, m)


def test_rational_round_trip():
    # big rationals stay exact, far beyond double precision
    r = random.Random(7)
    for _ in range(200):
        a = Fraction(r.randrange(-10**30, 10**30), r.randrange(1, 10**30))
        c = Fraction(r.randrange(-10**30, 10**30), r.randrange(1, 10**30))
        assert (a + c) - c == a


def test_float_is_refused():
    with pytest.raises(TypeError):
        pochhammer(0.5, 2)


# -- brackets ---------------------------------------------------------------------------------

def test_bracket_variants():
    x = 0.3 + 0.2j
    assert bracket(x, BracketClass.rational()) == x
    assert abs(bracket(x, BracketClass.trigonometric()) - np.sin(np.pi * x)) < 1e-15


def test_bracket_zero(bclass):
    assert bracket(0, bclass) == 0


def test_theta_against_jacobi_theta(rng):
    # [[x]] = theta_1(pi x, p) / (2 p^(1/4) prod_k (1 - p^2k))
    for p in (0.2, 0.3, 0.1 + 0.15j):
        cls = BracketClass.theta(p)
        norm = 2 * mpmath.power(p, 0.25) * mpmath.qp(p ** 2, p ** 2)
        for _ in range(20):
            x = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
            want = complex(mpmath.jtheta(1, mpmath.pi * x, p) / norm)
            assert abs(bracket(x, cls) - want) <= 1e-12 * max(1, abs(want))


def test_oddness(bclass, rng):
    x = rng.uniform(-3, 3, 500) + 1j * rng.uniform(-1, 1, 500)
    a, b = bracket_array(-x, bclass), -bracket_array(x, bclass)
    assert np.all(np.abs(a - b) <= 1e-12 * np.maximum(1, np.abs(b)))


def riemann_residual(x, y, u, v, cls):
    br = lambda z: bracket(z, cls)
    lhs = br(x + y) * br(x - y) * br(u + v) * br(u - v) - br(x + u) * br(x - u) * br(y + v) * br(y - v)
    rhs = br(x + v) * br(x - v) * br(u + y) * br(u - y)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


@pytest.mark.parametrize("cls", [BracketClass.rational(), BracketClass.trigonometric(),
                                 BracketClass.theta(0.2), BracketClass.theta(0.3)], ids=str)
def test_riemann_relation(cls, rng):
    worst = 0.0
    for _ in range(1000):
        x, y, u, v = rng.uniform(-1, 1, 4) + 1j * rng.uniform(-0.5, 0.5, 4)
        worst = max(worst, riemann_residual(x, y, u, v, cls))
    assert worst < 1e-10


def test_theta_nome_must_be_inside_disc():
    with pytest.raises(DomainError):
        BracketClass.theta(1.0)


def test_non_generic_delta_rejected():
    # delta = 1 makes [[k delta]] = 0 for the trigonometric class
    with pytest.raises(ConstraintError):
        EllipticParams(1.0, BracketClass.trigonometric())


# -- elliptic shifted factorials ---------------------------------------------------------------

def test_bracket_factorial_examples():
    ep = EllipticParams(0.31, BracketClass.rational())
    x = 0.7 + 0.1j
    assert bracket_factorial(x, 0, ep) == 1
    assert bracket_factorial(0, 3, ep) == 0
    want = x * (x + 0.31) * (x + 0.62)
    assert abs(bracket_factorial(x, 3, ep) - want) < 1e-14


def test_bracket_factorial_splitting(bclass, rng):
    ep = EllipticParams(0.31 + 0.07j, bclass)
    for _ in range(50):
        x = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
        j, k = int(rng.integers(0, 6)), int(rng.integers(0, 6))
        whole = bracket_factorial(x, j + k, ep)
        split = bracket_factorial(x, j, ep) * bracket_factorial(x + j * ep.delta, k, ep)
        assert abs(whole - split) <= 1e-10 * max(abs(whole), 1e-300)


def test_factorial_table_matches_products(ep_theta):
    x = 0.4 - 0.3j
    table = bracket_factorial_table(x, 5, ep_theta)
    for k in range(6):
        assert abs(table[k] - bracket_factorial(x, k, ep_theta)) <= 1e-13 * max(1, abs(table[k]))


# -- gamma -----------------------------------------------------------------------------------

@pytest.mark.parametrize("x,want", [(1, 1.0), (0.5, math.sqrt(math.pi)), (5, 24.0)])
def test_gamma_examples(x, want):
    assert gamma_real(x) == pytest.approx(want, rel=1e-12)


def test_gamma_accuracy_against_mpmath(rng):
    for x in rng.uniform(0.5, 50, 200):
        assert gamma_real(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-12)


def test_gamma_pole():
    with pytest.raises(DomainError):
        gamma_real(-2.0)
