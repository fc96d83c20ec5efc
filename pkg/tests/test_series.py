import itertools
from fractions import Fraction as F

import mpmath
import numpy as np
import pytest

from hypersym.brackets import BracketClass, EllipticParams, bracket
from hypersym.errors import ConstraintError, PoleError
from hypersym.series import (
    HardyVector,
    Series4F3An,
    SeriesEnm,
    eval_10e9,
    eval_4f3_terminating,
    eval_an_4f3,
    eval_enm,
    eval_hardy_3f2,
    eval_very_well_poised,
    rectangular_range,
    triangular_range,
)


def rf(c, k):
    out = F(1)
    for j in range(k):
        out *= c + j
    return out


def ef(x, k, ep):
    out = 1 + 0j
    for j in range(k):
        out *= bracket(x + j * ep.delta, ep.bracket)
    return out


# -- ordinary 4F3 -----------------------------------------------------------------------

def test_4f3_three_terms_by_hand():
    a1, a2, d1, d2 = F(1, 2), F(1, 3), F(5, 7), F(2)
    a = [a1, a2, F(3, 4)]
    d3 = sum(a) + 1 - 2 - d1 - d2
    d = [d1, d2, d3]
    want = sum(rf(F(-2), k) * rf(a[0], k) * rf(a[1], k) * rf(a[2], k)
               / (rf(F(1), k) * rf(d[0], k) * rf(d[1], k) * rf(d[2], k)) for k in range(3))
    assert eval_4f3_terminating(2, a, d) == want


def test_4f3_trivial_cases():
    assert eval_4f3_terminating(0, [F(1, 2), 3, 4], [F(1, 3), 5, F(19, 6)]) == 1
    # a1 = 0 kills every term but the first
    assert eval_4f3_terminating(3, [0, F(1, 2), F(1, 3)], [F(1, 5), F(2, 7), F(1, 2) + F(1, 3) + 1 - 3 - F(1, 5) - F(2, 7)]) == 1


def test_4f3_checks():
    with pytest.raises(ConstraintError):
        eval_4f3_terminating(2, [1, 2, 3], [1, 2, 3])
    with pytest.raises(PoleError):
        eval_4f3_terminating(3, [F(1, 2), F(1, 3), F(1, 4)], [-1, F(1, 2), F(1, 2) + F(1, 3) + F(1, 4) + 1 - 3 + 1 - F(1, 2)])


# -- A_n 4F3 -----------------------------------------------------------------------------

def an_oracle(m, x, a1, a2, e1, e2, c, d, b=None):
    n = len(x)
    b = b if b is not None else [-mi for mi in m]
    total = F(0)
    for g in itertools.product(*(range(mi + 1) for mi in m)):
        t = F(1)
        for i in range(n):
            for j in range(i + 1, n):
                t *= (x[i] + g[i] - x[j] - g[j]) / (x[i] - x[j])
            for j in range(n):
                t *= rf(b[j] + x[i] - x[j], g[i]) / rf(1 + x[i] - x[j], g[i])
            t *= rf(c + x[i], g[i]) / rf(d + x[i], g[i])
        L = sum(g)
        t *= rf(a1, L) * rf(a2, L) / (rf(e1, L) * rf(e2, L))
        total += t
    return total


def test_an4f3_rectangular_four_terms():
    m, x = (1, 1), (F(0), F(1, 3))
    a1, a2, c, d, e1 = F(1, 2), F(2, 5), F(3, 7), F(9, 4), F(5, 3)
    e2 = a1 + a2 + c + 1 - 2 - d - e1
    got = eval_an_4f3(Series4F3An.rectangular(m, x, a1, a2, e1, e2, c, d))
    assert got == an_oracle(m, x, a1, a2, e1, e2, c, d)


def test_an4f3_n1_is_ordinary_4f3():
    a1, a2, c, d, e1 = F(1, 2), F(2, 5), F(3, 7), F(9, 4), F(5, 3)
    for m in range(5):
        e2 = a1 + a2 + c + 1 - m - d - e1
        got = eval_an_4f3(Series4F3An.rectangular([m], [0], a1, a2, e1, e2, c, d))
        assert got == eval_4f3_terminating(m, [a1, a2, c], [d, e1, e2])


def test_an4f3_triangular_n1():
    a, b, c, d, e1, N = F(1, 2), F(2, 5), F(3, 7), F(9, 4), F(5, 3), 3
    e2 = a + b + c + 1 - N - d - e1
    got = eval_an_4f3(Series4F3An.triangular(N, [b], [0], a, e1, e2, c, d))
    assert got == eval_4f3_terminating(N, [a, b, c], [d, e1, e2])


def test_an4f3_triangular_against_oracle():
    N, b, x = 2, (F(1, 3), F(2, 7)), (F(0), F(1, 5))
    a, c, d, e1 = F(1, 2), F(3, 7), F(9, 4), F(5, 3)
    e2 = -N + a + sum(b) + c + 1 - d - e1
    want = F(0)
    for g in triangular_range(2, N):
        want += an_oracle_term(g, x, b, -N, a, e1, e2, c, d)
    assert eval_an_4f3(Series4F3An.triangular(N, b, x, a, e1, e2, c, d)) == want


def an_oracle_term(g, x, b, a1, a2, e1, e2, c, d):
    n = len(x)
    t = F(1)
    for i in range(n):
        for j in range(i + 1, n):
            t *= (x[i] + g[i] - x[j] - g[j]) / (x[i] - x[j])
        for j in range(n):
            t *= rf(b[j] + x[i] - x[j], g[i]) / rf(1 + x[i] - x[j], g[i])
        t *= rf(c + x[i], g[i]) / rf(d + x[i], g[i])
    L = sum(g)
    return t * rf(a1, L) * rf(a2, L) / (rf(e1, L) * rf(e2, L))


def test_an4f3_symmetric_in_index_and_pairs():
    m, x = (1, 2), (F(1, 4), F(-1, 3))
    a1, a2, c, d, e1 = F(1, 2), F(2, 5), F(3, 7), F(9, 4), F(5, 3)
    e2 = a1 + a2 + c + 1 - 3 - d - e1
    v = eval_an_4f3(Series4F3An.rectangular(m, x, a1, a2, e1, e2, c, d))
    assert v == eval_an_4f3(Series4F3An.rectangular(m[::-1], x[::-1], a1, a2, e1, e2, c, d))
    assert v == eval_an_4f3(Series4F3An.rectangular(m, x, a2, a1, e2, e1, c, d))


def test_index_ranges():
    assert len(list(rectangular_range((1, 2)))) == 6
    assert sorted(triangular_range(2, 2)) == sorted(
        g for g in itertools.product(range(3), repeat=2) if sum(g) <= 2)


def test_an4f3_rejects_unbalanced():
    with pytest.raises(ConstraintError):
        eval_an_4f3(Series4F3An.rectangular([1], [0], 1, 2, 3, 4, 5, 6))


# -- elliptic ----------------------------------------------------------------------------

def test_10e9_three_terms(ep_theta):
    ep = ep_theta
    s = 0.37 + 0.11j
    c = [0.2 + 0.1j, -0.3 + 0.05j, 0.45 - 0.2j, 0.1 + 0.3j, -0.15 - 0.1j]
    N = 2
    c.append((2 + N) * ep.delta + 3 * s - sum(c))
    par = c + [-N * ep.delta]
    want = 0j
    for k in range(N + 1):
        t = bracket(s + 2 * k * ep.delta, ep.bracket) / bracket(s, ep.bracket)
        t *= ef(s, k, ep) / ef(ep.delta, k, ep)
        for u in par:
            t *= ef(u, k, ep) / ef(ep.delta + s - u, k, ep)
        want += t
    got = eval_10e9(s, c, N, ep)
    assert abs(got - want) <= 1e-12 * abs(want)


def test_vwp_needs_termination(ep_theta):
    with pytest.raises(ConstraintError):
        eval_very_well_poised(0.3, [0.1, 0.2, 0.3], 2, ep_theta)


def enm_oracle(m, x, s, u, v, ep):
    n, d = len(x), ep.delta
    a = [-mi * d for mi in m]
    br = lambda z: bracket(z, ep.bracket)
    total = 0j
    for g in itertools.product(*(range(mi + 1) for mi in m)):
        L = sum(g)
        t = 1 + 0j
        for i in range(n):
            for j in range(i + 1, n):
                t *= br(x[i] + g[i] * d - x[j] - g[j] * d) / br(x[i] - x[j])
            t *= br(s + x[i] + (L + g[i]) * d) / br(s + x[i])
            t *= ef(s + x[i], L, ep) / ef(d + s - a[i] + x[i], L, ep)
            for j in range(n):
                t *= ef(a[j] + x[i] - x[j], g[i], ep) / ef(d + x[i] - x[j], g[i], ep)
            for uk, vk in zip(u, v):
                t *= ef(uk + x[i], g[i], ep) / ef(d + s - vk + x[i], g[i], ep)
        for uk, vk in zip(u, v):
            t *= ef(vk, L, ep) / ef(d + s - uk, L, ep)
        total += t
    return total


@pytest.mark.parametrize("cls", [BracketClass.rational(), BracketClass.trigonometric(), BracketClass.theta(0.2)],
                         ids=lambda c: c.variant)
def test_enm_rectangular_four_terms(cls):
    ep = EllipticParams(0.31 + 0.07j, cls)
    m, x, s = (1, 1), (0.1 + 0.2j, -0.35 + 0.1j), 0.27 - 0.13j
    u = (0.2 + 0.1j, -0.3 + 0.05j, 0.45 - 0.2j)
    v = [0.1 + 0.3j, -0.15 - 0.1j]
    v.append(2 * ep.delta + 3 * s - sum(u) - sum(v) + sum(m) * ep.delta)
    want = enm_oracle(m, x, s, u, v, ep)
    got = eval_enm(SeriesEnm.rectangular(m, x, s, u, v, ep))
    assert abs(got - want) <= 1e-12 * abs(want)


def test_enm_symmetric_in_index(ep_theta):
    ep = ep_theta
    m, x, s = (1, 2), (0.1 + 0.2j, -0.35 + 0.1j), 0.27 - 0.13j
    u = (0.2 + 0.1j, -0.3 + 0.05j, 0.45 - 0.2j)
    v = [0.1 + 0.3j, -0.15 - 0.1j]
    v.append(2 * ep.delta + 3 * s - sum(u) - sum(v) + sum(m) * ep.delta)
    one = eval_enm(SeriesEnm.rectangular(m, x, s, u, v, ep))
    two = eval_enm(SeriesEnm.rectangular(m[::-1], x[::-1], s, u[::-1], [v[1], v[0], v[2]], ep))
    assert abs(one - two) <= 1e-12 * abs(one)


def test_enm_n1_is_10e9(ep_theta):
    # n = 1, x = 0: E^{1,3} is the 10E9 series with parameters u, v and a = -m delta
    ep = ep_theta
    s, m = 0.27 - 0.13j, 2
    u = (0.2 + 0.1j, -0.3 + 0.05j, 0.45 - 0.2j)
    v = [0.1 + 0.3j, -0.15 - 0.1j]
    v.append(2 * ep.delta + 3 * s - sum(u) - sum(v) + m * ep.delta)
    got = eval_enm(SeriesEnm.rectangular([m], [0], s, u, v, ep))
    want = eval_10e9(s, list(u) + v, m, ep)
    assert abs(got - want) <= 1e-12 * abs(want)


def test_enm_extra_layer_vanishes(ep_theta):
    # the a_i = -m_i delta factor kills any term with g_i = m_i + 1
    ep = ep_theta
    m, x, s = (1,), (0.1 + 0.2j,), 0.27 - 0.13j
    u = (0.2 + 0.1j, -0.3 + 0.05j, 0.45 - 0.2j)
    v = [0.1 + 0.3j, -0.15 - 0.1j]
    v.append(2 * ep.delta + 3 * s - sum(u) - sum(v) + ep.delta)
    from hypersym.series import enm_term
    spec = SeriesEnm.rectangular(m, x, s, u, v, ep)
    assert abs(enm_term(spec, (2,))) < 1e-13


def test_enm_pole_detected(ep_theta):
    ep = ep_theta
    x = (0.1, 0.1 + 0j)
    u = (0.2, 0.3, 0.4)
    v = [0.1, 0.2]
    s = 0.3
    v.append(2 * ep.delta + 3 * s - sum(u) - sum(v) + 2 * ep.delta)
    with pytest.raises(PoleError):
        eval_enm(SeriesEnm.rectangular((1, 1), x, s, u, v, ep))


# -- Hardy -------------------------------------------------------------------------------

def test_hardy_against_mpmath():
    v = HardyVector(7.1, 7.2, 7.3, 7.05, 7.4)
    s = v.s
    a = [2 * v.x1 - s, 2 * v.x2 - s, 2 * v.x3 - s]
    e = [2 * v.x4, 2 * v.x5]
    want = mpmath.hyp3f2(*a, *e, 1) / (mpmath.gamma(s) * mpmath.gamma(e[0]) * mpmath.gamma(e[1]))
    assert eval_hardy_3f2(v, terms=3000) == pytest.approx(float(want), rel=1e-9)


def test_hardy_terminating_by_hand():
    # 2x1 - s = -1 terminates after two terms
    v = HardyVector(0.5, 2.0, 2.0, 1.0, 1.5)
    s = v.s
    a = [2 * v.x1 - s, 2 * v.x2 - s, 2 * v.x3 - s]
    e = [2 * v.x4, 2 * v.x5]
    want = (1 + a[0] * a[1] * a[2] / (e[0] * e[1])) / float(
        mpmath.gamma(s) * mpmath.gamma(e[0]) * mpmath.gamma(e[1]))
    assert eval_hardy_3f2(v) == pytest.approx(want, rel=1e-13)


def test_hardy_needs_positive_s():
    with pytest.raises(ConstraintError):
        eval_hardy_3f2(HardyVector(1, 1, 1, 2, 2))
