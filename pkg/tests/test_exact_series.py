"""Truncated series, dual numbers, univariate helpers and residues."""

from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singfrob.exact import (
    Dual,
    SeriesTruncationError,
    TruncSeries,
    residue_at_zero,
    residue_sum_at_roots,
    series_exp,
    series_log,
    series_nth_root,
    series_reversion,
)
from singfrob.exact import univariate as up
from singfrob.exact.residue import laurent_at_infinity, residue_at_infinity_rational, residue_at_zero_rational

N = 10
small = st.fractions(-5, 5, max_denominator=4)


def S(coeffs, val=0, order=N):
    return TruncSeries([Fraction(c) for c in coeffs], val, order)


# ---- closed forms -----------------------------------------------------------------


def test_exp_of_w_is_the_exponential_series():
    e = series_exp(S([0, 1]))
    assert [e[k] for k in range(N)] == [Fraction(1, factorial(k)) for k in range(N)]


def test_log_of_one_plus_w():
    L = series_log(S([1, 1]))
    assert [L[k] for k in range(1, N)] == [Fraction((-1) ** (k + 1), k) for k in range(1, N)]


def test_square_root_of_one_plus_w_matches_binomial_series():
    r = series_nth_root(S([1, 1]), 2)
    # binomial(1/2, k)
    expected = [Fraction(1)]
    for k in range(1, N):
        expected.append(expected[-1] * (Fraction(1, 2) - k + 1) / k)
    assert [r[k] for k in range(N)] == expected


def test_reversion_of_w_over_one_minus_w():
    # w/(1-w) has inverse u/(1+u)
    s = S([0] + [1] * (N - 1))
    g = series_reversion(s)
    assert [g[k] for k in range(1, N)] == [Fraction((-1) ** (k + 1)) for k in range(1, N)]


def test_geometric_inverse_and_residue():
    s = S([1, -1])
    inv = s.inverse()
    assert all(inv[k] == 1 for k in range(N))
    laurent = inv.shift(-3)  # w^-3/(1-w): residue is the w^2 coefficient
    assert residue_at_zero(laurent) == 1


def test_catalan_numbers_from_lagrange_inversion():
    # C(w) = 1 + w C^2, so w*C is the inverse of u - u^2
    g = series_reversion(S([0, 1, -1]))
    assert [g[k + 1] for k in range(N - 1)] == [Fraction(comb(2 * k, k), k + 1) for k in range(N - 1)]


def test_truncation_is_enforced():
    s = S([1, 2], order=2)
    with pytest.raises(SeriesTruncationError):
        s[2]
    assert (s * s).order == 2


def test_bad_inputs_raise():
    with pytest.raises(ValueError):
        series_log(S([2, 1]))
    with pytest.raises(ValueError):
        series_exp(S([1, 1]))
    with pytest.raises(ValueError):
        series_reversion(S([0, 0, 1]))
    with pytest.raises(ValueError):
        series_nth_root(S([0, 1]), 2)


# ---- round trips ------------------------------------------------------------------


unit_series = st.lists(small, min_size=N - 1, max_size=N - 1).map(lambda cs: S([1] + cs))
tail = st.lists(small, min_size=N - 1, max_size=N - 1).map(lambda cs: S([0] + cs))


@given(unit_series)
def test_exp_log_round_trip(s):
    assert series_exp(series_log(s)) == s


@given(unit_series, st.integers(2, 4))
def test_root_power_round_trip(s, n):
    assert series_nth_root(s, n) ** n == s


@given(st.lists(small, min_size=N - 2, max_size=N - 2), st.fractions(1, 4, max_denominator=3))
def test_reversion_round_trip(cs, lead):
    s = S([0, lead] + cs)
    g = series_reversion(s)
    w = S([0, 1])
    assert s.compose(g) == w
    assert g.compose(s) == w


@given(unit_series, tail)
def test_multiplicative_inverse(s, t):
    assert s * s.inverse() == S([1])
    assert (s * (t + 1)) / s == t + 1


@given(tail)
def test_derivative_of_integral(t):
    assert t.integral().derivative().truncate(N) == t


# ---- dual numbers -----------------------------------------------------------------


@given(small, small, small, small)
def test_dual_numbers_carry_first_derivatives(a, da, b, db):
    u, v = Dual(a, da), Dual(b, db)
    assert (u * v).eps == a * db + da * b
    if b:
        assert (u / v).eps == (da * b - a * db) / (b * b)
    assert (u**3).eps == 3 * a**2 * da


def test_dual_rejects_pure_infinitesimal_division():
    with pytest.raises(ZeroDivisionError):
        Dual(1) / Dual(0, 1)


# ---- univariate and residues --------------------------------------------------------


def test_gcd_and_squarefree():
    f = up.mul([-1, 1], [-1, 1])  # (s-1)^2
    assert not up.is_squarefree(up.mul(f, [2, 1]))
    assert up.is_squarefree([-1, 0, 1])
    assert up.monic(up.gcd(up.mul([1, 1], [2, 1]), up.mul([1, 1], [3, 1]))) == [1, 1]


def test_inverse_mod():
    m = [1, 0, 1]  # s^2 + 1
    a = [1, 1]
    inv = up.inverse_mod(a, m)
    assert up.mod(up.mul(a, inv), m) == [1]


def test_residue_sum_at_roots_simple_poles():
    # 1/(s^2-1): residues 1/2 at s=1 and -1/2 at s=-1
    assert residue_sum_at_roots([1], [-1, 0, 1]) == 0
    # s/(s^2-1): residues 1/2 and 1/2
    assert residue_sum_at_roots([0, 1], [-1, 0, 1]) == 1
    # s^2/(s^3-2): residue at each root is 1/3
    assert residue_sum_at_roots([0, 0, 1], [-2, 0, 0, 1]) == 1


def test_residues_at_zero_and_infinity():
    # 1/(s^2 (s-1)): Res_0 = -1, Res_1 = 1, so Res_oo = 0
    assert residue_at_zero_rational([1], [0, 0, -1, 1]) == -1
    assert residue_at_infinity_rational([1], [0, 0, -1, 1]) == 0
    # s^2/(s-1) = s + 1 + 1/(s-1): Res_oo = -1
    assert residue_at_infinity_rational([0, 0, 1], [-1, 1]) == -1
    assert laurent_at_infinity([0, 0, 1], [-1, 1], 3)[-1] == 1


@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=3))
def test_global_residue_theorem(numer, shifts):
    # poles at 0 and at distinct nonzero points; finite residues plus Res_oo vanish
    roots = sorted({r + 10 * (i + 1) for i, r in enumerate(shifts)})
    d = [0, 1]
    for r in roots:
        d = up.mul(d, [-r, 1])
    n = [Fraction(c) for c in numer]
    assert residue_sum_at_roots(n, d) + residue_at_infinity_rational(n, d) == 0
    at_zero = residue_at_zero_rational(n, d)
    assert at_zero == Fraction(n[0]) / d[1]
