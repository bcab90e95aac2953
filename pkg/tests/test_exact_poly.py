"""Polynomial ring arithmetic, parsing and serialization."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import VARS3, polys
from singfrob.exact import MultiPoly, ParseError, VariableMismatch, parse_poly, poly_arith, poly_partial
from singfrob.exact.poly import qstr

x, y, z = MultiPoly.gens(VARS3)


def P(text, vars=VARS3):
    return parse_poly(text, vars)


# ---- oracles taken from hand expansion -----------------------------------------


def test_binomial_expansion():
    assert (x + y) ** 3 == P("x^3 + 3*x^2*y + 3*x*y^2 + y^3")


def test_difference_of_squares_cancels_fully():
    assert (x - y) * (x + y) - (x**2 - y**2) == MultiPoly.zero(VARS3)


def test_rational_coefficients_stay_exact():
    p = P("1/3*x + 1/6*x")
    assert p == P("1/2*x")
    assert p.coeff((1, 0, 0)) == Fraction(1, 2)


def test_partial_derivative_oracle():
    f = P("x^3*y + 2*x*z^2 - 7")
    assert f.partial("x") == P("3*x^2*y + 2*z^2")
    assert poly_partial(f, "z") == P("4*x*z")
    assert f.partial("y").partial("y").is_zero()


def test_subs_scalars_and_polys():
    f = P("x^2 + y*z")
    assert f.subs({"x": 2}) == P("4 + y*z")
    assert f.subs({"x": y + z}) == P("y^2 + 2*y*z + z^2 + y*z")
    assert f.evaluate({"x": 1, "y": Fraction(1, 2), "z": 4}) == 3


def test_evaluate_requires_all_used_variables():
    with pytest.raises(VariableMismatch):
        P("x + y").evaluate({"x": 1})


def test_with_vars_refuses_to_drop_used_variables():
    with pytest.raises(VariableMismatch):
        P("x + y").with_vars(("x",))
    assert P("x").with_vars(("x",)) == MultiPoly.var("x", ("x",))


def test_mismatched_variable_lists_raise():
    with pytest.raises(VariableMismatch):
        x + MultiPoly.var("x", ("x", "y"))


def test_poly_arith_dispatch():
    assert poly_arith(x, y, "add") == x + y
    assert poly_arith(x, y, "mul") == x * y
    with pytest.raises(ValueError):
        poly_arith(x, y, "pow")


@pytest.mark.parametrize(
    "text",
    ["", "x +", "x ^ y", "3 $ x", "(x + y", "x / 0", "w"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        P(text)


def test_parser_is_whitespace_insensitive_and_handles_unary_minus():
    assert P(" - x ^2+ 3 / 4 * y ") == -x**2 + y * Fraction(3, 4)
    assert P("-(x - y)^2") == -((x - y) ** 2)


def test_qstr_always_gives_num_over_den():
    assert qstr(Fraction(3)) == "3/1"
    assert qstr(0) == "0/1"
    assert qstr(Fraction(-2, 6)) == "-1/3"
    assert qstr(x) == "x"


# ---- ring axioms -----------------------------------------------------------------


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MultiPoly.zero(VARS3)
    assert a * MultiPoly.one(VARS3) == a


@given(polys(), polys())
def test_leibniz_rule(a, b):
    for v in VARS3:
        assert (a * b).partial(v) == a.partial(v) * b + a * b.partial(v)


@given(polys(), st.dictionaries(st.sampled_from(VARS3), st.fractions(-4, 4, max_denominator=3)))
def test_evaluation_is_a_ring_homomorphism(a, pt):
    point = {v: pt.get(v, Fraction(0)) for v in VARS3}
    b = a * a + a
    assert b.evaluate(point) == a.evaluate(point) ** 2 + a.evaluate(point)


@given(polys())
def test_text_round_trip(a):
    assert P(str(a)) == a


@given(polys())
def test_json_round_trip(a):
    assert MultiPoly.from_json(a.to_json()) == a


@given(polys(), polys())
def test_exact_division_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a
