"""Exact linear algebra, rational functions, Groebner bases and the kernel backends."""

import itertools
import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import VARS3, polys
from singfrob import _kernels_py
from singfrob.exact import (
    MultiPoly,
    RationalFunction,
    SingularMatrixError,
    char_poly,
    det_bareiss,
    mat_inverse,
    mat_mul,
    nullspace,
    parse_poly,
    rank,
)
from singfrob.exact.linalg import trace
from singfrob.groebner import GroebnerBasis
from singfrob.quotients import CertificateError, MonomialQuotient, quotient_dimension

small = st.fractions(-4, 4, max_denominator=3)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


# ---- linear algebra ------------------------------------------------------------------


def leibniz_det(M):
    n = len(M)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(sign)
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


@given(st.integers(1, 4).flatmap(square))
def test_bareiss_matches_leibniz(M):
    assert det_bareiss(M) == leibniz_det(M)


@given(st.integers(1, 4).flatmap(square))
def test_inverse_or_singular(M):
    n = len(M)
    if leibniz_det(M) == 0:
        with pytest.raises(SingularMatrixError):
            mat_inverse(M)
        assert rank([list(r) for r in M]) < n
        for v in nullspace([list(r) for r in M], n):
            assert all(sum(M[i][j] * v[j] for j in range(n)) == 0 for i in range(n))
    else:
        I = mat_mul(M, mat_inverse(M))
        assert I == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


@given(st.integers(1, 4).flatmap(square))
def test_char_poly_is_det_of_t_minus_m(M):
    n = len(M)
    t = MultiPoly.var("t", ("t",))
    TM = [[(t if i == j else t * 0) - M[i][j] for j in range(n)] for i in range(n)]
    d = det_bareiss(TM)
    assert char_poly(M) == [d.coeff((k,)) for k in range(n + 1)]
    assert char_poly(M)[n - 1] == -trace(M)


def test_symbolic_inverse_of_hankel_block():
    V = ("a1", "a2")
    a1, a2 = MultiPoly.gens(V)
    one = MultiPoly.one(V)
    K = [[2 * a2, 3 * one], [3 * one, 0 * one]]
    inv = mat_inverse(K)
    expected = [[0, Fraction(1, 3)], [Fraction(1, 3), Fraction(-2, 9) * a2]]
    for i in range(2):
        for j in range(2):
            assert inv[i][j] == expected[i][j]


# ---- rational functions ----------------------------------------------------------------


nonzero = polys(max_terms=3, max_exp=2).filter(lambda p: not p.is_zero())


@given(polys(max_terms=3, max_exp=2), nonzero, polys(max_terms=3, max_exp=2), nonzero)
def test_rational_function_field_operations(a, b, c, d):
    r, s = RationalFunction(a, b), RationalFunction(c, d)
    assert r + s == RationalFunction(a * d + c * b, b * d)
    assert r * s == RationalFunction(a * c, b * d)
    assert (r + s) - s == r
    if not c.is_zero():
        assert (r / s) * s == r


@given(polys(max_terms=3, max_exp=2), nonzero)
def test_quotient_rule(a, b):
    r = RationalFunction(a, b)
    assert r.partial("x") * b * b == RationalFunction(a.partial("x") * b - a * b.partial("x"))


def test_polynomial_quotients_collapse():
    x, y, z = MultiPoly.gens(VARS3)
    r = RationalFunction(x * x - y * y, x - y)
    assert r.is_polynomial() and r.as_poly() == x + y


# ---- Groebner bases ---------------------------------------------------------------------


def P(t, vars=VARS3):
    return parse_poly(t, vars)


def macaulay_dimension(gens, D, d):
    """dim Q[x]/I from the span of all multiples m*g of degree <= D.

    Counts ``Q[x]_{<=d}`` modulo its intersection with that span; for d past
    the top standard degree and D well above d this is the dimension of the
    quotient.
    """
    vars = gens[0].vars
    mons = [e for e in itertools.product(range(D + 1), repeat=len(vars)) if sum(e) <= D]
    index = {e: i for i, e in enumerate(mons)}
    rows = []
    for g in gens:
        for m in mons:
            if sum(m) + g.total_degree() <= D:
                row = [Fraction(0)] * len(mons)
                for e, c in g.mul_monomial(m).terms.items():
                    row[index[e]] = c
                rows.append(row)
    high = [index[e] for e in mons if sum(e) > d]
    low_count = len(mons) - len(high)
    in_low = rank(rows) - rank([[r[i] for i in high] for r in rows])
    return low_count - in_low


IDEALS = [
    (["x^2 - y", "y^2 - x"], ("x", "y")),
    (["x*y", "x^3 + y^2"], ("x", "y")),
    (["x^2 + y^2 - 1", "x - y"], ("x", "y")),
    (["x*y - z", "x^2 - 1", "z^3 - y"], VARS3),
    (["x^2*y - z^2", "y^2 - x", "z^2 - x*y - 1"], VARS3),
]


@pytest.mark.parametrize("gens,vars", IDEALS)
def test_quotient_dimension_matches_macaulay_rank(gens, vars):
    G = [P(g, vars) for g in gens]
    dim, basis, cert = quotient_dimension(G)
    assert all(k is not None for k in cert.values())
    top = max(sum(e) for e in MonomialQuotient(G).basis)
    assert macaulay_dimension(G, top + 6, top + 1) == dim == len(basis)


def test_groebner_matches_sympy_reduced_basis():
    sympy = pytest.importorskip("sympy")
    for gens, vars in IDEALS:
        syms = sympy.symbols(vars)
        theirs = sympy.groebner([sympy.sympify(g.replace("^", "**")) for g in gens], *syms, order="grevlex")
        monic = {sympy.expand(g / sympy.Poly(g, *syms).LC(order="grevlex")) for g in theirs.exprs}
        ours = {sympy.expand(sympy.sympify(str(p).replace("^", "**"))) for p in GroebnerBasis([P(g, vars) for g in gens]).polys()}
        assert ours == monic


@given(polys(("x", "y"), max_terms=3, max_exp=3), polys(("x", "y"), max_terms=3, max_exp=3))
def test_ideal_membership_of_combinations(a, b):
    gens = [P("x^2 - y", ("x", "y")), P("y^2 - x", ("x", "y"))]
    gb = GroebnerBasis(gens)
    assert gb.contains(a * gens[0] + b * gens[1])
    # normal forms are canonical: equal classes have equal remainders
    assert gb.reduce(a + gens[0] * b) == gb.reduce(a)


def test_positive_dimensional_quotient_raises_certificate_error():
    with pytest.raises(CertificateError):
        MonomialQuotient([P("x*y", ("x", "y"))])


def test_mult_matrix_char_poly_has_roots_of_the_ideal():
    # I = (x^2 - 2): multiplication by x has char poly t^2 - 2
    q = MonomialQuotient([P("x^2 - 2", ("x",))])
    assert char_poly(q.mult_matrix(P("x", ("x",)))) == [-2, 0, 1]


# ---- kernel backends ---------------------------------------------------------------------


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.fractions(-5, 5, max_denominator=4).filter(bool), max_size=6
)


def backends():
    out = [_kernels_py]
    try:
        from singfrob import _kernels

        out.append(_kernels)
    except ImportError:
        pass
    return out


@given(terms, terms, small)
def test_backends_agree_on_term_kernels(a, b, c):
    results = [(k.mul_terms(a, b), k.add_scaled_terms(a, b, c), k.shift_scale_terms(a, (1, 2), c))
               for k in backends()]
    assert all(r == results[0] for r in results)
    assert results[0][0] == (MultiPoly(("x", "y"), a) * MultiPoly(("x", "y"), b)).terms


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_backends_agree_on_rref(rows):
    outs = []
    for k in backends():
        m = [list(r) for r in rows]
        outs.append((k.rref(m, 4), m))
    assert all(o == outs[0] for o in outs)


def test_pure_python_backend_is_selectable():
    env = dict(os.environ, SINGFROB_PURE_PYTHON="1")
    code = ("import singfrob.kernels as k; from singfrob.quotients import quotient_dimension;"
            "from singfrob.exact import parse_poly;"
            "print(k.BACKEND, quotient_dimension([parse_poly('x^3-y'), parse_poly('y^2-x')])[0])")
    src = os.path.join(os.path.dirname(__file__), "..", "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "6"]
