"""Residue pairing, flat coordinates, Euler field and weights for the node family."""

import random
from fractions import Fraction

import pytest

from singfrob.deformations import NodeFamily
from singfrob.exact import SeriesTruncationError, mat_inverse
from singfrob.exact import univariate as up
from singfrob.exact.residue import trace_mod
from singfrob.frobenius_node import (
    OnDiscriminantError,
    SingularFiberError,
    _lmul,
    calibrate_conventions,
    check_pairing_shape,
    euler_check,
    fiber_restrict,
    flat_coordinates,
    flat_pairing_check,
    hankel_matrix,
    pairing,
    pairing_matrix,
    residue_theorem_check,
    symbolic_blocks,
    t_depends_only_on_a,
    weight_check,
)

NODE_CASES = [(2, 2), (2, 3), (3, 3), (2, 5)]


def random_base(fam, rng):
    pt = {t: Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for t in fam.params}
    pt["eps"] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
    return pt


def smooth_points(fam, count, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        pt = random_base(fam, rng)
        if fiber_restrict(fam, pt).is_smooth():
            out.append(pt)
    return out


def critical_point_pairing(fm, u, v):
    """Sum over the zeros of H of g/H * ds/s, as a trace on Q[s]/(H s^q)."""
    g = _lmul(fm.rep(u), fm.rep(v))
    Hp = fm.H_poly()
    shift = -min(min(g), 0)
    num = [Fraction(0)] * (max(g) + shift + 1)
    for k, c in g.items():
        num[k + shift] += c
    # g s^(q-1) / Hpoly' with s^-shift handled by an inverse modulo Hpoly
    s_inv = up.inverse_mod([Fraction(0), Fraction(1)], Hp)
    factor = [Fraction(1)]
    power = fm.q - 1 - shift
    base = [Fraction(0), Fraction(1)] if power >= 0 else s_inv
    for _ in range(abs(power)):
        factor = up.mod(up.mul(factor, base), Hp)
    h = up.mul(up.mul(num, factor), up.inverse_mod(up.derivative(Hp), Hp))
    return trace_mod(up.mod(h, Hp), Hp)


def hankel_by_hand(coeffs, n):
    return [[(r + c) * coeffs.get(r + c, 0) if r + c <= n else 0 for c in range(1, n)] for r in range(1, n)]


# ---- the pairing ------------------------------------------------------------------------


def test_corner_entry_by_hand_for_the_quadratic_node():
    # F = s^2 + s^-2, H = 2 s^2 - 2 s^-2; x F_x = 2 s^2 and the zeros of H are the 4th roots of 1,
    # each contributing 2 r^2 * r / (8 r^3) = 1/4
    fam = NodeFamily(2, 2)
    fm = fiber_restrict(fam, {"eps": 1, "a1": 0, "b1": 0, "c": 0})
    assert pairing("eps*d_eps", "d_c", fm) == 1
    assert pairing("d_c", "d_c", fm) == 0


@pytest.mark.parametrize("p,q", NODE_CASES)
def test_pairing_equals_sum_over_critical_points(p, q):
    fam = NodeFamily(p, q)
    for pt in smooth_points(fam, 2, seed=p * 10 + q):
        fm = fiber_restrict(fam, pt)
        pm = pairing_matrix(fm)
        for i, u in enumerate(fam.frame):
            for j, v in enumerate(fam.frame):
                assert pm.total[i][j] == critical_point_pairing(fm, u, v)


@pytest.mark.parametrize("p,q", NODE_CASES)
def test_pairing_shape_and_blocks(p, q):
    fam = NodeFamily(p, q)
    for pt in smooth_points(fam, 3, seed=p + 7 * q):
        pm = pairing_matrix(fiber_restrict(fam, pt))
        shape = check_pairing_shape(pm, fam, pt)
        for key in ("zero_pattern_inf1", "zero_pattern_inf2", "symmetric",
                    "M_inf1_is_inverse_hankel_b", "M_inf2_is_inverse_hankel_a"):
            assert shape[key], key
        # the oracle blocks, built independently of the module's Hankel helper
        a = {i: pt[f"a{i}"] for i in range(1, p)} | {p: 1}
        b = {j: pt[f"b{j}"] for j in range(1, q)} | {q: 1}
        A = list(range(1, p))
        B = list(range(p, p + q - 1))
        assert [[pm.inf2[i][j] for j in A] for i in A] == mat_inverse(hankel_by_hand(a, p))
        assert [[pm.inf1[i][j] for j in B] for i in B] == mat_inverse(hankel_by_hand(b, q))
        # computed corners: 1/2 per summand (see the notes on the displayed value 1/4)
        assert shape["corner_inf1"] == shape["corner_inf2"] == Fraction(1, 2)
        assert not shape["corners_equal_displayed"]


@pytest.mark.parametrize("p,q", NODE_CASES)
def test_residue_theorem_for_every_pair(p, q):
    fam = NodeFamily(p, q)
    for pt in smooth_points(fam, 2, seed=3):
        fm = fiber_restrict(fam, pt)
        assert all(residue_theorem_check(fm, u, v) for u in fam.frame for v in fam.frame)


def test_hankel_helper_matches_hand_construction():
    coeffs = {1: Fraction(2), 2: Fraction(-1, 3), 3: Fraction(1)}
    assert hankel_matrix(coeffs, 3) == hankel_by_hand(coeffs, 3)


def test_symbolic_block_for_cubic():
    # K = [[2 a2, 3], [3, 0]] so K^-1 = [[0, 1/3], [1/3, -2 a2 / 9]]
    blocks = symbolic_blocks(NodeFamily(3, 2))
    M = blocks["a"]
    assert [str(e) for row in M for e in row] == ["0", "1/3", "1/3", "-2/9*a2"]


def test_calibrated_conventions():
    conv = calibrate_conventions(NodeFamily(2, 3))
    assert conv["sigma"] == 1 and conv["tau"] == -1
    assert conv["corner_inf1"] == conv["corner_inf2"] == "1/2"


def test_discriminant_and_singular_fibers_are_rejected():
    fam = NodeFamily(2, 2)
    with pytest.raises(OnDiscriminantError):
        fiber_restrict(fam, {"eps": 0, "a1": 1, "b1": 1, "c": 0})
    # s^2 H = 2 s^4 + a1 s^3 - b1 eps s - 2 eps^2 has a double zero at s = 1 when
    # eps = 1 and a1 = b1 = -4
    fm = fiber_restrict(fam, {"eps": 1, "a1": -4, "b1": -4, "c": 0})
    assert not fm.is_smooth()
    with pytest.raises(SingularFiberError):
        pairing_matrix(fm)


# ---- flat coordinates ---------------------------------------------------------------------


@pytest.mark.parametrize("p,q", NODE_CASES)
def test_flat_pairing_both_routes(p, q):
    fam = NodeFamily(p, q)
    for pt in smooth_points(fam, 3, seed=11):
        report = flat_pairing_check(fam, pt)
        assert report["passed"], report["checks"]
        n = p + q
        G = report["flat_matrix"]
        for i in range(1, p):
            for j in range(1, p):
                assert G[i][j] == (p if i + j == p else 0)
        for i in range(p, n - 1):
            for j in range(p, n - 1):
                assert G[i][j] == (q if (i - p + 1) + (j - p + 1) == q else 0)


@pytest.mark.parametrize("seed", range(4))
def test_flat_coordinates_of_the_cubic_by_hand(seed):
    # with w = 1/x and u = F^(-1/3): log(x u) = -a2/3 u + (a2^2/18 - a1/3) u^2 + O(u^3);
    # the y-part of F only enters from u^3 on
    fam = NodeFamily(3, 2)
    pt = smooth_points(fam, 1, seed=seed)[0]
    a1, a2 = pt["a1"], pt["a2"]
    chart = flat_coordinates(fiber_restrict(fam, pt))
    assert chart.t == [-a2 / 3, a2 * a2 / 18 - a1 / 3]


@pytest.mark.parametrize("p,q", NODE_CASES)
def test_t_and_s_separate(p, q):
    fam = NodeFamily(p, q)
    pt = smooth_points(fam, 1, seed=5)[0]
    assert t_depends_only_on_a(fam, pt) == {"t_unchanged_by_b": True, "s_unchanged_by_a": True}


def test_small_truncation_is_refused():
    fam = NodeFamily(2, 3)
    fm = fiber_restrict(fam, {"eps": 1, "a1": 0, "b1": 0, "b2": 0, "c": 0})
    with pytest.raises(SeriesTruncationError):
        flat_coordinates(fm, N=3)


# ---- Euler field and weights ------------------------------------------------------------------


@pytest.mark.parametrize("p,q", NODE_CASES)
def test_euler_field_maps_to_the_class_of_f(p, q):
    assert euler_check(NodeFamily(p, q))


@pytest.mark.parametrize("p,q", NODE_CASES)
def test_inverse_block_degrees(p, q):
    report = weight_check(NodeFamily(p, q))
    assert report["degrees_match"]
    for e in report["entries"]:
        n = p if e["block"] == "a" else q
        assert Fraction(e["degree"]) == Fraction(e["i"] + e["j"] - n, n)
    assert report["lie_E_eigenvalue"] == "1/1"
