"""F-manifold structures on logarithmic vector fields and their verification.

A structure is stored in a frame ``e_k = d_k * d/dt_k`` that is diagonal in
the base coordinates (``d_k`` is ``eps`` for ``eps*d_eps`` and 1 otherwise).
Lie derivatives are computed in the coordinate fields, where the tensor is
``C_ij^k = c_ij^k d_k / (d_i d_j)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .deformations import (
    DeterminantalCurveFamily,
    VectorFieldPoly,
    _pair_fields,
    mf_quotient_curve,
    tprime_matrix,
)
from .exact import univariate as up
from .exact.linalg import SingularMatrixError, char_poly, mat_inverse, mat_vec, nullspace
from .exact.poly import MultiPoly, grevlex_key, qstr
from .exact.ratfunc import RationalFunction
from .frobenius_node import SingularFiberError, euler_field, euler_frame_coefficients, weights
from .groebner import GroebnerBasis
from .quotients import MonomialQuotient


@dataclass
class FStructure:
    """Multiplication on a frame of vector fields.

    ``c[i][j][k]`` is the ``e_k`` component of ``e_i * e_j``; entries are
    MultiPolys in ``base`` (symbolic structures) or Fractions (pointwise).
    """

    frame: list
    base: tuple
    c: list
    unit: int
    euler: list                      # E in the frame
    diag: list = None                # d_k, for symbolic structures
    euler_field: VectorFieldPoly = None
    point: dict = None
    meta: dict = field(default_factory=dict)

    @property
    def rank(self):
        return len(self.frame)

    @property
    def symbolic(self):
        return self.point is None

    def product(self, u, v):
        """Product of two frame-coefficient vectors."""
        n = self.rank
        out = [0] * n
        for i in range(n):
            if not _nz(u[i]):
                continue
            for j in range(n):
                if not _nz(v[j]):
                    continue
                w = u[i] * v[j]
                for k in range(n):
                    if _nz(self.c[i][j][k]):
                        out[k] = out[k] + w * self.c[i][j][k]
        return out

    def evaluated(self, point):
        """Pointwise copy at ``point``."""
        if not self.symbolic:
            return self
        ev = lambda g: g.evaluate(point) if isinstance(g, (MultiPoly, RationalFunction)) else Fraction(g)  # noqa: E731
        c = [[[ev(x) for x in row] for row in mat] for mat in self.c]
        return FStructure(list(self.frame), self.base, c, self.unit, [ev(e) for e in self.euler], point=dict(point),
                          meta=dict(self.meta))

    def coordinate_tensor(self):
        """``C_ij^k`` in the coordinate fields, as RationalFunctions."""
        if self.diag is None:
            raise ValueError("structure has no coordinate frame")
        n = self.rank
        R = lambda g: RationalFunction.lift(g, self.base)  # noqa: E731
        return [[[R(self.c[i][j][k] * self.diag[k]) / R(self.diag[i] * self.diag[j]) for k in range(n)]
                 for j in range(n)] for i in range(n)]

    def to_json(self):
        s = qstr
        return {
            "frame": list(self.frame),
            "unit": self.frame[self.unit],
            "euler": [s(e) for e in self.euler],
            "structure_constants": {
                f"{self.frame[i]}*{self.frame[j]}": {self.frame[k]: s(self.c[i][j][k])
                                                     for k in range(self.rank) if _nz(self.c[i][j][k])}
                for i in range(self.rank) for j in range(i, self.rank)
            },
        }


def _nz(x):
    if isinstance(x, (MultiPoly, RationalFunction)):
        return not x.is_zero()
    return x != 0


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def build_fstructure_node(fam):
    """Pull back the algebra structure of ``O/(H)`` along t'F."""
    T = tprime_matrix(fam)
    n = fam.rank
    try:
        Tinv = mat_inverse(T)
    except SingularMatrixError as exc:
        raise SingularMatrixError("t'F matrix is singular") from exc
    Tinv = [[e.as_poly() if isinstance(e, RationalFunction) else e for e in row] for row in Tinv]
    cols = [[T[i][j] for i in range(n)] for j in range(n)]
    alg = fam.algebra
    c = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            prod = alg.multiply(cols[i], cols[j])
            vec = [sum((Tinv[k][m] * prod[m] for m in range(n)), MultiPoly.zero(fam.params)) for k in range(n)]
            c[i][j] = c[j][i] = vec
    fs = FStructure(list(fam.frame), fam.params, c, fam.frame.index("d_c"), euler_frame_coefficients(fam),
                    diag=fam.frame_diagonal(), euler_field=euler_field(fam), meta={"family": f"node({fam.p},{fam.q})"})
    fs.meta["tprime"] = T
    return fs


class DimensionDropError(ValueError):
    """The quotient at the chosen base point is smaller than M_f."""


def _lift_field(minors, dminors, ambient, ideal_gb, max_degree=10):
    """Solve ``dminor_i + xi(minor_i) in I`` for a polynomial field ``xi``.

    The fiber is smooth and affine, so such a lift exists; only its
    coefficients modulo I matter, so they range over standard monomials.
    """
    from .deformations import _monomials_upto

    leads = ideal_gb.leading_monomials
    for d in range(0, max_degree + 1):
        mons = [m for m in _monomials_upto(len(ambient), d)
                if not any(all(a <= b for a, b in zip(l, m)) for l in leads)]
        unknowns = [(v, m) for v in ambient for m in mons]
        keys = {}
        cols = []
        for v, m in unknowns:
            xi = VectorFieldPoly({v: MultiPoly.monomial(m, ambient)}, ambient)
            col = {}
            for gi, g in enumerate(minors):
                for e, c in ideal_gb.reduce(xi(g)).terms.items():
                    keys.setdefault((gi, e), len(keys))
                    col[keys[(gi, e)]] = c
            cols.append(col)
        rhs = {}
        for gi, g in enumerate(dminors):
            for e, c in ideal_gb.reduce(g).terms.items():
                keys.setdefault((gi, e), len(keys))
                rhs[keys[(gi, e)]] = -c
        nrow, ncol = len(keys), len(unknowns)
        rows = [[Fraction(0)] * (ncol + 1) for _ in range(nrow)]
        for j, col in enumerate(cols):
            for i, c in col.items():
                rows[i][j] = c
        for i, c in rhs.items():
            rows[i][ncol] = c
        from .kernels import rref

        pivots = rref(rows, ncol + 1)
        if ncol in pivots:
            continue
        sol = [Fraction(0)] * ncol
        for r, pcol in enumerate(pivots):
            sol[pcol] = rows[r][ncol]
        coeffs = {}
        for (v, m), c in zip(unknowns, sol):
            if c:
                coeffs[v] = coeffs.get(v, MultiPoly.zero(ambient)) + MultiPoly.monomial(m, ambient, c)
        return VectorFieldPoly(coeffs, ambient)
    raise ValueError(f"no polynomial lift of degree <= {max_degree}")


def curve_algebra(fam, point):
    """The finite algebra ``O/(I_b + (V(F_b)))`` at a base point, with its pieces."""
    minors, Fb = fam.at_point(point)
    fields = _pair_fields(minors, fam.ambient)
    gens = minors + [V(Fb) for V in fields]
    q = MonomialQuotient(gens, sum(fam.f.with_vars(fam.ambient).degree(v) for v in fam.ambient) + 3)
    return q, minors, Fb


def build_fstructure_curve(fam, point, expected_dim=None):
    """Pointwise multiplication on the base fields of a determinantal curve family."""
    point = {k: Fraction(v) for k, v in point.items()}
    for t in fam.base_coordinates:
        point.setdefault(t, Fraction(0))
    if expected_dim is None:
        expected_dim = mf_quotient_curve(fam).dimension
    A, minors, Fb = curve_algebra(fam, point)
    if A.dimension != expected_dim:
        raise DimensionDropError(f"algebra at {point} has dimension {A.dimension}, expected {expected_dim}")
    amb = fam.ambient
    gb = GroebnerBasis(minors)
    images = []
    lifts = {}
    for t in fam.base_coordinates:
        if t in fam.params:
            dminors = [m.partial(t).subs(point).with_vars(amb) for m in fam.minors_tilde]
            try:
                xi = _lift_field(minors, dminors, amb, gb)
            except ValueError as exc:
                raise SingularFiberError(f"no lift of d/d{t} at {point}; the fiber is probably singular") from exc
            lifts[t] = xi
            g = xi(Fb) + fam.F.partial(t).subs(point).with_vars(amb)
        else:
            g = fam.F.partial(t).subs(point).with_vars(amb)
        images.append(A.normal_form(g))
    n = len(images)
    if n != A.dimension:
        raise DimensionDropError(f"{n} base fields but the algebra has dimension {A.dimension}")
    T = [[images[j][i] for j in range(n)] for i in range(n)]
    Tinv = mat_inverse(T)
    polys = [A.from_vector(v) for v in images]
    c = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            c[i][j] = c[j][i] = mat_vec(Tinv, A.normal_form(polys[i] * polys[j]))
    w = fam.weights
    euler = [w[t] * point[t] for t in fam.base_coordinates]
    fs = FStructure(list(fam.base_coordinates), fam.base_coordinates, c, fam.base_coordinates.index("d"), euler,
                    point=point, meta={"family": fam.name, "dimension": A.dimension})
    fs.meta.update({"algebra": A, "tprime": T, "images": images, "F_class": A.normal_form(Fb), "lifts": lifts})
    return fs


def check_euler_curve(fam, point, scale=2):
    """``t'F(E) = [F]`` at the point and weighted covariance of the structure constants.

    Scaling the base point by ``mu^w`` must scale ``c_ij^k`` by
    ``mu^(1 - w_i - w_j + w_k)``; ``mu = scale^L`` keeps all powers rational.
    """
    fs = build_fstructure_curve(fam, point)
    n = fs.rank
    T = fs.meta["tprime"]
    tE = [sum((T[i][k] * fs.euler[k] for k in range(n)), Fraction(0)) for i in range(n)]
    class_ok = tE == fs.meta["F_class"]
    w = fam.weights
    L = 1
    for v in w.values():
        L = L * v.denominator // _gcd(L, v.denominator)
    mu_pow = lambda e: Fraction(scale) ** int(e * L)  # noqa: E731
    scaled = {t: fs.point[t] * mu_pow(w[t]) for t in fam.base_coordinates}
    fs2 = build_fstructure_curve(fam, scaled)
    names = fam.base_coordinates
    cov_ok = all(
        fs2.c[i][j][k] == fs.c[i][j][k] * mu_pow(1 - w[names[i]] - w[names[j]] + w[names[k]])
        for i in range(n) for j in range(n) for k in range(n)
    )
    return {"tprime_E_is_F": class_ok, "weighted_covariance": cov_ok, "passed": class_ok and cov_ok}


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


def check_axioms(fs):
    n = fs.rank
    c = fs.c
    comm = all(c[i][j][k] == c[j][i][k] for i in range(n) for j in range(n) for k in range(n))
    unit = all(c[fs.unit][j][k] == (1 if j == k else 0) for j in range(n) for k in range(n))
    failures = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    lhs = sum((c[i][j][m] * c[m][k][l] for m in range(n) if _nz(c[i][j][m]) and _nz(c[m][k][l])), 0)
                    rhs = sum((c[j][k][m] * c[i][m][l] for m in range(n) if _nz(c[j][k][m]) and _nz(c[i][m][l])), 0)
                    if lhs != rhs:
                        failures.append([fs.frame[i], fs.frame[j], fs.frame[k], fs.frame[l]])
    return {
        "commutative": comm,
        "associative": not failures,
        "unit": unit,
        "associativity_failures": failures[:5],
        "passed": comm and unit and not failures,
    }


def mutate(fs, seed=0):
    """A copy with one symmetric pair of structure constants perturbed (negative control)."""
    rng = random.Random(seed)
    n = fs.rank
    c = [[list(row) for row in mat] for mat in fs.c]
    others = [i for i in range(n) if i != fs.unit]
    i = rng.choice(others)
    j = rng.choice(others)
    k = rng.randrange(n)
    one = MultiPoly.one(fs.base) if fs.symbolic else Fraction(1)
    c[i][j][k] = c[i][j][k] + one
    if i != j:
        c[j][i][k] = c[j][i][k] + one
    return FStructure(list(fs.frame), fs.base, c, fs.unit, list(fs.euler), fs.diag, fs.euler_field, fs.point,
                      dict(fs.meta, mutated=[i, j, k]))


# ---------------------------------------------------------------------------
# Lie derivatives
# ---------------------------------------------------------------------------


@dataclass
class LieTensor:
    """``Lie_X(*)`` in the coordinate fields: ``entries[i][j][k]``."""

    field: VectorFieldPoly
    base: tuple
    entries: list

    def in_frame(self, diag):
        n = len(self.entries)
        R = lambda g: RationalFunction.lift(g, self.base)  # noqa: E731
        return [[[self.entries[i][j][k] * R(diag[i] * diag[j]) / R(diag[k]) for k in range(n)]
                 for j in range(n)] for i in range(n)]

    def is_zero(self):
        return all(e.is_zero() for mat in self.entries for row in mat for e in row)


def lie_derivative_tensor(C, X, base):
    """``(Lie_X C)_ij^k = X(C_ij^k) - C_ij^m d_m X^k + C_mj^k d_i X^m + C_im^k d_j X^m``."""
    n = len(base)
    Xc = [RationalFunction.lift(X.component(v), base) for v in base]
    dX = [[Xc[m].partial(base[i]) for m in range(n)] for i in range(n)]  # dX[i][m] = d_i X^m

    def along(g):
        out = RationalFunction.lift(0, base)
        for m in range(n):
            if not Xc[m].is_zero():
                out = out + Xc[m] * g.partial(base[m])
        return out

    out = []
    for i in range(n):
        mat = []
        for j in range(n):
            row = []
            for k in range(n):
                val = along(C[i][j][k])
                for m in range(n):
                    if not C[i][j][m].is_zero() and not dX[m][k].is_zero():
                        val = val - C[i][j][m] * dX[m][k]
                    if not C[m][j][k].is_zero() and not dX[i][m].is_zero():
                        val = val + C[m][j][k] * dX[i][m]
                    if not C[i][m][k].is_zero() and not dX[j][m].is_zero():
                        val = val + C[i][m][k] * dX[j][m]
                row.append(val)
            mat.append(row)
        out.append(mat)
    return out


def lie_of_product(fs, u):
    """``Lie_u(*)`` for a frame field name or a polynomial field on the base."""
    if isinstance(u, str):
        k = fs.frame.index(u)
        u = VectorFieldPoly({fs.base[k]: fs.diag[k]}, fs.base)
    C = fs.coordinate_tensor()
    return LieTensor(u, fs.base, lie_derivative_tensor(C, u, fs.base))


def check_euler(fs, factor=1):
    """``Lie_E(*) = *`` symbolically; ``factor`` rescales E for negative controls."""
    E = fs.euler_field
    if factor != 1:
        E = E.scale(MultiPoly.const(factor, fs.base))
    L = lie_of_product(fs, E).entries
    C = fs.coordinate_tensor()
    n = fs.rank
    bad = [[fs.frame[i], fs.frame[j], fs.frame[k]] for i in range(n) for j in range(n) for k in range(n)
           if L[i][j][k] != C[i][j][k]]
    return {"lie_E_equals_product": not bad, "failures": bad[:5], "passed": not bad}


def _numeric_tensor(fs, point):
    """``C`` and all first partials ``dC[l]`` at a point, exactly."""
    n = fs.rank
    base = fs.base
    ev = lambda g: g.evaluate(point)  # noqa: E731
    d = [ev(x) for x in fs.diag]
    dd = [[ev(x.partial(v)) for v in base] for x in fs.diag]
    if any(x == 0 for x in d):
        raise ZeroDivisionError(f"point {point} lies on the discriminant")
    C = [[[None] * n for _ in range(n)] for _ in range(n)]
    dC = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                g = fs.c[i][j][k]
                gv = ev(g)
                s = d[k] / (d[i] * d[j])
                C[i][j][k] = C[j][i][k] = gv * s
                for l, v in enumerate(base):
                    # d/dv of g d_k / (d_i d_j)
                    ds = (dd[k][l] * d[i] * d[j] - d[k] * (dd[i][l] * d[j] + d[i] * dd[j][l])) / (d[i] * d[j]) ** 2
                    val = ev(g.partial(v)) * s + gv * ds
                    dC[l][i][j][k] = dC[l][j][i][k] = val
    return C, dC


def integrability_at(fs, point):
    """Check ``Lie_{u*v}(*) = Lie_u(*)*v + u*Lie_v(*)`` for all coordinate pairs at a point."""
    n = fs.rank
    C, dC = _numeric_tensor(fs, point)
    failures = []
    for a in range(n):
        for b in range(a, n):
            X = C[a][b]                                  # X^m
            dX = [dC[i][a][b] for i in range(n)]         # dX[i][m] = d_i X^m
            for i in range(n):
                for j in range(i, n):
                    for k in range(n):
                        lhs = sum(X[m] * dC[m][i][j][k] for m in range(n))
                        lhs -= sum(C[i][j][m] * dX[m][k] for m in range(n))
                        lhs += sum(C[m][j][k] * dX[i][m] for m in range(n))
                        lhs += sum(C[i][m][k] * dX[j][m] for m in range(n))
                        rhs = sum(dC[a][i][j][m] * C[m][b][k] for m in range(n))
                        rhs += sum(dC[b][i][j][m] * C[a][m][k] for m in range(n))
                        if lhs != rhs:
                            failures.append([fs.base[a], fs.base[b], fs.base[i], fs.base[j], fs.base[k]])
    return failures


def random_point(base, rng, avoid_zero=("eps",), size=9):
    pt = {}
    for v in base:
        while True:
            x = Fraction(rng.randint(-size, size), rng.randint(1, size))
            if x != 0 or v not in avoid_zero:
                break
        pt[v] = x
    return pt


def check_integrability(fs, points=None, count=5, seed=0):
    if not fs.symbolic:
        raise ValueError("integrability needs a symbolic structure (derivatives in the base); "
                         "curve structures are computed pointwise")
    if points is None:
        rng = random.Random(seed)
        points = [random_point(fs.base, rng) for _ in range(count)]
    results = []
    for pt in points:
        fails = integrability_at(fs, pt)
        results.append({"point": {k: qstr(v) for k, v in pt.items()}, "holds": not fails, "failures": fails[:5]})
    return {"points": results, "passed": all(r["holds"] for r in results)}


# ---------------------------------------------------------------------------
# strata and semisimplicity
# ---------------------------------------------------------------------------


def restrict_to_stratum(fs, var="eps"):
    """Restrict to the stratum ``var = 0`` of a principal coordinate ideal."""
    if not fs.symbolic or var not in fs.base or fs.diag is None:
        raise ValueError(f"unsupported stratum ideal ({var})")
    n = fs.rank
    vidx = fs.base.index(var)
    # frame fields lying in var * Theta
    killed = [k for k in range(n) if all(e[vidx] > 0 for e in fs.diag[k].terms)]
    if not killed:
        raise ValueError(f"no frame field vanishes on {var} = 0")
    keep = [k for k in range(n) if k not in killed]
    sub = {var: 0}
    c0 = [[[fs.c[i][j][k].subs(sub) for k in range(n)] for j in range(n)] for i in range(n)]
    # the ideal generated by the killed fields must be spanned by them
    for k in killed:
        for j in range(n):
            if any(not c0[k][j][m].is_zero() for m in keep):
                raise ValueError("ideal generated by the killed fields is not spanned by them")
    base = tuple(v for v in fs.base if v != var)
    shrink = lambda g: g.with_vars(base)  # noqa: E731
    c = [[[shrink(c0[i][j][k]) for k in keep] for j in keep] for i in keep]
    frame = [fs.frame[k] for k in keep]
    euler = [shrink(fs.euler[k].subs(sub)) for k in keep]
    return FStructure(frame, base, c, frame.index(fs.frame[fs.unit]), euler,
                      diag=[shrink(fs.diag[k]) for k in keep],
                      euler_field=VectorFieldPoly({v: shrink(fs.euler_field.component(v).subs(sub)) for v in base},
                                                  base),
                      meta={"stratum": f"{var} = 0", "killed": [fs.frame[k] for k in killed]})


def euler_matrix(fs):
    """Matrix of ``E*`` in the frame (columns: images of frame fields)."""
    n = fs.rank
    return [[sum((fs.euler[i] * fs.c[i][j][k] for i in range(n)), Fraction(0)) for j in range(n)] for k in range(n)]


def semisimplicity_at(fs, point=None):
    if fs.symbolic:
        if point is None:
            raise ValueError("a point is needed for a symbolic structure")
        for i, d in enumerate(fs.diag or []):
            if d.evaluate(point) == 0:
                raise ZeroDivisionError(f"point {point} lies on the discriminant")
        fs = fs.evaluated(point)
    M = euler_matrix(fs)
    cp = char_poly(M)
    return up.is_squarefree(cp), cp
