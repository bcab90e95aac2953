"""Deformation families of functions on the node, on determinantal space curves and on ICIS.

All families keep their data as :class:`MultiPoly` objects.  The node family
is symbolic in its base parameters; curve computations at nonzero parameters
are done pointwise by evaluating the perturbed matrix first.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

from .exact.linalg import det_bareiss, nullspace
from .exact.poly import MultiPoly, grevlex_key, qstr
from .groebner import GroebnerBasis
from .kernels import rref
from .quotients import MonomialQuotient, NodeAlgebra, node_parameters, node_variables


# ---------------------------------------------------------------------------
# vector fields
# ---------------------------------------------------------------------------


class VectorFieldPoly:
    """A polynomial vector field ``sum coeffs[v] * d/dv``.

    Coefficients share one variable list; coordinates missing from ``coeffs``
    have coefficient zero.
    """

    __slots__ = ("vars", "coeffs")

    def __init__(self, coeffs, vars=None):
        coeffs = {v: c for v, c in coeffs.items()}
        if vars is None:
            vars = next(iter(coeffs.values())).vars
        self.vars = tuple(vars)
        self.coeffs = {}
        for v, c in coeffs.items():
            if v not in self.vars:
                raise ValueError(f"field component {v!r} is not a variable of {self.vars}")
            if not isinstance(c, MultiPoly):
                c = MultiPoly.const(c, self.vars)
            elif c.vars != self.vars:
                c = c.with_vars(self.vars)
            if not c.is_zero():
                self.coeffs[v] = c

    def __call__(self, g):
        """Derivative of ``g`` along the field."""
        out = MultiPoly.zero(self.vars)
        for v, c in self.coeffs.items():
            d = g.partial(v)
            if not d.is_zero():
                out = out + c * d
        return out

    apply = __call__

    def component(self, v):
        return self.coeffs.get(v, MultiPoly.zero(self.vars))

    def __add__(self, other):
        keys = set(self.coeffs) | set(other.coeffs)
        return VectorFieldPoly({k: self.component(k) + other.component(k) for k in keys}, self.vars)

    def __sub__(self, other):
        keys = set(self.coeffs) | set(other.coeffs)
        return VectorFieldPoly({k: self.component(k) - other.component(k) for k in keys}, self.vars)

    def scale(self, g):
        return VectorFieldPoly({k: c * g for k, c in self.coeffs.items()}, self.vars)

    def bracket(self, other):
        """Lie bracket ``[self, other]``."""
        keys = set(self.coeffs) | set(other.coeffs)
        return VectorFieldPoly({k: self(other.component(k)) - other(self.component(k)) for k in keys}, self.vars)

    def subs(self, mapping):
        return VectorFieldPoly({k: c.subs(mapping) for k, c in self.coeffs.items()}, self.vars)

    def with_vars(self, vars):
        return VectorFieldPoly({k: c.with_vars(vars) for k, c in self.coeffs.items()}, vars)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, VectorFieldPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __str__(self):
        parts = [f"({c})*d{v}" for v, c in sorted(self.coeffs.items(), key=lambda kv: self.vars.index(kv[0]))]
        return " + ".join(parts) or "0"

    __repr__ = __str__

    def to_json(self):
        return {"vars": list(self.vars), "coeffs": {v: str(c) for v, c in self.coeffs.items()}}


def cofactor_fields(grad_rows, vars, columns_from):
    """Fields ``det([d/dx_k; rows])`` for every choice of ``len(rows)+1`` columns.

    ``grad_rows`` are lists of partial derivatives indexed like ``columns_from``.
    The first-row cofactor expansion gives the field coefficients.
    """
    m = len(grad_rows) + 1
    fields = []
    for cols in combinations(range(len(columns_from)), m):
        coeffs = {}
        for pos, k in enumerate(cols):
            minor = [[row[j] for j in cols if j != k] for row in grad_rows]
            coeffs[columns_from[k]] = det_bareiss(minor) * (-1) ** pos if minor else MultiPoly.one(vars)
        fields.append(VectorFieldPoly(coeffs, vars))
    return fields


def _gradient(g, coords):
    return [g.partial(v) for v in coords]


# ---------------------------------------------------------------------------
# the node
# ---------------------------------------------------------------------------


class NodeFamily:
    """Miniversal deformation of ``f = x^p + y^q`` on the node ``xy = 0``."""

    def __init__(self, p, q):
        if p < 2 or q < 2:
            raise ValueError("p and q must be at least 2")
        self.p, self.q = p, q
        self.coords = ("x", "y")
        self.params = node_parameters(p, q)
        self.vars = node_variables(p, q)
        V = lambda name: MultiPoly.var(name, self.vars)  # noqa: E731
        x, y = V("x"), V("y")
        F = V("c") + x**p + y**q
        for i in range(1, p):
            F = F + V(f"a{i}") * x**i
        for i in range(1, q):
            F = F + V(f"b{i}") * y**i
        self.F = F
        self.pi = [x * y] + [V(t) for t in self.params[1:]]
        self.H = x * F.partial("x") - y * F.partial("y")
        self.algebra = NodeAlgebra(p, q)
        self.frame = frame_names(p, q)

    @property
    def rank(self):
        return self.p + self.q

    def discriminant(self):
        return MultiPoly.var("eps", self.params)

    def frame_field(self, name):
        """The logarithmic frame field ``name`` as a field on the base."""
        P = self.params
        if name == "eps*d_eps":
            return VectorFieldPoly({"eps": MultiPoly.var("eps", P)}, P)
        if name.startswith("d_") and name[2:] in P and name != "d_eps":
            return VectorFieldPoly({name[2:]: 1}, P)
        raise KeyError(f"{name!r} is not a logarithmic frame field")

    def frame_diagonal(self):
        """Coefficient of each frame field on its own coordinate direction."""
        P = self.params
        return [MultiPoly.var("eps", P)] + [MultiPoly.one(P)] * (len(P) - 1)

    def to_json(self):
        return {
            "kind": "node",
            "p": self.p,
            "q": self.q,
            "total_space_coordinates": list(self.coords),
            "base_coordinates": list(self.params),
            "F": self.F.to_json(),
            "pi": [g.to_json() for g in self.pi],
            "H": self.H.to_json(),
        }

    @classmethod
    def from_json(cls, data):
        if data.get("kind") != "node":
            raise ValueError("not a node family")
        return cls(int(data["p"]), int(data["q"]))


def frame_names(p, q):
    return ["eps*d_eps"] + [f"d_a{i}" for i in range(1, p)] + [f"d_b{i}" for i in range(1, q)] + ["d_c"]


def build_node_family(p, q):
    return NodeFamily(p, q)


def node_lift(name, fam, lift="x"):
    """A lift of a frame field to the total space ``(x, y, a, b, c)``.

    ``eps*d_eps`` lifts to ``x d/dx`` by default; ``y`` gives ``y d/dy`` and
    ``sym`` the average of the two.
    """
    V = fam.vars
    if name == "eps*d_eps":
        x, y = MultiPoly.var("x", V), MultiPoly.var("y", V)
        horiz = {"x": {"x": x}, "y": {"y": y}, "sym": {"x": x / 2, "y": y / 2}}.get(lift)
        if horiz is None:
            raise ValueError(f"unknown lift {lift!r}")
        return VectorFieldPoly(horiz, V)
    fam.frame_field(name)  # validates
    return VectorFieldPoly({name[2:]: 1}, V)


def tprime_node(name, fam, lift="x"):
    """Class in the node algebra of the derivative of F along a lift of ``name``."""
    xi = node_lift(name, fam, lift)
    return fam.algebra.normal_form(xi(fam.F))


def tprime_matrix(fam, lift="x"):
    """Columns are the t'F images of the frame fields in the node-algebra basis."""
    cols = [tprime_node(name, fam, lift) for name in fam.frame]
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def lift_is_tangent(name, fam, lift="x"):
    """Check ``xi(pi_k) = pi^*(u(t_k))`` for every component of pi."""
    xi = node_lift(name, fam, lift)
    u = fam.frame_field(name)
    pullback = {"eps": fam.pi[0]}
    for g, t in zip(fam.pi, fam.params):
        image = u(MultiPoly.var(t, fam.params)).with_vars(fam.vars).subs(pullback)
        if xi(g) != image:
            return False
    return True


# ---------------------------------------------------------------------------
# determinantal space curves
# ---------------------------------------------------------------------------


def maximal_minors(M):
    """Signed maximal minors of a ``k x (k+1)`` matrix: column ``i`` deleted, sign ``(-1)^i``."""
    k = len(M)
    ncols = len(M[0])
    if ncols != k + 1:
        raise ValueError("matrix must have one more column than rows")
    out = []
    for i in range(ncols):
        sub = [[row[j] for j in range(ncols) if j != i] for row in M]
        out.append(det_bareiss(sub) * (-1) ** i)
    return out


class DeterminantalCurveFamily:
    """A space curve given by the maximal minors of ``M`` with a function ``f``.

    ``M_tilde`` is a perturbation of ``M`` depending on ``params``; ``F`` is an
    unfolding of ``f`` using ``unfold_params``.  Everything lives in the
    variable list ``ambient + params + unfold_params``.
    """

    def __init__(self, M, f, M_tilde=None, params=(), F=None, unfold_params=(), ambient=("x", "y", "z"),
                 weights=None, name="curve"):
        self.ambient = tuple(ambient)
        self.params = tuple(params)
        self.unfold_params = tuple(unfold_params)
        self.vars = self.ambient + self.params + self.unfold_params
        lift = lambda g: g.with_vars(self.vars)  # noqa: E731
        self.M = [[lift(e) for e in row] for row in M]
        self.M_tilde = [[lift(e) for e in row] for row in (M_tilde or M)]
        self.f = lift(f)
        self.F = lift(F) if F is not None else self.f
        self.minors = maximal_minors(self.M)
        self.minors_tilde = maximal_minors(self.M_tilde)
        self.weights = dict(weights or {})
        self.name = name

    @property
    def base_coordinates(self):
        return self.params + self.unfold_params

    def ideal_gens(self):
        """Ideal of the special fiber, in the ambient variables."""
        return [m.with_vars(self.ambient) for m in self.minors if not m.is_zero()]

    def to_ambient(self, g):
        return g.with_vars(self.ambient)

    def at_point(self, point):
        """Substitute base values (missing ones are 0); returns (minors, F) in the ambient variables."""
        sub = {k: Fraction(0) for k in self.base_coordinates}
        sub.update({k: Fraction(v) for k, v in point.items()})
        minors = [m.subs(sub).with_vars(self.ambient) for m in self.minors_tilde]
        return minors, self.F.subs(sub).with_vars(self.ambient)

    def to_json(self):
        return {
            "kind": "curve",
            "name": self.name,
            "ambient": list(self.ambient),
            "params": list(self.params),
            "unfold_params": list(self.unfold_params),
            "M": [[e.to_json() for e in row] for row in self.M],
            "M_tilde": [[e.to_json() for e in row] for row in self.M_tilde],
            "f": self.f.to_json(),
            "F": self.F.to_json(),
            "weights": {k: qstr(v) for k, v in self.weights.items()},
        }

    @classmethod
    def from_json(cls, data):
        P = MultiPoly.from_json
        return cls(
            [[P(e) for e in row] for row in data["M"]],
            P(data["f"]),
            [[P(e) for e in row] for row in data["M_tilde"]],
            data["params"],
            P(data["F"]),
            data["unfold_params"],
            data["ambient"],
            {k: Fraction(v) for k, v in data.get("weights", {}).items()},
            data.get("name", "curve"),
        )


def axes_family(p, q, r):
    """The coordinate axes in 3-space with ``f = x^p + y^q + z^r`` and its unfolding.

    The axes are the minors of ``((x, y, 0), (0, y, z))``; the perturbation is
    ``((x, y, l1), (l2, y + l3, z))``.
    """
    if min(p, q, r) < 2:
        raise ValueError("p, q, r must be at least 2")
    params = ("l1", "l2", "l3")
    unfold = tuple(f"a{i}" for i in range(1, p)) + tuple(f"b{i}" for i in range(1, q)) \
        + tuple(f"c{i}" for i in range(1, r)) + ("d",)
    vars = ("x", "y", "z") + params + unfold
    V = lambda n: MultiPoly.var(n, vars)  # noqa: E731
    x, y, z = V("x"), V("y"), V("z")
    zero = MultiPoly.zero(vars)
    M = [[x, y, zero], [zero, y, z]]
    Mt = [[x, y, V("l1")], [V("l2"), y + V("l3"), z]]
    f = x**p + y**q + z**r
    F = f + V("d")
    for i in range(1, p):
        F = F + V(f"a{i}") * x ** (p - i)
    for i in range(1, q):
        F = F + V(f"b{i}") * y ** (q - i)
    for i in range(1, r):
        F = F + V(f"c{i}") * z ** (r - i)
    w = {"x": Fraction(1, p), "y": Fraction(1, q), "z": Fraction(1, r),
         "l1": Fraction(1, r), "l2": Fraction(1, p), "l3": Fraction(1, q), "d": Fraction(1)}
    for i in range(1, p):
        w[f"a{i}"] = Fraction(i, p)
    for i in range(1, q):
        w[f"b{i}"] = Fraction(i, q)
    for i in range(1, r):
        w[f"c{i}"] = Fraction(i, r)
    return DeterminantalCurveFamily(M, f, Mt, params, F, unfold, ("x", "y", "z"), w, f"C_{p},{q},{r}")


def curve_tangent_fields(fam, perturbed=False, point=None):
    """One field per pair of minors: ``det(d/dx_k ; grad D_i ; grad D_j)``."""
    if len(fam.ambient) != 3:
        raise ValueError("curve tangent fields need ambient dimension 3")
    if perturbed:
        minors, _ = fam.at_point(point or {})
    else:
        minors = [m.with_vars(fam.ambient) for m in fam.minors]
    return _pair_fields(minors, fam.ambient)


def _pair_fields(minors, ambient):
    grads = [_gradient(m, ambient) for m in minors]
    fields = []
    for i, j in combinations(range(len(minors)), 2):
        fields.extend(cofactor_fields([grads[i], grads[j]], ambient, ambient))
    return fields


def compute_Mf_spacecurve(fam, degree_bound=None):
    """``(dimension, basis)`` of ``O / (I_X + (V(f) : V tangent))`` at zero parameters."""
    q = mf_quotient_curve(fam, degree_bound)
    return q.dimension, q.basis_polys()


def mf_quotient_curve(fam, degree_bound=None):
    f = fam.f.with_vars(fam.ambient)
    gens = fam.ideal_gens() + [V(f) for V in curve_tangent_fields(fam)]
    if degree_bound is None and fam.weights:
        degree_bound = _curve_degree_bound(fam)
    return MonomialQuotient(gens, degree_bound)


def _curve_degree_bound(fam):
    f = fam.f.with_vars(fam.ambient)
    return sum(f.degree(v) for v in fam.ambient) + 3


# ---------------------------------------------------------------------------
# isolated complete intersections
# ---------------------------------------------------------------------------


class ICISFamily:
    """Complete intersection ``X = {g_1 = ... = g_k = 0}`` with a function ``f``."""

    def __init__(self, gs, f, ambient=None):
        gs = list(gs)
        if not gs:
            raise ValueError("need at least one defining equation (k >= 1)")
        self.ambient = tuple(ambient or f.vars)
        self.gs = [g.with_vars(self.ambient) for g in gs]
        self.f = f.with_vars(self.ambient)

    @property
    def k(self):
        return len(self.gs)

    @property
    def n(self):
        return len(self.ambient) - self.k

    def ideal_gens(self):
        return list(self.gs)

    def to_json(self):
        return {
            "kind": "icis",
            "ambient": list(self.ambient),
            "g": [g.to_json() for g in self.gs],
            "f": self.f.to_json(),
        }

    @classmethod
    def from_json(cls, data):
        return cls([MultiPoly.from_json(g) for g in data["g"]], MultiPoly.from_json(data["f"]), data["ambient"])


def icis_tangent_fields(fam, include_f=True):
    """Maximal-minor fields of the matrix with rows ``d/dx``, ``grad f``, ``grad g_i``.

    With ``include_f`` the fields are tangent to the fibers of ``f`` on X;
    without it they are the tangent fields of X itself.
    """
    rows = ([_gradient(fam.f, fam.ambient)] if include_f else []) + [_gradient(g, fam.ambient) for g in fam.gs]
    if len(rows) + 1 > len(fam.ambient):
        raise ValueError(
            f"no maximal minors: {len(rows) + 1} rows but only {len(fam.ambient)} coordinates"
        )
    return cofactor_fields(rows, fam.ambient, fam.ambient)


def jacobian_minors(polys, ambient):
    rows = [_gradient(g, ambient) for g in polys]
    k = len(rows)
    return [det_bareiss([[row[j] for j in cols] for row in rows]) for cols in combinations(range(len(ambient)), k)]


def mf_quotient_icis(fam, degree_bound=None):
    gens = fam.ideal_gens() + [m for m in jacobian_minors([fam.f] + fam.gs, fam.ambient) if not m.is_zero()]
    return MonomialQuotient(gens, degree_bound)


def compute_Mf_icis(fam, degree_bound=None):
    q = mf_quotient_icis(fam, degree_bound)
    return q.dimension, q.basis_polys()


def node_as_icis(p, q):
    V = ("x", "y")
    x, y = MultiPoly.gens(V)
    return ICISFamily([x * y], x**p + y**q, V)


# ---------------------------------------------------------------------------
# unfolding bases
# ---------------------------------------------------------------------------


def _monomials_upto(nvars, d):
    out = []

    def rec(prefix, left):
        if len(prefix) == nvars:
            out.append(tuple(prefix))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k)

    rec([], d)
    out.sort(key=grevlex_key)
    return out


def preserving_derivations(gens, ambient, degree):
    """Q-basis of fields with coefficients of degree <= ``degree`` mapping the ideal into itself."""
    gb = GroebnerBasis(gens)
    mons = _monomials_upto(len(ambient), degree)
    unknowns = [(v, m) for v in ambient for m in mons]
    # column u of the constraint matrix: normal forms of xi_u(g) for each generator
    columns = []
    keys = {}
    for v, m in unknowns:
        xi = VectorFieldPoly({v: MultiPoly.monomial(m, ambient)}, ambient)
        col = {}
        for gi, g in enumerate(gens):
            for e, c in gb.reduce(xi(g)).terms.items():
                key = (gi, e)
                keys.setdefault(key, len(keys))
                col[keys[key]] = c
        columns.append(col)
    rows = [[Fraction(0)] * len(unknowns) for _ in range(len(keys))]
    for j, col in enumerate(columns):
        for i, c in col.items():
            rows[i][j] = c
    fields = []
    for vec in nullspace(rows, len(unknowns)):
        coeffs = {}
        for (v, m), c in zip(unknowns, vec):
            if c:
                coeffs[v] = coeffs.get(v, MultiPoly.zero(ambient)) + MultiPoly.monomial(m, ambient, c)
        fields.append(VectorFieldPoly(coeffs, ambient))
    return fields


def unfolding_basis(fam, quotient=None, degree=None):
    """Monomials spanning ``M_f`` modulo the images ``xi(f)`` of derivations of X.

    Pivots are taken on the largest monomials first, so the complement is made
    of the smallest standard monomials, listed by degree then lexicographically.
    """
    if quotient is None:
        quotient = mf_quotient_curve(fam) if isinstance(fam, DeterminantalCurveFamily) else mf_quotient_icis(fam)
    ambient = fam.ambient
    f = fam.f.with_vars(ambient)
    gens = fam.ideal_gens()
    if degree is None:
        degree = max(sum(e) for e in quotient.basis) + 1
    images = [quotient.normal_form(xi(f)) for xi in preserving_derivations(gens, ambient, degree)]
    n = quotient.dimension
    order = sorted(range(n), key=lambda i: grevlex_key(quotient.basis[i]), reverse=True)
    rows = [[vec[i] for i in order] for vec in images if any(vec)]
    pivots = {order[j] for j in rref(rows, n)} if rows else set()
    rest = [quotient.basis[i] for i in range(n) if i not in pivots]
    rest.sort(key=lambda e: (-sum(e), tuple(-k for k in e)))
    return [MultiPoly.monomial(e, ambient) for e in rest]


def family_from_json(data):
    kind = data.get("kind")
    if kind == "node":
        return NodeFamily.from_json(data)
    if kind == "curve":
        return DeterminantalCurveFamily.from_json(data)
    if kind == "icis":
        return ICISFamily.from_json(data)
    raise ValueError(f"unknown family kind {kind!r}")


def dumps_family(fam):
    return json.dumps(fam.to_json(), sort_keys=True)
