"""Quotient rings: the deformed-node algebra O/(H) and finite polynomial quotients."""

from __future__ import annotations

from fractions import Fraction

from .exact.poly import MultiPoly, grevlex_key
from .groebner import GroebnerBasis


class CertificateError(ArithmeticError):
    """No finite-dimension certificate was found up to the degree bound."""

    def __init__(self, message, degree_bound=None):
        super().__init__(message)
        self.degree_bound = degree_bound


# ---------------------------------------------------------------------------
# finite quotients Q[x]/I
# ---------------------------------------------------------------------------


class MonomialQuotient:
    """``Q[vars]/(gens)`` with its standard-monomial basis in grevlex order."""

    def __init__(self, gens, degree_bound=None, retry=True):
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("need at least one nonzero generator")
        self.vars = gens[0].vars
        self.gens = gens
        D = degree_bound if degree_bound is not None else default_degree_bound(gens)
        gb = GroebnerBasis(gens, max_degree=D)
        if not self._ok(gb) and retry:
            D *= 2
            gb = GroebnerBasis(gens, max_degree=D)
        if not gb.complete:
            raise CertificateError(f"Groebner basis incomplete at degree bound {D}", D)
        cert = gb.pure_power_certificate()
        missing = [v for v, k in cert.items() if k is None]
        if missing:
            raise CertificateError(
                f"no pure power of {missing} in the leading ideal (degree bound {D}); "
                "the quotient is not finite dimensional",
                D,
            )
        self.degree_bound = D
        self.gb = gb
        self.certificate = cert
        self.basis = gb.standard_monomials()
        self._index = {e: i for i, e in enumerate(self.basis)}

    @staticmethod
    def _ok(gb):
        return gb.complete and all(k is not None for k in gb.pure_power_certificate().values())

    @property
    def dimension(self):
        return len(self.basis)

    def basis_polys(self):
        return [MultiPoly.monomial(e, self.vars) for e in self.basis]

    def basis_strings(self):
        return [str(p) for p in self.basis_polys()]

    def normal_form(self, p):
        """Coordinates of ``p`` in the standard-monomial basis."""
        r = self.gb.reduce(p)
        vec = [Fraction(0)] * len(self.basis)
        for e, c in r.terms.items():
            vec[self._index[e]] = c
        return vec

    def from_vector(self, vec):
        return sum(
            (MultiPoly.monomial(e, self.vars, c) for e, c in zip(self.basis, vec) if c),
            MultiPoly.zero(self.vars),
        )

    def mult_matrix(self, p):
        """Matrix (columns = images of basis elements) of multiplication by ``p``."""
        cols = [self.normal_form(p * b) for b in self.basis_polys()]
        n = len(self.basis)
        return [[cols[j][i] for j in range(n)] for i in range(n)]


def default_degree_bound(gens):
    return max(g.total_degree() for g in gens) * 2 + 2


def quotient_dimension(gens, D=None):
    """Return ``(dimension, standard monomials, certificate)`` for ``Q[x]/(gens)``."""
    q = MonomialQuotient(gens, D)
    return q.dimension, q.basis_polys(), q.certificate


# ---------------------------------------------------------------------------
# the deformed node
# ---------------------------------------------------------------------------


def node_parameters(p, q):
    return ("eps",) + tuple(f"a{i}" for i in range(1, p)) + tuple(f"b{i}" for i in range(1, q)) + ("c",)


def node_variables(p, q):
    return ("x", "y") + node_parameters(p, q)


class NodeAlgebra:
    """The algebra ``Q[x, y, params]/(H)`` as a free module over the parameters.

    ``xy`` acts as ``eps``.  Basis elements are pure powers ``("x", n)`` and
    ``("y", n)``; ``("x", 0)`` is the unit.  With ``keep="x"`` the basis is
    ``1, x, ..., x^p, y, ..., y^(q-1)``; ``keep="y"`` swaps the roles.
    """

    def __init__(self, p, q, keep="x"):
        if p < 2 or q < 2:
            raise ValueError("p and q must be at least 2")
        if keep not in ("x", "y"):
            raise ValueError("keep must be 'x' or 'y'")
        self.p, self.q, self.keep = p, q, keep
        self.params = node_parameters(p, q)
        self.vars = node_variables(p, q)
        P = lambda name: MultiPoly.var(name, self.params)  # noqa: E731
        self.eps = P("eps")
        top_x = p if keep == "x" else p - 1
        top_y = q - 1 if keep == "x" else q
        self.basis = [("x", n) for n in range(0, top_x + 1)] + [("y", n) for n in range(1, top_y + 1)]
        self._pos = {b: i for i, b in enumerate(self.basis)}
        # H = sum i a_i x^i + p x^p - sum i b_i y^i - q y^q, keyed by pure powers
        self.H_x = {i: P(f"a{i}") * i for i in range(1, p)}
        self.H_x[p] = MultiPoly.const(p, self.params)
        self.H_y = {i: P(f"b{i}") * (-i) for i in range(1, q)}
        self.H_y[q] = MultiPoly.const(-q, self.params)
        self._rules = {}

    @property
    def rank(self):
        return len(self.basis)

    def basis_labels(self):
        return ["1" if n == 0 else (v if n == 1 else f"{v}^{n}") for v, n in self.basis]

    def basis_poly(self, label):
        v, n = label
        return MultiPoly.var(v, self.vars) ** n

    def H(self):
        x = MultiPoly.var("x", self.vars)
        y = MultiPoly.var("y", self.vars)
        h = MultiPoly.zero(self.vars)
        for n, c in self.H_x.items():
            h = h + c.with_vars(self.vars) * x**n
        for n, c in self.H_y.items():
            h = h + c.with_vars(self.vars) * y**n
        return h

    def _in_basis(self, key):
        return key in self._pos

    def _mixed(self, i, j):
        """``x^i y^j`` as ``(eps power, pure-power key)``."""
        m = min(i, j)
        if i >= j:
            return m, ("x", i - m)
        return m, ("y", j - m)

    def _rule(self, key):
        """Express a non-basis pure power through lower keys using ``X^k * H = 0``."""
        if key in self._rules:
            return self._rules[key]
        v, N = key
        own, other = (self.H_x, self.H_y) if v == "x" else (self.H_y, self.H_x)
        top = self.p if v == "x" else self.q
        k = N - top
        out = {}

        def add(coeff, shift_key):
            out[shift_key] = out.get(shift_key, 0) + coeff

        for n, c in own.items():
            if n != top:
                add(c, (v, n + k))
        for n, c in other.items():
            # X^k * Other^n
            i, j = (k, n) if v == "x" else (n, k)
            e, kk = self._mixed(i, j)
            add(c * self.eps**e, kk)
        scale = Fraction(-1) / own[top].constant_value()
        rule = {kk: c * scale for kk, c in out.items() if not c.is_zero()}
        self._rules[key] = rule
        return rule

    def _reduce_keys(self, pending):
        while True:
            bad = [k for k, c in pending.items() if not self._in_basis(k) and not c.is_zero()]
            if not bad:
                break
            key = max(bad, key=lambda k: k[1])
            c = pending.pop(key)
            for kk, cc in self._rule(key).items():
                pending[kk] = pending.get(kk, MultiPoly.zero(self.params)) + c * cc
        vec = [MultiPoly.zero(self.params) for _ in self.basis]
        for k, c in pending.items():
            if self._in_basis(k):
                vec[self._pos[k]] = vec[self._pos[k]] + c
        return vec

    def normal_form(self, g):
        """Coefficient vector (over parameter polynomials) of the class of ``g``."""
        if g.vars != self.vars:
            g = g.with_vars(self.vars)
        pending = {}
        for (i, j), coeff in g.split(("x", "y")).items():
            e, key = self._mixed(i, j)
            if e:
                coeff = coeff * self.eps**e
            pending[key] = pending.get(key, MultiPoly.zero(self.params)) + coeff
        return self._reduce_keys(pending)

    def from_vector(self, vec):
        out = MultiPoly.zero(self.vars)
        for label, c in zip(self.basis, vec):
            out = out + c.with_vars(self.vars) * self.basis_poly(label)
        return out

    def multiply(self, u, v):
        """Product of two coefficient vectors."""
        c = self.structure_constants()
        n = self.rank
        out = [MultiPoly.zero(self.params) for _ in range(n)]
        for i in range(n):
            if u[i].is_zero():
                continue
            for j in range(n):
                if v[j].is_zero():
                    continue
                uv = u[i] * v[j]
                for k in range(n):
                    if not c[i][j][k].is_zero():
                        out[k] = out[k] + uv * c[i][j][k]
        return out

    def structure_constants(self):
        if not hasattr(self, "_structure"):
            n = self.rank
            c = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    prod = self.basis_poly(self.basis[i]) * self.basis_poly(self.basis[j])
                    c[i][j] = c[j][i] = self.normal_form(prod)
            self._structure = c
        return self._structure


def node_normal_form(g, alg):
    return alg.normal_form(g)


def node_structure_constants(alg):
    return alg.structure_constants()
