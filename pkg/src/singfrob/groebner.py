"""Buchberger's algorithm over Q in graded reverse lexicographic order."""

from fractions import Fraction
from itertools import combinations

from .exact.poly import MultiPoly, grevlex_key
from .kernels import add_scaled_terms, shift_scale_terms


def _lead(terms):
    e = max(terms, key=grevlex_key)
    return e, terms[e]


def _divides(a, b):
    return all(i <= j for i, j in zip(a, b))


def _lcm(a, b):
    return tuple(max(i, j) for i, j in zip(a, b))


def reduce_terms(terms, basis):
    """Full reduction of ``terms`` by a list of ``(lead_exp, lead_coeff, terms)``."""
    p = dict(terms)
    r = {}
    while p:
        e = max(p, key=grevlex_key)
        c = p[e]
        for le, lc, g in basis:
            if _divides(le, e):
                shift = tuple(i - j for i, j in zip(e, le))
                p = add_scaled_terms(p, shift_scale_terms(g, shift, Fraction(1)), -c / lc)
                break
        else:
            r[e] = c
            del p[e]
    return r


def _monic(terms):
    _, lc = _lead(terms)
    if lc == 1:
        return terms
    inv = 1 / lc
    return {e: c * inv for e, c in terms.items()}


class GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``max_degree`` bounds the lcm degree of S-pairs processed.  Pairs above the
    bound are checked at the end; ``complete`` is False if any fails to reduce
    to zero, meaning the bound was too small.
    """

    def __init__(self, gens, max_degree=None):
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("empty ideal")
        self.vars = gens[0].vars
        self.max_degree = max_degree
        basis = []
        for g in gens:
            if g.vars != self.vars:
                raise ValueError("generators use different variable lists")
            t = reduce_terms(g.terms, basis)
            if t:
                t = _monic(t)
                basis.append((_lead(t)[0], Fraction(1), t))
        self.skipped = []
        basis = self._buchberger(basis)
        self.complete = all(not self._spoly_reduce(basis, i, j) for i, j in self._skipped_pairs(basis))
        self.basis = self._interreduce(basis)

    def _skipped_pairs(self, basis):
        keyed = {id(t): k for k, (_, _, t) in enumerate(basis)}
        for a, b in self.skipped:
            if id(a) in keyed and id(b) in keyed:
                yield keyed[id(a)], keyed[id(b)]

    def _spoly_reduce(self, basis, i, j):
        ei, _, ti = basis[i]
        ej, _, tj = basis[j]
        l = _lcm(ei, ej)
        si = tuple(a - b for a, b in zip(l, ei))
        sj = tuple(a - b for a, b in zip(l, ej))
        s = add_scaled_terms(
            shift_scale_terms(ti, si, Fraction(1)), shift_scale_terms(tj, sj, Fraction(1)), -1
        )
        return reduce_terms(s, basis)

    def _buchberger(self, basis):
        pairs = list(combinations(range(len(basis)), 2))
        while pairs:
            pairs.sort(key=lambda ij: sum(_lcm(basis[ij[0]][0], basis[ij[1]][0])), reverse=True)
            i, j = pairs.pop()
            ei, ej = basis[i][0], basis[j][0]
            l = _lcm(ei, ej)
            if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
                continue  # coprime leading monomials
            if self.max_degree is not None and sum(l) > self.max_degree:
                self.skipped.append((basis[i][2], basis[j][2]))
                continue
            if any(
                k not in (i, j)
                and _divides(basis[k][0], l)
                and (min(i, k), max(i, k)) not in pairs
                and (min(j, k), max(j, k)) not in pairs
                for k in range(len(basis))
            ):
                continue  # chain criterion
            r = self._spoly_reduce(basis, i, j)
            if r:
                r = _monic(r)
                basis.append((_lead(r)[0], Fraction(1), r))
                n = len(basis) - 1
                pairs.extend((k, n) for k in range(n))
        return basis

    def _interreduce(self, basis):
        basis = sorted(basis, key=lambda t: grevlex_key(t[0]))
        minimal = []
        for k, (e, c, t) in enumerate(basis):
            if not any(_divides(m[0], e) for m in minimal):
                minimal.append((e, c, t))
        out = []
        for k, (e, c, t) in enumerate(minimal):
            others = [m for j, m in enumerate(minimal) if j != k]
            rest = {x: y for x, y in t.items() if x != e}
            rest = reduce_terms(rest, others)
            rest[e] = Fraction(1)
            out.append((e, Fraction(1), rest))
        return out

    @property
    def leading_monomials(self):
        return [e for e, _, _ in self.basis]

    def polys(self):
        return [MultiPoly._raw(self.vars, dict(t)) for _, _, t in self.basis]

    def reduce(self, p):
        if p.vars != self.vars:
            raise ValueError("variable list mismatch")
        return MultiPoly._raw(self.vars, reduce_terms(p.terms, self.basis))

    def contains(self, p):
        return self.reduce(p).is_zero()

    def pure_power_certificate(self):
        """Map variable -> smallest k with var**k a leading monomial, or None if missing."""
        cert = {}
        for i, v in enumerate(self.vars):
            ks = [e[i] for e in self.leading_monomials if all(e[j] == 0 for j in range(len(e)) if j != i)]
            cert[v] = min(ks) if ks else None
        return cert

    def standard_monomials(self):
        cert = self.pure_power_certificate()
        if any(k is None for k in cert.values()):
            raise ValueError("quotient is not finite dimensional")
        bounds = [cert[v] for v in self.vars]
        leads = self.leading_monomials
        out = []

        def rec(prefix, i):
            if i == len(bounds):
                e = tuple(prefix)
                if not any(_divides(l, e) for l in leads):
                    out.append(e)
                return
            for k in range(bounds[i]):
                rec(prefix + [k], i + 1)

        rec([], 0)
        out.sort(key=grevlex_key)
        return out
