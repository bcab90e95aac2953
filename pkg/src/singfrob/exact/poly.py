"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from ..kernels import add_scaled_terms, mul_terms, shift_scale_terms

Rational = Fraction


class VariableMismatch(ValueError):
    pass


def _coerce_scalar(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


def qstr(x):
    """Exact text form: rationals always as ``num/den``, anything else via ``str``."""
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def grevlex_key(exp):
    """Sort key realizing graded reverse lexicographic order (larger = bigger)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def deglex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Polynomial in a fixed, ordered tuple of variables.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(i) for i in e)
                if len(e) != n or min(e, default=0) < 0:
                    raise ValueError(f"bad exponent {e} for variables {self.vars}")
                c = _coerce_scalar(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, vars):
        return cls._raw(tuple(vars), {})

    @classmethod
    def const(cls, c, vars):
        vars = tuple(vars)
        c = _coerce_scalar(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def one(cls, vars):
        return cls.const(1, vars)

    @classmethod
    def var(cls, name, vars):
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatch(f"unknown variable {name!r}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {e: Fraction(1)})

    @classmethod
    def monomial(cls, exp, vars, coeff=1):
        vars = tuple(vars)
        return cls(vars, {tuple(exp): coeff})

    @classmethod
    def gens(cls, vars):
        vars = tuple(vars)
        return [cls.var(v, vars) for v in vars]

    # -- basic queries ------------------------------------------------------
    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * len(self.vars) in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var):
        i = self._index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def used_vars(self):
        used = set()
        for e in self.terms:
            for v, k in zip(self.vars, e):
                if k:
                    used.add(v)
        return [v for v in self.vars if v in used]

    def _index(self, var):
        try:
            return self.vars.index(var)
        except ValueError:
            raise VariableMismatch(f"unknown variable {var!r} (have {self.vars})") from None

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise VariableMismatch(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return MultiPoly._raw(self.vars, add_scaled_terms(self.terms, other.terms, 1))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return MultiPoly._raw(self.vars, add_scaled_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.vars)
            return MultiPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return other
        return MultiPoly._raw(self.vars, mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, MultiPoly) and other.is_constant() and not other.is_zero():
            return self * (1 / other.constant_value())
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, exp, coeff=1):
        return MultiPoly._raw(self.vars, shift_scale_terms(self.terms, tuple(exp), Fraction(coeff)))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and substitution ------------------------------------------
    def partial(self, var):
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MultiPoly._raw(self.vars, out)

    def subs(self, mapping):
        """Substitute scalars or polynomials (same variable list) for variables."""
        idx = {self._index(v): val for v, val in mapping.items()}
        if not idx:
            return self
        powers = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                val = idx[i]
                powers[key] = val**k if isinstance(val, MultiPoly) else Fraction(val) ** k
            return powers[key]

        result = MultiPoly.zero(self.vars)
        acc = {}
        for e, c in self.terms.items():
            rest = tuple(0 if i in idx else k for i, k in enumerate(e))
            factor = Fraction(c)
            poly_factor = None
            for i in idx:
                if e[i]:
                    pv = power(i, e[i])
                    if isinstance(pv, MultiPoly):
                        poly_factor = pv if poly_factor is None else poly_factor * pv
                    else:
                        factor *= pv
            if poly_factor is None:
                if factor:
                    acc[rest] = acc.get(rest, 0) + factor
            else:
                result = result + poly_factor.mul_monomial(rest, factor)
        acc = {e: c for e, c in acc.items() if c}
        return result + MultiPoly._raw(self.vars, acc)

    def evaluate(self, point):
        """Full evaluation at a point given as ``{name: scalar}``; returns a Fraction."""
        missing = [v for v in self.used_vars() if v not in point]
        if missing:
            raise VariableMismatch(f"no value for {missing}")
        vals = [Fraction(point.get(v, 0)) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            total += t
        return total

    def with_vars(self, new_vars):
        """Re-express in another variable list; dropped variables must be unused."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(new_vars)}
        for v in self.used_vars():
            if v not in pos:
                raise VariableMismatch(f"variable {v!r} is used and cannot be dropped")
        mapping = [(pos[v], i) for i, v in enumerate(self.vars) if v in pos]
        out = {}
        n = len(new_vars)
        for e, c in self.terms.items():
            ne = [0] * n
            for j, i in mapping:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return MultiPoly._raw(new_vars, out)

    def split(self, outer):
        """View as a polynomial in ``outer`` with coefficients in the remaining variables.

        Returns ``{outer_exponent: MultiPoly}``.
        """
        outer = tuple(outer)
        oi = [self._index(v) for v in outer]
        inner_vars = tuple(v for v in self.vars if v not in outer)
        ii = [self.vars.index(v) for v in inner_vars]
        groups = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in oi)
            groups.setdefault(key, {})[tuple(e[i] for i in ii)] = c
        return {k: MultiPoly._raw(inner_vars, t) for k, t in groups.items()}

    # -- division -----------------------------------------------------------
    def leading(self, key=grevlex_key):
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def divmod(self, divisor, key=grevlex_key):
        """Multivariate division by a single polynomial: ``self = q*divisor + r``."""
        divisor = self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = divisor.leading(key)
        q = {}
        r = {}
        p = dict(self.terms)
        while p:
            e = max(p, key=key)
            c = p[e]
            if all(a >= b for a, b in zip(e, le)):
                shift = tuple(a - b for a, b in zip(e, le))
                f = c / lc
                q[shift] = f
                p = add_scaled_terms(p, shift_scale_terms(divisor.terms, shift, Fraction(1)), -f)
            else:
                r[e] = c
                del p[e]
        return MultiPoly._raw(self.vars, q), MultiPoly._raw(self.vars, r)

    def divexact(self, divisor):
        if isinstance(divisor, (int, Fraction)):
            return self / divisor
        if divisor.is_constant():
            return self / divisor.constant_value()
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return q

    def monomial_content(self):
        """Exponent of the largest monomial dividing every term."""
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms))

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MultiPoly({self.vars}, {str(self)!r})"

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [
                [list(e), str(c)] for e, c in sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]))
            ],
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["vars"], {tuple(e): Fraction(c) for e, c in data["terms"]})


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_partial(a: MultiPoly, var: str) -> MultiPoly:
    return a.partial(var)
