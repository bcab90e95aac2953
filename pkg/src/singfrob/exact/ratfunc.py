"""Quotients of MultiPolys.

There is no multivariate gcd here.  Normal form is: monomial content and
scalar content moved out of the denominator, and the quotient taken whenever
the denominator divides the numerator exactly.  Equality is decided by
cross-multiplication, so it is exact regardless of cancellation.
"""

from fractions import Fraction

from .poly import MultiPoly, grevlex_key


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MultiPoly):
            raise TypeError("numerator must be a MultiPoly")
        if den is None:
            den = MultiPoly.one(num.vars)
        elif isinstance(den, (int, Fraction)):
            den = MultiPoly.const(den, num.vars)
        if den.vars != num.vars:
            raise ValueError("numerator and denominator variables differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def lift(cls, x, vars):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, MultiPoly):
            return cls(x)
        return cls(MultiPoly.const(x, vars))

    @property
    def vars(self):
        return self.num.vars

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError(f"not a polynomial: {self}")
        return self.num / self.den.constant_value()

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _other(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (MultiPoly, int, Fraction)):
            return RationalFunction.lift(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n):
        if n >= 0:
            return RationalFunction(self.num**n, self.den**n)
        return RationalFunction(self.den ** (-n), self.num ** (-n))

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        if self.den.is_constant():
            return hash(self.num / self.den.constant_value())
        return hash((self.num, self.den))

    def partial(self, var):
        n, d = self.num, self.den
        if d.is_constant():
            return RationalFunction(n.partial(var), d)
        return RationalFunction(n.partial(var) * d - n * d.partial(var), d * d)

    def evaluate(self, point):
        dv = self.den.evaluate(point)
        if dv == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {point}")
        return self.num.evaluate(point) / dv

    def subs(self, mapping):
        return RationalFunction(self.num.subs(mapping), self.den.subs(mapping))

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _normalize(num, den):
    if num.is_zero():
        return num, MultiPoly.one(num.vars)
    shift = tuple(min(a, b) for a, b in zip(num.monomial_content(), den.monomial_content()))
    if any(shift):
        neg = tuple(-s for s in shift)
        num = num.mul_monomial(neg)
        den = den.mul_monomial(neg)
    if not den.is_constant():
        q, r = num.divmod(den)
        if r.is_zero():
            num, den = q, MultiPoly.one(num.vars)
    _, lc = den.leading(grevlex_key)
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den
