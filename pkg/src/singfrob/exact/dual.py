"""First-order dual numbers ``re + eps*d`` with ``d**2 = 0`` over Q."""

from fractions import Fraction


class Dual:
    __slots__ = ("re", "eps")

    def __init__(self, re, eps=0):
        self.re = Fraction(re)
        self.eps = Fraction(eps)

    @staticmethod
    def _lift(x):
        if isinstance(x, Dual):
            return x
        if isinstance(x, (int, Fraction)):
            return Dual(x, 0)
        return NotImplemented

    def __add__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return Dual(self.re + o.re, self.eps + o.eps)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.re, -self.eps)

    def __sub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return Dual(self.re - o.re, self.eps - o.eps)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return Dual(self.re * o.re, self.re * o.eps + self.eps * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        if o.re == 0:
            raise ZeroDivisionError("dual number with zero real part is not invertible")
        return Dual(self.re / o.re, (self.eps * o.re - self.re * o.eps) / (o.re * o.re))

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __pow__(self, n):
        if n == 0:
            return Dual(1)
        if n < 0:
            return Dual(1) / self ** (-n)
        return Dual(self.re**n, n * self.re ** (n - 1) * self.eps)

    def __eq__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.eps == o.eps

    def __hash__(self):
        return hash((self.re, self.eps))

    def __bool__(self):
        return bool(self.re) or bool(self.eps)

    def __repr__(self):
        return f"Dual({self.re}, {self.eps})"
