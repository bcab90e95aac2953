"""Truncated Laurent series in one variable.

A ``TruncSeries`` knows its coefficients for exponents ``val <= k < order``;
everything from ``order`` upward is unknown.  Arithmetic propagates the
order, and reading an unknown coefficient raises ``SeriesTruncationError``.

Coefficients only need ring operations, so the same code runs over
``Fraction``, ``Dual`` and ``MultiPoly`` coefficients.
"""

from fractions import Fraction

from .poly import MultiPoly


class SeriesTruncationError(ArithmeticError):
    pass


def _is_zero(c):
    return c == 0


def _inv(c):
    if c == 1:
        return Fraction(1)
    if isinstance(c, MultiPoly):
        return Fraction(1) / c.constant_value()
    return 1 / c


class TruncSeries:
    __slots__ = ("var", "val", "coeffs", "order")

    def __init__(self, coeffs, val=0, order=None, var="w"):
        coeffs = list(coeffs)
        if order is None:
            order = val + len(coeffs)
        n = order - val
        if n < 0:
            coeffs, val = [], order
            n = 0
        if len(coeffs) > n:
            coeffs = coeffs[:n]
        elif len(coeffs) < n:
            coeffs = coeffs + [Fraction(0)] * (n - len(coeffs))
        self.var = var
        self.val = val
        self.coeffs = coeffs
        self.order = order

    # -- construction -------------------------------------------------------
    @classmethod
    def from_dict(cls, terms, order, var="w"):
        """Series from ``{exponent: coefficient}``, known up to ``order``."""
        keys = [k for k, c in terms.items() if not _is_zero(c) and k < order]
        lo = min(keys, default=order)
        return cls([terms.get(k, Fraction(0)) for k in range(lo, order)], lo, order, var)

    @classmethod
    def monomial(cls, k, order, coeff=1, var="w"):
        return cls.from_dict({k: Fraction(coeff) if isinstance(coeff, int) else coeff}, order, var)

    # -- access -------------------------------------------------------------
    def __getitem__(self, k):
        if k >= self.order:
            raise SeriesTruncationError(
                f"coefficient of {self.var}^{k} unknown (series known below {self.order})"
            )
        if k < self.val:
            return Fraction(0)
        return self.coeffs[k - self.val]

    def valuation(self):
        """Exponent of the first nonzero known coefficient (``order`` if none)."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return self.val + i
        return self.order

    def normalized(self):
        v = self.valuation()
        return TruncSeries(self.coeffs[v - self.val:], v, self.order, self.var)

    def truncate(self, order):
        order = min(order, self.order)
        return TruncSeries(self.coeffs, self.val, order, self.var)

    def items(self):
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                yield self.val + i, c

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            if other.var != self.var:
                raise ValueError(f"series variables differ: {self.var} vs {other.var}")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return self + TruncSeries([other], 0, max(self.order, 1), self.var)
        order = min(self.order, o.order)
        val = min(self.val, o.val)
        return TruncSeries([self[k] + o[k] for k in range(val, order)], val, order, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.val, self.order, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return TruncSeries([c * other for c in self.coeffs], self.val, self.order, self.var)
        a, b = self.normalized(), o.normalized()
        order = min(a.val + b.order, b.val + a.order)
        val = a.val + b.val
        n = order - val
        out = [Fraction(0)] * max(n, 0)
        for i, x in enumerate(a.coeffs[:n]):
            if _is_zero(x):
                continue
            for j, y in enumerate(b.coeffs[: n - i]):
                if not _is_zero(y):
                    out[i + j] = out[i + j] + x * y
        return TruncSeries(out, val, order, self.var)

    def __rmul__(self, other):
        return TruncSeries([other * c for c in self.coeffs], self.val, self.order, self.var)

    def inverse(self):
        s = self.normalized()
        if s.val >= s.order:
            raise SeriesTruncationError("cannot invert a series with no known nonzero coefficient")
        n = s.order - s.val
        u = s.coeffs
        inv0 = _inv(u[0])
        g = [inv0]
        for k in range(1, n):
            acc = Fraction(0)
            for j in range(1, k + 1):
                if not _is_zero(u[j]):
                    acc = acc + u[j] * g[k - j]
            g.append(-inv0 * acc)
        return TruncSeries(g, -s.val, n - s.val, self.var)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return self * _inv(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer powers only; use series_nth_root for roots")
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncSeries([Fraction(1)], 0, _pow_order(self, n), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by ``var**k``."""
        return TruncSeries(self.coeffs, self.val + k, self.order + k, self.var)

    def derivative(self):
        out = [c * k for k, c in zip(range(self.val, self.order), self.coeffs)]
        s = TruncSeries(out, self.val - 1, self.order - 1, self.var)
        return s

    def integral(self):
        if self.val <= -1 < self.order and not _is_zero(self[-1]):
            raise ArithmeticError("series has a residue term; cannot integrate")
        out = {}
        for k, c in self.items():
            out[k + 1] = c * Fraction(1, k + 1)
        return TruncSeries.from_dict(out, self.order + 1, self.var)

    def compose(self, g):
        """Substitute ``g`` (with ``g(0) = 0``) for the variable of ``self``."""
        g = g.normalized()
        vg = g.val
        if vg < 1:
            raise ValueError("inner series must have positive valuation")
        order_cap = self.order * vg
        result = TruncSeries([], 0, order_cap, g.var)
        s = self.normalized()
        if s.val >= s.order:
            return result
        power = g ** s.val if s.val >= 0 else g.inverse() ** (-s.val)
        for k in range(s.val, s.order):
            c = s[k]
            if not _is_zero(c):
                result = result + power * c
            if k + 1 < s.order:
                power = power * g
        return result.truncate(order_cap)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.val, other.val)
        return all(self[k] == other[k] for k in range(lo, order))

    def __repr__(self):
        body = " + ".join(f"({c})*{self.var}^{k}" for k, c in self.items()) or "0"
        return f"{body} + O({self.var}^{self.order})"

    def to_json(self):
        return {
            "var": self.var,
            "order": self.order,
            "coeffs": {str(k): str(c) for k, c in self.items()},
        }


def _pow_order(s, n):
    v = s.valuation()
    if n == 0:
        return max(s.order - v, 1) if s.order > v else 1
    return (n - 1) * v + s.order


def series_exp(s):
    if s.val <= 0 and not _is_zero(s[0]):
        raise ValueError("exp needs zero constant term")
    s = s.normalized()
    if s.val < 0:
        raise ValueError("exp of a series with a pole")
    n = s.order
    e = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        acc = Fraction(0)
        for j in range(1, k + 1):
            c = s[j]
            if not _is_zero(c):
                acc = acc + c * j * e[k - j]
        e[k] = acc * Fraction(1, k)
    return TruncSeries(e, 0, n, s.var)


def series_log(s):
    """Logarithm of a series with constant term exactly 1."""
    if s.valuation() < 0 or s[0] != 1:
        raise ValueError("series_log needs constant term 1")
    d = s.derivative() / s
    return d.integral().truncate(s.order)


def series_nth_root(s, n):
    """The n-th root with leading coefficient 1, by Newton iteration."""
    if not isinstance(n, int) or n <= 0:
        raise ValueError("root index must be a positive integer")
    s = s.normalized()
    if s.val >= s.order or s[s.val] != 1:
        raise ValueError("series_nth_root needs lowest coefficient 1")
    if s.val % n:
        raise ValueError(f"lowest exponent {s.val} is not divisible by {n}")
    unit = s.shift(-s.val)
    target = unit.order
    r = TruncSeries([Fraction(1)], 0, 1, s.var)
    prec = 1
    inv_n = Fraction(1, n)
    while prec < target:
        prec = min(2 * prec, target)
        r = TruncSeries(r.coeffs, 0, prec, s.var)
        u = unit.truncate(prec)
        r = r + (u * r.inverse() ** (n - 1) - r) * inv_n
    return r.shift(s.val // n)


def series_reversion(s):
    """Compositional inverse of ``s = c1*w + ...`` with ``c1 != 0``, by Newton iteration."""
    s = s.truncate(s.order)
    if s.val < 1 and not _is_zero(s[0]):
        raise ValueError("reversion needs zero constant term")
    if s.order <= 1 or _is_zero(s[1]):
        raise ValueError("reversion needs a nonzero linear term")
    target = s.order
    w = TruncSeries([Fraction(0), Fraction(1)], 0, target, s.var)
    g = TruncSeries([Fraction(0), _inv(s[1])], 0, 2, s.var)
    ds = s.derivative()
    prec = 2
    while prec < target:
        prec = min(2 * prec, target)
        g = TruncSeries(g.coeffs, g.val, prec, s.var)
        num = s.truncate(prec).compose(g) - w.truncate(prec)
        den = ds.truncate(prec).compose(g)
        g = (g - num / den).truncate(prec)
    return g


def residue_at_zero(s):
    """Coefficient of ``w**-1``."""
    return s[-1]
