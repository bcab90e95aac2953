"""Dense univariate polynomials over Q as coefficient lists (constant term first)."""

from fractions import Fraction

from .poly import MultiPoly


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(trim(a)) - 1


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b):
    return add(a, [-c for c in b])


def mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def scale(a, c):
    return trim([x * c for x in a])


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def divmod_(a, b):
    a = [Fraction(x) for x in trim(a)]
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lc = Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        f = a[-1] / lc
        q[k] = f
        for i in range(db + 1):
            a[i + k] -= f * b[i]
        a = trim(a)
    return trim(q), a


def mod(a, b):
    return divmod_(a, b)[1]


def monic(a):
    a = trim(a)
    if not a:
        return a
    lc = Fraction(a[-1])
    return [Fraction(x) / lc for x in a]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b)
    return monic(a)


def ext_gcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    lc = Fraction(r0[-1])
    return scale(r0, 1 / lc), scale(s0, 1 / lc), scale(t0, 1 / lc)


def inverse_mod(a, m):
    g, s, _ = ext_gcd(a, m)
    if g != [1]:
        raise ArithmeticError("not invertible modulo the given polynomial")
    return mod(s, m)


def is_squarefree(a):
    a = trim(a)
    if len(a) <= 1:
        return True
    return deg(gcd(a, derivative(a))) == 0


def evaluate(a, x):
    v = Fraction(0)
    for c in reversed(a):
        v = v * x + c
    return v


def from_multipoly(p: MultiPoly, var=None):
    used = p.used_vars()
    if len(used) > 1:
        raise ValueError(f"not univariate: {p}")
    if var is None:
        var = used[0] if used else p.vars[0]
    i = p.vars.index(var)
    out = [Fraction(0)] * (max((e[i] for e in p.terms), default=0) + 1)
    for e, c in p.terms.items():
        out[e[i]] += c
    return trim(out)


def to_multipoly(a, var="s"):
    return MultiPoly((var,), {(i,): c for i, c in enumerate(a) if c})


def to_str(a, var="s"):
    return str(to_multipoly(a, var))
