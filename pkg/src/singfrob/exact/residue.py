"""Residues of univariate rational forms, exactly."""

from fractions import Fraction

from . import univariate as up
from .poly import MultiPoly
from .series import TruncSeries


def _as_list(p):
    if isinstance(p, MultiPoly):
        return up.from_multipoly(p)
    return up.trim([Fraction(c) for c in p])


def residue_sum_at_roots(numer, denom):
    """Sum of residues of ``numer/denom ds`` over all roots of ``denom``.

    Uses the trace of multiplication by ``numer / denom'`` on ``Q[s]/(denom)``,
    so no roots are ever computed.
    """
    n = _as_list(numer)
    d = _as_list(denom)
    if up.deg(d) < 1:
        raise ValueError("denominator must be non-constant")
    if not up.is_squarefree(d):
        raise ValueError("denominator is not squarefree")
    h = up.mod(up.mul(n, up.inverse_mod(up.derivative(d), d)), d)
    return trace_mod(h, d)


def trace_mod(h, d):
    """Trace of multiplication by ``h`` on the quotient ``Q[s]/(d)``."""
    m = up.deg(d)
    total = Fraction(0)
    cur = up.mod(h, d)
    basis_shift = [Fraction(0), Fraction(1)]
    for j in range(m):
        if j < len(cur):
            total += cur[j]
        cur = up.mod(up.mul(cur, basis_shift), d)
    return total


def laurent_at_zero(numer, denom, order, var="w"):
    """Expansion of ``numer/denom`` at 0 as a TruncSeries known below ``order``."""
    n = _as_list(numer)
    d = _as_list(denom)
    dv = next(i for i, c in enumerate(d) if c)
    nv = next((i for i, c in enumerate(n) if c), None)
    if nv is None:
        return TruncSeries([], 0, order, var)
    # order of the unit quotient needs to reach ``order - (nv - dv)``
    width = max(order - (nv - dv), 1)
    ns = TruncSeries(n[nv:], 0, width, var)
    ds = TruncSeries(d[dv:], 0, width, var)
    return (ns / ds).shift(nv - dv)


def laurent_at_infinity(numer, denom, order, var="w"):
    """Expansion of ``numer(s)/denom(s)`` in ``w = 1/s`` near ``s = infinity``."""
    n = _as_list(numer)
    d = _as_list(denom)
    if not n:
        return TruncSeries([], 0, order, var)
    # numer(1/w) = w^-deg(n) * reversed(n)(w)
    s = laurent_at_zero(list(reversed(n)), list(reversed(d)), order - (up.deg(d) - up.deg(n)), var)
    return s.shift(up.deg(d) - up.deg(n))


def residue_at_zero_rational(numer, denom):
    return laurent_at_zero(numer, denom, 0)[-1]


def residue_at_infinity_rational(numer, denom):
    """``Res_{s=inf} numer/denom ds = -[w^1] numer(1/w)/denom(1/w)``."""
    return -laurent_at_infinity(numer, denom, 2)[1]
