"""Exact linear algebra over Q and over rational functions."""

from fractions import Fraction

from ..kernels import rref
from .poly import MultiPoly
from .ratfunc import RationalFunction


class SingularMatrixError(ArithmeticError):
    pass


def _divexact(a, b):
    if isinstance(a, MultiPoly):
        return a.divexact(b)
    return a / b


def det_bareiss(rows):
    """Fraction-free determinant over an integral domain (ints, Fractions, MultiPolys)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return m[k][k] * 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def _symbolic(entries):
    return any(isinstance(e, (MultiPoly, RationalFunction)) for e in entries)


def _vars_of(entries):
    for e in entries:
        if isinstance(e, (MultiPoly, RationalFunction)):
            return e.vars
    return None


def _clear_row(row, rhs, vars):
    """Scale a row of rational functions to polynomials."""
    rfs = [RationalFunction.lift(e, vars) for e in row] + [RationalFunction.lift(e, vars) for e in rhs]
    dens = []
    for r in rfs:
        if not r.den.is_constant() and r.den not in dens:
            dens.append(r.den)
    mult = MultiPoly.one(vars)
    for d in dens:
        mult = mult * d
    cleared = []
    for r in rfs:
        v = r * RationalFunction(mult)
        cleared.append(v.as_poly() if v.is_polynomial() else _force_poly(v))
    return cleared[: len(row)], cleared[len(row):]


def _force_poly(r):
    return r.num.divexact(r.den)


def mat_solve(A, b):
    """Solve ``A x = b`` exactly.

    ``b`` is a vector or a list of column vectors (given as a list of lists
    with ``many=True`` semantics via :func:`mat_solve_many`).
    """
    return mat_solve_many(A, [b])[0]


def mat_solve_many(A, bs):
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("matrix must be square")
    for b in bs:
        if len(b) != n:
            raise ValueError("right-hand side has wrong length")
    flat = [e for r in A for e in r] + [e for b in bs for e in b]
    if not _symbolic(flat):
        return _solve_rational(A, bs)
    vars = _vars_of(flat)
    rows, rhs = [], []
    for i in range(n):
        r, c = _clear_row(A[i], [b[i] for b in bs], vars)
        rows.append(r)
        rhs.append(c)
    d = det_bareiss(rows)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    out = []
    for k in range(len(bs)):
        x = []
        for j in range(n):
            mj = [row[:j] + [rhs[i][k]] + row[j + 1:] for i, row in enumerate(rows)]
            x.append(RationalFunction(det_bareiss(mj), d))
        out.append(x)
    return out


def _solve_rational(A, bs):
    n = len(A)
    m = len(bs)
    rows = [[Fraction(e) for e in A[i]] + [Fraction(b[i]) for b in bs] for i in range(n)]
    pivots = rref(rows, n)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [[rows[i][n + k] for i in range(n)] for k in range(m)]


def mat_inverse(A):
    n = len(A)
    flat = [e for r in A for e in r]
    one, zero = 1, 0
    if _symbolic(flat):
        vars = _vars_of(flat)
        one, zero = MultiPoly.one(vars), MultiPoly.zero(vars)
    cols = mat_solve_many(A, [[one if i == k else zero for i in range(n)] for k in range(n)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))] for i in range(len(A))]


def mat_vec(A, v):
    return [sum((A[i][k] * v[k] for k in range(len(v))), Fraction(0)) for i in range(len(A))]


def rank(rows):
    m = [[Fraction(e) for e in r] for r in rows]
    if not m:
        return 0
    return len(rref(m, len(m[0])))


def nullspace(rows, ncols):
    """Basis of ``{x : rows * x = 0}`` over Q."""
    m = [[Fraction(e) for e in r] for r in rows]
    pivots = rref(m, ncols) if m else []
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def char_poly(M):
    """Characteristic polynomial ``det(t*I - M)`` (constant term first), Faddeev-LeVerrier."""
    n = len(M)
    A = [[Fraction(e) for e in r] for r in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- A*M_{k-1} + c_{n-k+1} I
        prev = Mk
        if k == 1:
            Mk = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        else:
            Mk = mat_mul(A, prev)
            c = coeffs[n - k + 1]
            for i in range(n):
                Mk[i][i] += c
        AM = mat_mul(A, Mk)
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return coeffs


def trace(M):
    return sum((M[i][i] for i in range(len(M))), Fraction(0))
