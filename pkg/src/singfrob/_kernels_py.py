"""Pure-Python versions of the inner loops.

Polynomials are passed around as plain ``{exponent_tuple: Fraction}`` dicts;
matrices as lists of row lists.  ``_kernels.pyx`` mirrors this module
function for function.
"""

from fractions import Fraction


def mul_terms(a, b):
    """Product of two sparse term dicts."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([i + j for i, j in zip(ea, eb)])
            c = get(e, 0) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def add_scaled_terms(a, b, scale):
    """Return ``a + scale * b`` without mutating either argument."""
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def shift_scale_terms(a, shift, scale):
    """Multiply every term by the monomial ``shift`` and the scalar ``scale``."""
    return {tuple([i + j for i, j in zip(e, shift)]): c * scale for e, c in a.items()}


def rref(rows, ncols):
    """Reduced row echelon form over the rationals, in place.

    Pivots are searched in the first ``ncols`` columns only; row operations
    act on the full row, so augmented columns are carried along.  Returns
    the list of pivot columns.  Rows are lists of ``Fraction``.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        width = len(prow)
        inv = 1 / Fraction(prow[col])
        if inv != 1:
            for j in range(col, width):
                if prow[j]:
                    prow[j] *= inv
        nz = [j for j in range(col, width) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[col]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(col)
        r += 1
    return pivots
