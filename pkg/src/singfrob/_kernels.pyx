# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the inner loops in ``_kernels_py``."""

from fractions import Fraction


cdef tuple _add_exp(tuple ea, tuple eb):
    cdef Py_ssize_t n = len(ea)
    cdef Py_ssize_t k
    cdef list out = [0] * n
    for k in range(n):
        out[k] = <long>ea[k] + <long>eb[k]
    return tuple(out)


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef object ca, cb, c
    if len(a) < len(b):
        a, b = b, a
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = _add_exp(ea, eb)
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def add_scaled_terms(dict a, dict b, object scale):
    cdef dict out = dict(a)
    cdef tuple e
    cdef object c, v
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def shift_scale_terms(dict a, tuple shift, object scale):
    cdef dict out = {}
    cdef tuple e
    for e, c in a.items():
        out[_add_exp(e, shift)] = c * scale
    return out


def rref(list rows, Py_ssize_t ncols):
    cdef list pivots = []
    cdef Py_ssize_t r = 0, nrows = len(rows), col, i, j, piv, width
    cdef list prow, row, nz
    cdef object inv, f
    for col in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list>rows[i])[col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        width = len(prow)
        inv = 1 / Fraction(prow[col])
        if inv != 1:
            for j in range(col, width):
                if prow[j]:
                    prow[j] = prow[j] * inv
        nz = [j for j in range(col, width) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[col]
                if f:
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(col)
        r += 1
    return pivots
