# cython: language_level=3
"""Compiled elimination kernels; mirrors cprojver._speedups_py."""

from math import gcd

BACKEND = "cython"


def row_update(dict r, dict p, a, b):
    """In place: r := a*r - b*p, then divide by the content gcd."""
    cdef object k, v, s, g
    if a != 1:
        for k in r:
            r[k] = r[k] * a
    for k, v in p.items():
        s = r.get(k, 0) - b * v
        if s:
            r[k] = s
        else:
            r.pop(k, None)
    if not r:
        return
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in r:
            r[k] = r[k] // g


def row_content(dict r):
    cdef object g, v
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def bareiss_rank(rows, Py_ssize_t ncols):
    """Rank of a dense integer matrix (list of lists), fraction-free."""
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef Py_ssize_t rank = 0
    cdef object prev = 1, pv, rv
    cdef list ri, rrow
    for col in range(ncols):
        piv = -1
        for i in range(row, nrows):
            if (<list>m[i])[col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
        rrow = <list>m[row]
        pv = rrow[col]
        for i in range(row + 1, nrows):
            ri = <list>m[i]
            rv = ri[col]
            for j in range(col + 1, ncols):
                ri[j] = (pv * ri[j] - rv * rrow[j]) // prev
            ri[col] = 0
        prev = pv
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank
