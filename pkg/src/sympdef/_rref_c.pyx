# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact row reduction; same contract as ``sympdef._rref_py.rref``."""

from fractions import Fraction
from math import gcd


cdef list _integer_row(list row):
    cdef object den = 1
    cdef object q
    for x in row:
        if isinstance(x, Fraction):
            q = x.denominator
            if q != 1:
                den = den * q // gcd(den, q)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


cdef list _primitive(list row):
    cdef object g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref(rows, Py_ssize_t ncols):
    cdef list work = []
    cdef list irow, prow, row, newrow, out
    cdef list pivots = []
    cdef Py_ssize_t r = 0, nrows, c, i, k, piv
    cdef object pc, a, g, mp, ma, lead
    for src in rows:
        irow = _integer_row(list(src))
        if any(irow):
            work.append(_primitive(irow))
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list>work[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            work[r], work[piv] = work[piv], work[r]
        prow = <list>work[r]
        pc = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>work[i]
            a = row[c]
            if not a:
                continue
            g = gcd(pc, a)
            mp = pc // g
            ma = a // g
            newrow = [None] * ncols
            for k in range(ncols):
                newrow[k] = mp * row[k] - ma * prow[k]
            work[i] = _primitive(newrow)
        pivots.append(c)
        r += 1
    out = []
    for i in range(r):
        row = <list>work[i]
        lead = row[pivots[i]]
        out.append([Fraction(x, lead) for x in row])
    return out, pivots
