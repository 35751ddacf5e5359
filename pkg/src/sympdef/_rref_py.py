"""Pure-Python exact row reduction (fallback for the compiled ``_rref_c`` kernel).

Rows are eliminated fraction-free over the integers; every row is kept
primitive (content divided out) so intermediate sizes stay small.  Only the
final pivot normalisation produces ``Fraction`` entries.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _integer_row(row):
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            q = x.denominator
            if q != 1:
                den = den * q // gcd(den, q)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref(rows, ncols):
    """Reduced row echelon form of ``rows`` (a list of length-``ncols`` lists).

    Returns ``(reduced, pivots)``: the nonzero reduced rows as lists of
    ``Fraction`` with leading entry 1, and the pivot column of each row.
    """
    work = []
    for row in rows:
        irow = _integer_row(row)
        if any(irow):
            work.append(_primitive(irow))
    pivots = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if work[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        pc = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = work[i]
            a = row[c]
            if not a:
                continue
            g = gcd(pc, a)
            mp = pc // g
            ma = a // g
            work[i] = _primitive([mp * x - ma * y for x, y in zip(row, prow)])
        pivots.append(c)
        r += 1
    out = []
    for i in range(r):
        row = work[i]
        lead = row[pivots[i]]
        out.append([Fraction(x, lead) for x in row])
    return out, pivots
