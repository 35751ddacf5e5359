"""Exact linear algebra over the rationals.

The row-reduction kernel is compiled when the ``_rref_c`` extension is
available and pure Python otherwise.  Set ``SYMPDEF_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Sequence

from sympdef import _rref_py

if os.environ.get("SYMPDEF_PURE_PYTHON"):
    _kernel = _rref_py
    BACKEND = "python"
else:
    try:
        from sympdef import _rref_c as _kernel

        BACKEND = "cython"
    except ImportError:
        _kernel = _rref_py
        BACKEND = "python"

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = list  # list of Fraction


def rref(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form; see :func:`sympdef._rref_py.rref`."""
    return _kernel.rref(rows, ncols)


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of the right kernel ``{v : matrix v = 0}``, one vector per free column."""
    reduced, pivots = rref(matrix, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence, ncols: int):
    """A solution of ``matrix x = rhs`` with free variables zero, or ``None``."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return x


def solve_min_norm(matrix: Sequence[Sequence], rhs: Sequence, ncols: int):
    """The minimal Euclidean-norm solution of ``matrix x = rhs``, or ``None``.

    It is the unique solution lying in the row space of ``matrix``.
    """
    if solve(matrix, rhs, ncols) is None:
        return None
    rows, _ = rref(matrix, ncols)
    if not rows:
        return [ZERO] * ncols
    # x = sum_k c_k rows[k]; (matrix rows^T) c = rhs
    m = len(matrix)
    k = len(rows)
    gram = [[sum((a * b for a, b in zip(matrix[i], rows[j])), ZERO) for j in range(k)]
            for i in range(m)]
    c = solve(gram, rhs, k)
    assert c is not None
    return [sum((c[j] * rows[j][col] for j in range(k)), ZERO) for col in range(ncols)]


def mat_vec(matrix: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in matrix]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int) -> list[Vector]:
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner) if a[i][k] and b[k][j]), ZERO)
             for j in range(cols)] for i in range(len(a))]


def transpose(matrix: Sequence[Sequence], ncols: int) -> list[Vector]:
    return [[row[j] for row in matrix] for j in range(ncols)]


class Subspace:
    """A subspace of ``Q^n`` kept in reduced echelon form.

    ``pivot_from="right"`` makes the highest-index column the leading one of
    each basis row; quotient bases then keep the low-index coordinates.
    """

    def __init__(self, vectors: Sequence[Sequence], n: int, pivot_from: str = "left"):
        self.n = n
        self.pivot_from = pivot_from
        rev = pivot_from == "right"
        rows = [list(reversed(v)) if rev else list(v) for v in vectors]
        reduced, pivots = rref(rows, n)
        if rev:
            reduced = [list(reversed(r)) for r in reduced]
            pivots = [n - 1 - p for p in pivots]
        self.basis: list[Vector] = reduced
        self.pivots: list[int] = pivots

    @property
    def dim(self) -> int:
        return len(self.basis)

    def complement_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.n) if j not in piv]

    def reduce(self, v: Sequence) -> Vector:
        """Normal form of ``v`` modulo the subspace (zero on every pivot column)."""
        out = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = out[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] -= c * x
        return out

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in ``self.basis``; ``v`` must lie in the span."""
        coords = [v[p] for p in self.pivots]
        if any(self.reduce(v)):
            raise ValueError("vector is not in the subspace")
        return list(coords)
