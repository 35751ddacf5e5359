"""Symplectic operations on the model spaces.

Sign conventions, fixed once:

* ``contract(omega, xi)`` inserts ``xi`` into the first slot, so
  ``contract(dx^dy, d/dy) = -dx``.
* With ``M[i][j] = omega(d_i, d_j)``, ``contract(omega, xi)_j = sum_i xi_i M[i][j]``
  and ``raise`` inverts this.
* ``lambda_op`` contracts with the Poisson bivector ``P = M^{-1}`` (transposed),
  ``Lambda(a) = sum_{i<j} P^{ij} i_{d_j} i_{d_i} a``, which gives ``Lambda(omega) = n``.
* Tangent-valued forms are sums ``X (x) e_S`` with ``e_S`` a wedge of formal odd
  generators; ``[X e_S, Y e_T] = [X, Y] e_S e_T``.  Lowering sends ``X e_S`` to
  ``contract(omega, X) ^ e_S``, and form-valued objects multiply by
  ``(a e_S)(b e_T) = (-1)^{|S| deg b} (a ^ b) e_S e_T``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympdef.derham import RelForm, d, random_form, wedge
from sympdef.errors import Degenerate, NotClosed, RankOverflow, SpaceMismatch
from sympdef.laurent import LaurentPoly, SpaceDescriptor
from sympdef.linalg import ONE
from sympdef.derham import _merge_sign


class VectorField:
    """``sum_j components[j] d/dx_j`` with coefficients in ``O(X) (x) A``."""

    __slots__ = ("space", "base", "components")

    def __init__(self, space: SpaceDescriptor, base, components: Sequence[LaurentPoly]):
        if len(components) != space.n:
            raise SpaceMismatch("vector field needs one component per variable")
        for c in components:
            if c.space != space or c.base != base:
                raise SpaceMismatch("component lives on a different space or base")
        self.space = space
        self.base = base
        self.components = tuple(components)

    @classmethod
    def zero(cls, space, base):
        return cls(space, base, [LaurentPoly.zero(space, base)] * space.n)

    @classmethod
    def coordinate(cls, space, base, name: str, coeff: LaurentPoly | None = None):
        j = space.index(name)
        comps = [LaurentPoly.zero(space, base)] * space.n
        comps[j] = coeff if coeff is not None else LaurentPoly.constant(space, base)
        return cls(space, base, comps)

    def __eq__(self, other):
        if isinstance(other, VectorField):
            return self.space == other.space and self.components == other.components
        if other == 0:
            return not self
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def __bool__(self):
        return any(self.components)

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField(self.space, self.base, [a + b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.space, self.base, [-a for a in self.components])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VectorField":
        return VectorField(self.space, self.base, [a.scale(c) for a in self.components])

    def times(self, f: LaurentPoly) -> "VectorField":
        return VectorField(self.space, self.base, [f * a for a in self.components])

    def times_base(self, a) -> "VectorField":
        return VectorField(self.space, self.base, [c.times_base(a) for c in self.components])

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        """Derivation action ``xi(f)``."""
        out = LaurentPoly.zero(self.space, self.base)
        for j, c in enumerate(self.components):
            if c:
                df = f.derivative(j)
                if df:
                    out = out + c * df
        return out

    def map_base(self, target, matrix) -> "VectorField":
        return VectorField(self.space, target, [c.map_base(target, matrix) for c in self.components])

    def format(self) -> str:
        parts = [f"({c.format()})*d/d{n}" for c, n in zip(self.components, self.space.names) if c]
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"VectorField({self.format()})"


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    comps = [X.apply(b) - Y.apply(a) for a, b in zip(X.components, Y.components)]
    return VectorField(X.space, X.base, comps)


# -- the symplectic form and its matrix -------------------------------------

def _det(rows: list, cols: tuple, memo: dict, space, base) -> LaurentPoly:
    """Laplace expansion along successive rows over the column subset ``cols``."""
    k = len(rows) - len(cols)
    if not cols:
        return LaurentPoly.constant(space, base)
    key = cols
    hit = memo.get(key)
    if hit is not None:
        return hit
    row = rows[k]
    out = LaurentPoly.zero(space, base)
    for pos, c in enumerate(cols):
        entry = row[c]
        if not entry:
            continue
        minor = _det(rows, cols[:pos] + cols[pos + 1:], memo, space, base)
        if minor:
            term = entry * minor
            out = out - term if pos & 1 else out + term
    memo[key] = out
    return out


def determinant(matrix: list, space, base) -> LaurentPoly:
    return _det(matrix, tuple(range(len(matrix))), {}, space, base)


@dataclass(eq=False)
class SymplecticForm:
    """A closed relative 2-form together with cached matrix data."""

    underlying: RelForm
    _matrix: list | None = field(default=None, repr=False)
    _det: LaurentPoly | None = field(default=None, repr=False)
    _inverse: list | None = field(default=None, repr=False)

    def __post_init__(self):
        w = self.underlying
        if w.degree != 2:
            raise SpaceMismatch("a symplectic form has degree 2")
        if d(w):
            raise NotClosed("symplectic form must be closed", d(w))

    @property
    def space(self) -> SpaceDescriptor:
        return self.underlying.space

    @property
    def base(self):
        return self.underlying.base

    def matrix(self) -> list:
        """``M[i][j] = omega(d_i, d_j)``."""
        if self._matrix is None:
            sp, A = self.space, self.base
            n = sp.n
            z = LaurentPoly.zero(sp, A)
            M = [[z] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    c = self.underlying.coefficient((i, j))
                    M[i][j] = c
                    M[j][i] = -c
            self._matrix = M
        return self._matrix

    def determinant(self) -> LaurentPoly:
        if self._det is None:
            self._det = determinant(self.matrix(), self.space, self.base)
        return self._det

    def is_nondegenerate(self) -> bool:
        return self.determinant().is_unit()

    def inverse(self) -> list:
        """``M^{-1}`` via the adjugate; raises ``Degenerate``."""
        if self._inverse is None:
            det = self.determinant()
            if not det.is_unit():
                raise Degenerate("determinant of the symplectic matrix is not a unit", det)
            inv_det = det.inverse()
            M = self.matrix()
            n = len(M)
            sp, A = self.space, self.base
            out = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    # adj[j][i] = (-1)^{i+j} det(M without row i, column j)
                    rows = [r[:j] + r[j + 1:] for k, r in enumerate(M) if k != i]
                    cof = determinant(rows, sp, A)
                    if (i + j) & 1:
                        cof = -cof
                    out[j][i] = cof * inv_det
            self._inverse = out
        return self._inverse


def as_symplectic(omega) -> SymplecticForm:
    return omega if isinstance(omega, SymplecticForm) else SymplecticForm(omega)


def nondegenerate(omega) -> bool:
    return as_symplectic(omega).is_nondegenerate()


def contract(omega, xi: VectorField) -> RelForm:
    """Interior product ``omega⌟xi`` (insertion into the first slot); any degree."""
    w = omega.underlying if isinstance(omega, SymplecticForm) else omega
    if w.space != xi.space or w.base != xi.base:
        raise SpaceMismatch("form and vector field live on different spaces or bases")
    if w.degree == 0:
        raise SpaceMismatch("cannot contract a function")
    out = RelForm.zero(w.space, w.base, w.degree - 1)
    for j, c in enumerate(xi.components):
        if c:
            part = w.contract_coordinate(j)
            if part:
                out = out + part * c
    return out


def raise_form(omega, alpha: RelForm) -> VectorField:
    """The unique ``xi`` with ``contract(omega, xi) = alpha``."""
    S = as_symplectic(omega)
    if alpha.degree != 1:
        raise SpaceMismatch("can only raise 1-forms")
    if alpha.space != S.space or alpha.base != S.base:
        raise SpaceMismatch("form and symplectic form live on different spaces or bases")
    n = S.space.n
    if not alpha:
        return VectorField.zero(S.space, S.base)
    inv = S.inverse()
    a = [alpha.coefficient((j,)) for j in range(n)]
    comps = []
    for i in range(n):
        acc = LaurentPoly.zero(S.space, S.base)
        for j in range(n):
            if a[j] and inv[j][i]:
                acc = acc + inv[j][i] * a[j]
        comps.append(acc)
    return VectorField(S.space, S.base, comps)


def hamiltonian_field(omega, f: LaurentPoly) -> VectorField:
    return raise_form(omega, d(RelForm.from_function(f)))


def lie_derivative(xi: VectorField, w: RelForm) -> RelForm:
    """Cartan formula ``L = i d + d i``."""
    out = contract(d(w), xi)
    if w.degree > 0:
        out = out + d(contract(w, xi))
    return out


def lambda_op(omega, w):
    """Contraction with the Poisson bivector; accepts a ``RelForm`` or a ``GrassmannForm``."""
    if isinstance(w, GrassmannForm):
        return GrassmannForm(w.space, w.base, max(w.degree - 2, 0), w.rank,
                             {S: lambda_op(omega, part) for S, part in w.parts.items()})
    S = as_symplectic(omega)
    if w.degree < 2:
        return RelForm.zero(w.space, w.base, 0)
    inv = S.inverse()
    n = S.space.n
    out = RelForm.zero(w.space, w.base, w.degree - 2)
    for i in range(n):
        wi = w.contract_coordinate(i)
        if not wi:
            continue
        for j in range(i + 1, n):
            p = inv[j][i]
            if not p:
                continue
            wij = wi.contract_coordinate(j)
            if wij:
                out = out + wij * p
    return out


# -- Grassmann-graded objects ------------------------------------------------

class GrassmannForm:
    """``sum_S part_S ^ e_S``: relative forms of one degree with odd markers ``e_S``."""

    __slots__ = ("space", "base", "degree", "rank", "parts")

    def __init__(self, space, base, degree: int, rank: int, parts: dict):
        self.space = space
        self.base = base
        self.degree = degree
        self.rank = rank
        self.parts = {tuple(S): p for S, p in parts.items() if p}

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        if isinstance(other, GrassmannForm):
            return self.parts == other.parts
        if other == 0:
            return not self.parts
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    def __add__(self, other):
        out = dict(self.parts)
        for S, p in other.parts.items():
            out[S] = out[S] + p if S in out else p
        return GrassmannForm(self.space, self.base, self.degree, self.rank, out)

    def __neg__(self):
        return GrassmannForm(self.space, self.base, self.degree, self.rank,
                             {S: -p for S, p in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "GrassmannForm") -> "GrassmannForm":
        out: dict = {}
        for S, a in self.parts.items():
            for T, b in other.parts.items():
                sign = _merge_sign(S, T)
                if not sign:
                    continue
                if (len(S) * b.degree) & 1:
                    sign = -sign
                prod = wedge(a, b)
                if not prod:
                    continue
                key = tuple(sorted(S + T))
                term = prod if sign > 0 else -prod
                out[key] = out[key] + term if key in out else term
        return GrassmannForm(self.space, self.base, self.degree + other.degree, self.rank + other.rank, out)

    def d(self) -> "GrassmannForm":
        """``partial``: exterior derivative on the form factor only."""
        return GrassmannForm(self.space, self.base, self.degree + 1, self.rank,
                             {S: d(p) for S, p in self.parts.items()})

    def format(self) -> str:
        return " + ".join(f"({p.format()})*e{''.join(str(i + 1) for i in S)}"
                          for S, p in sorted(self.parts.items())) or "0"

    def __repr__(self):
        return f"GrassmannForm({self.format()})"


class TangentValuedForm:
    """``sum_S X_S (x) e_S`` with every ``|S| = rank``; a model of ``Lambda^{0,q}(T)``."""

    __slots__ = ("space", "base", "rank", "generators", "parts")

    def __init__(self, space, base, rank: int, parts: dict, generators: int | None = None):
        self.space = space
        self.base = base
        self.rank = rank
        self.generators = generators
        clean = {}
        for S, X in parts.items():
            S = tuple(S)
            if len(S) != rank or list(S) != sorted(set(S)):
                raise SpaceMismatch("Grassmann index must be a strictly increasing tuple of the declared rank")
            if generators is not None and S and S[-1] >= generators:
                raise RankOverflow("Grassmann index exceeds the available generators", S)
            if X:
                clean[S] = X
        self.parts = clean

    @classmethod
    def single(cls, X: VectorField, S: tuple, generators: int | None = None):
        return cls(X.space, X.base, len(S), {tuple(S): X}, generators)

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        if isinstance(other, TangentValuedForm):
            return self.parts == other.parts
        if other == 0:
            return not self.parts
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    def __add__(self, other):
        out = dict(self.parts)
        for S, X in other.parts.items():
            out[S] = out[S] + X if S in out else X
        return TangentValuedForm(self.space, self.base, self.rank, out, self.generators)

    def __neg__(self):
        return TangentValuedForm(self.space, self.base, self.rank,
                                 {S: -X for S, X in self.parts.items()}, self.generators)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TangentValuedForm(self.space, self.base, self.rank,
                                 {S: X.scale(c) for S, X in self.parts.items()}, self.generators)

    def lower(self, omega) -> GrassmannForm:
        return GrassmannForm(self.space, self.base, 1, self.rank,
                             {S: contract(omega, X) for S, X in self.parts.items()})

    def format(self) -> str:
        return " + ".join(f"[{X.format()}]*e{''.join(str(i + 1) for i in S)}"
                          for S, X in sorted(self.parts.items())) or "0"

    def __repr__(self):
        return f"TangentValuedForm({self.format()})"


def raise_grassmann(omega, g: GrassmannForm) -> TangentValuedForm:
    return TangentValuedForm(g.space, g.base, g.rank, {S: raise_form(omega, p) for S, p in g.parts.items()})


def schouten(g1: TangentValuedForm, g2: TangentValuedForm, generators: int | None = None) -> TangentValuedForm:
    """``[X e_S, Y e_T] = [X, Y] e_S e_T``, extended bilinearly."""
    if g1.space != g2.space:
        raise SpaceMismatch("operands live on different spaces")
    avail = generators if generators is not None else (g1.generators or g2.generators)
    if avail is not None and g1.rank + g2.rank > avail:
        raise RankOverflow(f"rank {g1.rank}+{g2.rank} exceeds {avail} Grassmann generators",
                           (g1.rank, g2.rank))
    out: dict = {}
    for S, X in g1.parts.items():
        for T, Y in g2.parts.items():
            sign = _merge_sign(S, T)
            if not sign:
                continue
            br = lie_bracket(X, Y)
            if not br:
                continue
            key = tuple(sorted(S + T))
            term = br if sign > 0 else -br
            out[key] = out[key] + term if key in out else term
    return TangentValuedForm(g1.space, g1.base, g1.rank + g2.rank, out, avail)


@dataclass(frozen=True)
class TTResult:
    holds: bool
    residual: GrassmannForm
    lhs: GrassmannForm
    rhs: GrassmannForm
    closed_inputs: bool

    def __bool__(self):
        return self.holds


def tian_todorov_check(omega, g1: TangentValuedForm, g2: TangentValuedForm) -> TTResult:
    """Compare ``[g1, g2]`` with ``dL(g1 g2) - L(dg1 g2) - L(g1 dg2)`` after lowering."""
    S = as_symplectic(omega)
    if g1.rank != 1 or g2.rank != 1:
        raise SpaceMismatch("the identity is stated for rank-1 tangent-valued forms")
    a, b = g1.lower(S), g2.lower(S)
    lhs = schouten(g1, g2).lower(S)
    da, db = a.d(), b.d()
    rhs = lambda_op(S, a * b).d() - lambda_op(S, da * b) - lambda_op(S, a * db)
    residual = lhs - rhs
    return TTResult(not residual, residual, lhs, rhs, not da and not db)


# -- samplers ---------------------------------------------------------------

def random_vector_field(rng: random.Random, space, base, nterms: int = 2, maxdeg: int = 2) -> VectorField:
    comps = []
    for j in range(space.n):
        f = random_form(rng, space, base, 0, nterms=rng.randint(0, nterms), maxdeg=maxdeg)
        comps.append(f.coefficient(()))
    return VectorField(space, base, comps)


def random_tangent_form(rng: random.Random, space, base, generators: int = 2, nterms: int = 2,
                        maxdeg: int = 2, hamiltonian_on=None) -> TangentValuedForm:
    """Rank-1 sample; with ``hamiltonian_on`` every component is a Hamiltonian field."""
    parts = {}
    for i in range(generators):
        if hamiltonian_on is not None:
            f = random_form(rng, space, base, 0, nterms=nterms, maxdeg=maxdeg).coefficient(())
            parts[(i,)] = hamiltonian_field(hamiltonian_on, f)
        else:
            parts[(i,)] = random_vector_field(rng, space, base, nterms, maxdeg)
    return TangentValuedForm(space, base, 1, parts, generators)


def standard_form(space: SpaceDescriptor, base=None) -> RelForm:
    """``sum dlog x_i ^ dlog y_i`` on torus pairs, ``dx_i ^ dy_i`` on affine pairs."""
    from sympdef.artin import ArtinAlgebra

    base = base or ArtinAlgebra.rationals()
    out = RelForm.zero(space, base, 2)
    for i, j in space.pairs:
        e = [0] * space.n
        if space.laurent[i]:
            e[i] = -1
        if space.laurent[j]:
            e[j] = -1
        out = out + RelForm(space, base, 2, {(tuple(e), (i, j), 0): ONE})
    return out


__all__ = [
    "VectorField", "SymplecticForm", "GrassmannForm", "TangentValuedForm", "TTResult",
    "as_symplectic", "nondegenerate", "contract", "raise_form", "hamiltonian_field", "lie_bracket",
    "lie_derivative", "lambda_op", "schouten", "tian_todorov_check", "raise_grassmann",
    "random_vector_field", "random_tangent_form", "standard_form", "determinant",
]
