"""Local Artin algebras over Q, their ideals and Kähler differentials.

An algebra is presented as ``Q[t_1..t_m] / (I + m^p)``.  Its monomial basis is
obtained by row reduction of the ideal against every monomial of degree
below ``p``; monomials are ordered by total degree, then lexicographically
(``t_1`` before ``t_2``), and the *largest* monomial of each ideal element is
its leading term.  The standard (non-leading) monomials form the basis, so the
constant monomial always comes first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from sympdef.errors import InvalidAlgebra, NotAnIdeal, NotElementary, NotSquareZero
from sympdef.linalg import ONE, ZERO, Subspace, nullspace

Monomial = tuple  # exponent tuple
BasePoly = dict  # Monomial -> Fraction


def monomial_key(mono: Monomial):
    return (sum(mono), tuple(-e for e in mono))


def monomials_below(nvars: int, degree: int) -> list[Monomial]:
    """All monomials of total degree ``< degree``, in basis order."""
    out = []
    for total in range(degree):
        for combo in itertools.combinations_with_replacement(range(nvars), total):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    out.sort(key=monomial_key)
    return out


def _poly_mul(a: BasePoly, b: BasePoly) -> BasePoly:
    out: BasePoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, ZERO) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_derivative(p: BasePoly, j: int) -> BasePoly:
    out: BasePoly = {}
    for e, c in p.items():
        if e[j]:
            f = list(e)
            f[j] -= 1
            out[tuple(f)] = c * e[j]
    return out


def parse_polynomial(text: str, names: Sequence[str]) -> BasePoly:
    """Parse ``"s^2 - 1/2*s*t"`` into ``{(2, 0): 1, (1, 1): -1/2}``."""
    import sympy
    from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication,
                                            parse_expr, standard_transformations)

    syms = [sympy.Symbol(n) for n in names]
    local = {n: s for n, s in zip(names, syms)}
    try:
        expr = parse_expr(text, local_dict=local, evaluate=True,
                          transformations=standard_transformations
                          + (convert_xor, implicit_multiplication))
        expr = sympy.expand(expr)
        free = {str(s) for s in expr.free_symbols}
        unknown = free - set(names)
        if unknown:
            raise InvalidAlgebra(f"unknown symbols {sorted(unknown)} in {text!r}")
        if not names:
            return {(): Fraction(str(sympy.Rational(expr)))} if expr != 0 else {}
        poly = sympy.Poly(expr, *syms, domain="QQ")
    except InvalidAlgebra:
        raise
    except Exception as exc:  # sympy raises a zoo of exception types
        raise InvalidAlgebra(f"cannot parse polynomial {text!r}: {exc}") from exc
    out: BasePoly = {}
    for mono, coeff in poly.terms():
        q = Fraction(int(coeff.p), int(coeff.q))
        if q:
            out[tuple(int(e) for e in mono)] = q
    return out


def format_monomial(mono: Monomial, names: Sequence[str]) -> str:
    parts = []
    for n, e in zip(names, mono):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(poly: BasePoly, names: Sequence[str]) -> str:
    if not poly:
        return "0"
    out = []
    for mono in sorted(poly, key=monomial_key, reverse=True):
        c = poly[mono]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        m = format_monomial(mono, names)
        if m == "1":
            body = str(a)
        elif a == 1:
            body = m
        else:
            body = f"{a}*{m}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


class ArtinAlgebra:
    """Finite-dimensional local algebra ``Q[t_1..t_m]/(I + m^order)``.

    Elements are tuples of ``Fraction`` indexed by :attr:`monomial_basis`.
    """

    def __init__(self, generators: Sequence[str], ideal: Iterable = (), order: int = 1):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise InvalidAlgebra("generator names must be unique")
        if order < 1:
            raise InvalidAlgebra("order must be at least 1")
        m = len(self.generators)
        self.order = order
        gens = []
        for g in ideal:
            p = parse_polynomial(g, self.generators) if isinstance(g, str) else dict(g)
            p = {tuple(e): Fraction(c) for e, c in p.items() if c}
            if any(len(e) != m for e in p):
                raise InvalidAlgebra("ideal generator has the wrong number of variables")
            if p:
                gens.append(p)
        self.ideal_generators: tuple = tuple(gens)

        self._all = monomials_below(m, order)
        self._pos = {e: i for i, e in enumerate(self._all)}
        n = len(self._all)
        rows = []
        for g in gens:
            for mono in self._all:
                prod = _poly_mul({mono: ONE}, g)
                row = [ZERO] * n
                for e, c in prod.items():
                    if sum(e) < order:
                        row[self._pos[e]] += c
                if any(row):
                    rows.append(row)
        self._ideal_space = Subspace(rows, n, pivot_from="right")
        std = self._ideal_space.complement_columns()
        if not std or std[0] != 0:
            raise InvalidAlgebra("the ideal contains a unit; the algebra is zero")
        self.monomial_basis: tuple = tuple(self._all[j] for j in std)
        self.dim = len(std)
        self._basis_pos = {e: i for i, e in enumerate(self.monomial_basis)}
        # normal form of every monomial of degree < order
        self._nf: dict = {}
        for j, mono in enumerate(self._all):
            unit = [ZERO] * n
            unit[j] = ONE
            red = self._ideal_space.reduce(unit)
            self._nf[mono] = tuple(red[k] for k in std)
        table = []
        for a in self.monomial_basis:
            row = []
            for b in self.monomial_basis:
                e = tuple(x + y for x, y in zip(a, b))
                vec = self._nf.get(e)
                row.append(tuple((k, c) for k, c in enumerate(vec) if c) if vec else ())
            table.append(tuple(row))
        self.multiplication_table: tuple = tuple(table)

    # -- constructors ----------------------------------------------------
    @classmethod
    def rationals(cls) -> "ArtinAlgebra":
        return cls((), (), 1)

    @classmethod
    def truncated(cls, k: int, name: str = "t") -> "ArtinAlgebra":
        """``Q[t]/t^k``."""
        return cls((name,), [{(k,): ONE}], k)

    @classmethod
    def maximal_power(cls, k: int, names: Sequence[str]) -> "ArtinAlgebra":
        """``Q[t_1..t_m]/m^k``."""
        return cls(tuple(names), (), k)

    # -- identity --------------------------------------------------------
    @cached_property
    def _key(self):
        images = tuple(self.gen(g) for g in self.generators)
        return (self.generators, self.monomial_basis, self.multiplication_table, images)

    def __eq__(self, other):
        return isinstance(other, ArtinAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        ideal = ", ".join(format_polynomial(g, self.generators) for g in self.ideal_generators)
        return f"ArtinAlgebra({list(self.generators)}, [{ideal}], order={self.order}, dim={self.dim})"

    # -- element arithmetic ----------------------------------------------
    def zero(self) -> tuple:
        return (ZERO,) * self.dim

    def one(self) -> tuple:
        return (ONE,) + (ZERO,) * (self.dim - 1)

    def basis_element(self, i: int) -> tuple:
        v = [ZERO] * self.dim
        v[i] = ONE
        return tuple(v)

    def gen(self, name: str) -> tuple:
        j = self.generators.index(name)
        e = [0] * len(self.generators)
        e[j] = 1
        return self.normal_form({tuple(e): ONE})

    def monomial_index(self, mono: Monomial):
        return self._basis_pos.get(tuple(mono))

    def normal_form(self, poly: BasePoly) -> tuple:
        out = [ZERO] * self.dim
        for e, c in poly.items():
            if sum(e) >= self.order:
                continue
            for k, x in enumerate(self._nf[tuple(e)]):
                if x:
                    out[k] += c * x
        return tuple(out)

    def parse(self, text: str) -> tuple:
        return self.normal_form(parse_polynomial(text, self.generators))

    def to_poly(self, a: Sequence) -> BasePoly:
        return {self.monomial_basis[i]: c for i, c in enumerate(a) if c}

    def format(self, a: Sequence) -> str:
        return format_polynomial(self.to_poly(a), self.generators)

    def add(self, a, b) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b) -> tuple:
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, c, a) -> tuple:
        return tuple(c * x for x in a)

    def mul(self, a, b) -> tuple:
        out = [ZERO] * self.dim
        table = self.multiplication_table
        for i, x in enumerate(a):
            if not x:
                continue
            row = table[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in row[j]:
                    out[k] += xy * c
        return tuple(out)

    def mul_basis(self, i: int, j: int):
        """Structure constants of ``basis_i * basis_j`` as ``((k, c), ...)``."""
        return self.multiplication_table[i][j]

    def power(self, a, n: int) -> tuple:
        out = self.one()
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def reduction(self, a) -> Fraction:
        """Image of ``a`` in the residue field ``A/m = Q``."""
        return a[0]

    def in_maximal_ideal_power(self, a, k: int) -> bool:
        if k <= 0:
            return True
        if k >= len(self._power_chain):
            return not any(a)
        return self._power_chain[k].contains(a)

    def m_adic_order(self, a) -> int:
        """Largest ``k`` with ``a`` in ``m^k`` (``nilpotency_order`` for zero)."""
        if not any(a):
            return self.nilpotency_order
        k = 0
        while k + 1 < len(self._power_chain) and self._power_chain[k + 1].contains(a):
            k += 1
        return k

    # -- structure -------------------------------------------------------
    @cached_property
    def _power_chain(self) -> list:
        # m^0 = A, m^1, ... up to the first zero power (excluded)
        chain = [Subspace([self.basis_element(i) for i in range(self.dim)], self.dim)]
        k = 1
        while True:
            vecs = [self._nf[e] for e in self._all if sum(e) >= k]
            sub = Subspace(vecs, self.dim)
            if sub.dim == 0:
                return chain
            chain.append(sub)
            k += 1

    @cached_property
    def nilpotency_order(self) -> int:
        """Smallest ``k`` with ``m^k = 0``."""
        return len(self._power_chain)

    def maximal_ideal(self) -> "ArtinIdeal":
        return self.maximal_power_ideal(1)

    def maximal_power_ideal(self, k: int) -> "ArtinIdeal":
        """``m^k``, spanned by the normal forms of all monomials of degree >= k."""
        vecs = [self._nf[e] for e in self._all if sum(e) >= k]
        return ArtinIdeal(self, vecs)

    def ideal(self, elements: Iterable) -> "ArtinIdeal":
        """Ideal generated by ``elements`` (strings, polynomials or coordinate tuples)."""
        vecs = []
        for el in elements:
            if isinstance(el, str):
                el = self.parse(el)
            elif isinstance(el, dict):
                el = self.normal_form(el)
            for i in range(self.dim):
                vecs.append(self.mul(self.basis_element(i), el))
        return ArtinIdeal(self, vecs)

    def zero_ideal(self) -> "ArtinIdeal":
        return ArtinIdeal(self, [])

    @cached_property
    def effective_ideal_generators(self) -> tuple:
        """Generators of ``I + m^order`` (what the presentation actually divides by)."""
        m = len(self.generators)
        if not m:
            return self.ideal_generators
        tops = []
        for combo in itertools.combinations_with_replacement(range(m), self.order):
            e = [0] * m
            for i in combo:
                e[i] += 1
            tops.append({tuple(e): ONE})
        return self.ideal_generators + tuple(tops)

    def check_axioms(self) -> None:
        """Associativity and commutativity on basis triples; raises ``InvalidAlgebra``."""
        b = [self.basis_element(i) for i in range(self.dim)]
        for i, j in itertools.product(range(self.dim), repeat=2):
            if self.mul(b[i], b[j]) != self.mul(b[j], b[i]):
                raise InvalidAlgebra("multiplication is not commutative", (i, j))
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            if self.mul(self.mul(b[i], b[j]), b[k]) != self.mul(b[i], self.mul(b[j], b[k])):
                raise InvalidAlgebra("multiplication is not associative", (i, j, k))

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "ideal": [format_polynomial(g, self.generators) for g in self.ideal_generators],
            "order": self.order,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ArtinAlgebra":
        try:
            return cls(data["generators"], data.get("ideal", []), int(data["order"]))
        except KeyError as exc:
            raise InvalidAlgebra(f"algebra description lacks {exc}") from exc


class ArtinIdeal:
    """A ``Q``-subspace of an Artin algebra closed under multiplication."""

    def __init__(self, parent: ArtinAlgebra, vectors: Iterable[Sequence]):
        self.parent = parent
        space = Subspace([list(v) for v in vectors], parent.dim, pivot_from="right")
        self._space = space
        self.basis: tuple = tuple(tuple(v) for v in space.basis)
        for v in self.basis:
            for g in parent.generators:
                if not space.contains(parent.mul(v, parent.gen(g))):
                    raise NotAnIdeal("subspace is not closed under multiplication", v)
        if self.basis and not all(parent.reduction(v) == 0 for v in self.basis):
            raise NotAnIdeal("ideal contains a unit")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def leading_indices(self) -> list[int]:
        return list(self._space.pivots)

    def contains(self, a) -> bool:
        return self._space.contains(a)

    def coordinates(self, a) -> list:
        return self._space.coordinates(a)

    def reduce(self, a) -> tuple:
        return tuple(self._space.reduce(a))

    def is_square_zero(self) -> bool:
        mul = self.parent.mul
        return all(not any(mul(u, v)) for u in self.basis for v in self.basis)

    def __repr__(self):
        gens = ", ".join(self.parent.format(v) for v in self.basis)
        return f"ArtinIdeal({gens})"


def artin_quotient(A: ArtinAlgebra, I: ArtinIdeal) -> ArtinAlgebra:
    """``A/I`` with the projection and the monomial section recorded.

    The quotient carries ``projection`` (coordinates in ``A/I`` of every basis
    monomial of ``A``) and ``section`` (index in ``A`` of every basis monomial
    of ``A/I``).
    """
    if I.parent != A:
        raise NotAnIdeal("ideal belongs to a different algebra")
    for v in I.basis:
        for g in A.generators:
            if not I.contains(A.mul(v, A.gen(g))):
                raise NotAnIdeal("basis not closed under multiplication", v)
    gens = list(A.ideal_generators) + [A.to_poly(v) for v in I.basis]
    Q = ArtinAlgebra(A.generators, gens, A.order)
    section = []
    for mono in Q.monomial_basis:
        idx = A.monomial_index(mono)
        if idx is None:  # pragma: no cover - guaranteed by the shared ordering
            raise InvalidAlgebra("quotient basis is not a subset of the parent basis")
        section.append(idx)
    Q.projection = tuple(Q.normal_form({mono: ONE}) for mono in A.monomial_basis)
    Q.section = tuple(section)
    Q.quotient_of = (A, I)
    return Q


def project(Q: ArtinAlgebra, a: Sequence) -> tuple:
    """Image in the quotient ``Q = A/I`` of an element of ``A``."""
    out = [ZERO] * Q.dim
    for i, c in enumerate(a):
        if c:
            for k, x in enumerate(Q.projection[i]):
                if x:
                    out[k] += c * x
    return tuple(out)


def lift(Q: ArtinAlgebra, A: ArtinAlgebra, a: Sequence) -> tuple:
    """The monomial section ``A/I -> A`` (linear, not multiplicative)."""
    out = [ZERO] * A.dim
    for k, c in enumerate(a):
        out[Q.section[k]] = c
    return tuple(out)


class KahlerDiff:
    """``Omega^1(A)`` as a finite-dimensional ``Q``-space.

    Ambient coordinates are pairs (basis monomial ``b``, generator ``j``)
    standing for ``b * dt_j``, ordered by monomial then generator.  The
    relations are the ``A``-span of ``d(g)`` for the effective ideal
    generators; the basis is the set of non-leading ambient coordinates.
    """

    def __init__(self, algebra: ArtinAlgebra):
        self.algebra = A = algebra
        m = len(A.generators)
        self._m = m
        n = A.dim * m
        self._n = n
        rels = []
        for g in A.effective_ideal_generators:
            dg = [A.normal_form(_poly_derivative(g, j)) for j in range(m)]
            for i in range(A.dim):
                b = A.basis_element(i)
                row = [ZERO] * n
                for j in range(m):
                    prod = A.mul(b, dg[j])
                    for k, c in enumerate(prod):
                        if c:
                            row[k * m + j] += c
                if any(row):
                    rels.append(row)
        self._relations = Subspace(rels, n, pivot_from="right")
        self._cols = self._relations.complement_columns()
        self.dim = len(self._cols)
        self.module_basis: tuple = tuple((A.monomial_basis[c // m], c % m) for c in self._cols)

    def __repr__(self):
        return f"KahlerDiff({self.algebra!r}, dim={self.dim})"

    def label(self, k: int) -> str:
        mono, j = self.module_basis[k]
        coeff = format_monomial(mono, self.algebra.generators)
        dt = "d" + self.algebra.generators[j]
        return dt if coeff == "1" else f"{coeff}*{dt}"

    def format(self, w: Sequence) -> str:
        parts = []
        for k, c in enumerate(w):
            if c:
                parts.append(f"{c}*{self.label(k)}" if c != 1 else self.label(k))
        return " + ".join(parts) if parts else "0"

    def _from_ambient(self, row) -> tuple:
        red = self._relations.reduce(row)
        return tuple(red[c] for c in self._cols)

    def _ambient(self, w: Sequence) -> list:
        row = [ZERO] * self._n
        for k, c in enumerate(w):
            if c:
                row[self._cols[k]] = c
        return row

    def zero(self) -> tuple:
        return (ZERO,) * self.dim

    def dt(self, j: int, coeff: Sequence | None = None) -> tuple:
        """``coeff * dt_j`` (``coeff`` defaults to 1)."""
        A = self.algebra
        coeff = A.one() if coeff is None else coeff
        row = [ZERO] * self._n
        for k, c in enumerate(coeff):
            if c:
                row[k * self._m + j] += c
        return self._from_ambient(row)

    def d(self, a: Sequence) -> tuple:
        """The universal derivation ``A -> Omega^1(A)``."""
        A = self.algebra
        row = [ZERO] * self._n
        for i, c in enumerate(a):
            if not c:
                continue
            mono = A.monomial_basis[i]
            for j in range(self._m):
                if mono[j]:
                    e = list(mono)
                    e[j] -= 1
                    vec = A.normal_form({tuple(e): ONE})
                    for k, x in enumerate(vec):
                        if x:
                            row[k * self._m + j] += c * mono[j] * x
        return self._from_ambient(row)

    def act(self, a: Sequence, w: Sequence) -> tuple:
        """Module action ``a * w``."""
        A = self.algebra
        row = [ZERO] * self._n
        for k, c in enumerate(w):
            if not c:
                continue
            col = self._cols[k]
            bi, j = divmod(col, self._m)
            prod = A.mul(a, A.basis_element(bi))
            for kk, x in enumerate(prod):
                if x:
                    row[kk * self._m + j] += c * x
        return self._from_ambient(row)

    def add(self, u, v) -> tuple:
        return tuple(x + y for x, y in zip(u, v))


_KAHLER_CACHE: dict = {}


def kahler_differentials(A: ArtinAlgebra) -> KahlerDiff:
    """``Omega^1(A)`` with its universal derivation."""
    kd = _KAHLER_CACHE.get(A)
    if kd is None:
        kd = _KAHLER_CACHE[A] = KahlerDiff(A)
    return kd


class RelativeDifferentials:
    """``Omega^1(A) (x)_A A/I = Omega^1(A) / I*Omega^1(A)``."""

    def __init__(self, A: ArtinAlgebra, I: ArtinIdeal):
        self.algebra = A
        self.ideal = I
        self.kahler = K = kahler_differentials(A)
        sub = [K.act(i, K.dt(j, A.basis_element(b)))
               for i in I.basis for j in range(len(A.generators)) for b in range(A.dim)]
        self._sub = Subspace(sub, K.dim, pivot_from="right")
        self._cols = self._sub.complement_columns()
        self.dim = len(self._cols)

    def reduce(self, w: Sequence) -> tuple:
        """Coordinates in this quotient of an element of ``Omega^1(A)``."""
        red = self._sub.reduce(w)
        return tuple(red[c] for c in self._cols)

    def lift(self, v: Sequence) -> tuple:
        out = [ZERO] * self.kahler.dim
        for k, c in enumerate(v):
            out[self._cols[k]] = c
        return tuple(out)

    def label(self, k: int) -> str:
        return self.kahler.label(self._cols[k])

    def format(self, v: Sequence) -> str:
        return self.kahler.format(self.lift(v))

    def inclusion_matrix(self) -> list:
        """Columns: images of the ideal basis under ``I -> Omega^1(A) (x) A/I``."""
        return [self.reduce(self.kahler.d(v)) for v in self.ideal.basis]


@dataclass(frozen=True)
class DifferentialRestriction:
    """The canonical surjection ``eta: Omega^1(A) (x) A/I -> Omega^1(A/I)``."""

    source: RelativeDifferentials
    target: KahlerDiff
    quotient: ArtinAlgebra
    matrix: tuple  # rows indexed by target basis, columns by source basis

    def __call__(self, v: Sequence) -> tuple:
        return tuple(sum((r[k] * c for k, c in enumerate(v) if c), ZERO) for r in self.matrix)

    def kernel(self) -> list:
        return nullspace([list(r) for r in self.matrix], self.source.dim)

    def is_surjective(self) -> bool:
        from sympdef.linalg import rank
        return rank([list(r) for r in self.matrix], self.source.dim) == self.target.dim


def restrict_differentials(A: ArtinAlgebra, I: ArtinIdeal, quotient: ArtinAlgebra | None = None):
    """The map ``eta`` as an explicit matrix in the chosen bases."""
    Q = quotient if quotient is not None else artin_quotient(A, I)
    src = RelativeDifferentials(A, I)
    tgt = kahler_differentials(Q)
    cols = []
    for k in range(src.dim):
        mono, j = src.kahler.module_basis[src._cols[k]]
        coeff = project(Q, A.normal_form({mono: ONE}))
        cols.append(tgt.dt(j, coeff))
    matrix = tuple(tuple(cols[k][r] for k in range(src.dim)) for r in range(tgt.dim))
    return DifferentialRestriction(src, tgt, Q, matrix)


class ElementaryCheck(NamedTuple):
    elementary: bool
    witness: tuple | None

    def __bool__(self):
        return self.elementary


def is_elementary(A: ArtinAlgebra, I: ArtinIdeal) -> ElementaryCheck:
    """Whether ``I -> Omega^1(A) (x) A/I`` is injective; else a kernel element."""
    if not I.is_square_zero():
        raise NotSquareZero("the ideal does not square to zero")
    if I.dim == 0:
        return ElementaryCheck(True, None)
    rel = RelativeDifferentials(A, I)
    cols = rel.inclusion_matrix()
    matrix = [[cols[c][r] for c in range(I.dim)] for r in range(rel.dim)]
    ker = nullspace(matrix, I.dim)
    if not ker:
        return ElementaryCheck(True, None)
    v = ker[0]
    witness = tuple(sum((v[c] * I.basis[c][k] for c in range(I.dim)), ZERO) for k in range(A.dim))
    return ElementaryCheck(False, witness)


def require_elementary(A: ArtinAlgebra, I: ArtinIdeal) -> None:
    check = is_elementary(A, I)
    if not check:
        raise NotElementary(f"extension is not elementary; kernel contains {A.format(check.witness)}",
                            check.witness)


@dataclass(frozen=True)
class FiltrationStep:
    source: ArtinAlgebra
    ideal: ArtinIdeal
    target: ArtinAlgebra
    elementary: bool


def madic_filtration(A: ArtinAlgebra) -> list[FiltrationStep]:
    """The chain ``A -> A/m^(p-1) -> ... -> A/m -> Q`` with ``m^p = 0``."""
    steps = []
    current = A
    p = A.nilpotency_order
    for k in range(p - 1, 0, -1):
        I = current.maximal_power_ideal(k)
        Q = artin_quotient(current, I)
        steps.append(FiltrationStep(current, I, Q, bool(is_elementary(current, I))))
        current = Q
    return steps


def ideal_tensor_basis(A: ArtinAlgebra, I: ArtinIdeal, dim_v: int) -> list[tuple[int, tuple]]:
    """Ordered basis of ``V (x) I``: pairs (index in ``V``, basis vector of ``I``)."""
    return [(v, i) for v in range(dim_v) for i in I.basis]


def random_artin_algebra(rng, max_generators: int = 3, max_order: int = 5, max_dim: int = 8,
                         min_dim: int = 2) -> ArtinAlgebra:
    """A random local algebra ``Q[t..]/(I + m^p)`` with bounded size (sampling helper)."""
    names = ("s", "t", "u")
    for _ in range(1000):
        m = rng.randint(1, max_generators)
        p = rng.randint(2, max_order)
        gens = []
        for _ in range(rng.randint(0, 3)):
            poly = {}
            for _ in range(rng.randint(1, 3)):
                e = [0] * m
                for _ in range(rng.randint(1, p - 1)):
                    e[rng.randrange(m)] += 1
                poly[tuple(e)] = Fraction(rng.choice([-2, -1, 1, 1, 2, 3]))
            gens.append(poly)
        try:
            A = ArtinAlgebra(names[:m], gens, p)
        except InvalidAlgebra:
            continue
        if min_dim <= A.dim <= max_dim:
            return A
    raise InvalidAlgebra("could not sample an algebra with the requested size")


def random_elementary_step(rng, A: ArtinAlgebra, tries: int = 50):
    """A random elementary ideal ``I`` of ``A`` (square-zero, nonzero), or ``None``."""
    p = A.nilpotency_order
    k = (p + 1) // 2
    deep = A.maximal_power_ideal(k).basis
    if not deep:
        return None
    for _ in range(tries):
        els = []
        for _ in range(rng.randint(1, 2)):
            els.append(tuple(sum((Fraction(rng.randint(-2, 2)) * v[i] for v in deep), ZERO)
                             for i in range(A.dim)))
        els = [e for e in els if any(e)]
        if not els:
            continue
        I = A.ideal(els)
        if I.is_square_zero() and is_elementary(A, I):
            return I
    return None
