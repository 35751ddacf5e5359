"""Relative algebraic de Rham complex of ``X x S / S`` for ``X = (C*)^a x C^b``.

A form is a finite sum of terms ``c * x^e * dx_I * a_b`` where ``I`` is a
strictly increasing tuple of variable indices and ``a_b`` a basis monomial of
the Artin base.  The contracting homotopy treats the complex as the tensor
product of one-variable complexes ``Q[z] -> Q[z]dz`` (or ``Q[z, 1/z]``) and
integrates one variable at a time, in coordinate order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympdef.artin import ArtinAlgebra, KahlerDiff, kahler_differentials
from sympdef.errors import NotClosed, SpaceMismatch
from sympdef.laurent import LaurentPoly, SpaceDescriptor, _check_exponents, check_size
from sympdef.linalg import ONE, ZERO

Q = ArtinAlgebra.rationals()


def _merge_sign(a: tuple, b: tuple):
    """Sign of the shuffle sorting ``a + b``, or 0 when they overlap."""
    inv = 0
    for x in a:
        for y in b:
            if x == y:
                return 0
            if x > y:
                inv += 1
    return -1 if inv & 1 else 1


def _insert(idx: tuple, j: int):
    """``dx_j ^ dx_idx`` as ``(sign, sorted index)``; sign 0 if ``j`` is present."""
    if j in idx:
        return 0, idx
    below = sum(1 for i in idx if i < j)
    return (-1 if below & 1 else 1), tuple(sorted(idx + (j,)))


class RelForm:
    """Relative differential form of fixed degree with Artin coefficients."""

    __slots__ = ("space", "base", "degree", "terms", "_hash")

    def __init__(self, space: SpaceDescriptor, base: ArtinAlgebra, degree: int,
                 terms: dict | None = None, check: bool = True):
        if degree < 0 or (degree > space.n and any((terms or {}).values())):
            raise SpaceMismatch(f"degree {degree} out of range for a {space.n}-dimensional space")
        self.space = space
        self.base = base
        self.degree = degree
        t = {k: Fraction(c) for k, c in (terms or {}).items() if c}
        if check:
            for (e, idx, b) in t:
                _check_exponents(space, e)
                if len(idx) != degree or list(idx) != sorted(set(idx)):
                    raise SpaceMismatch("form indices must be strictly increasing and match the degree")
                if not 0 <= b < base.dim:
                    raise SpaceMismatch("base index out of range")
        check_size(t)
        self.terms = t
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, space, base, degree):
        return cls(space, base, degree, {}, check=False)

    @classmethod
    def from_function(cls, f: LaurentPoly) -> "RelForm":
        return cls(f.space, f.base, 0, {(e, (), b): c for (e, b), c in f.terms.items()}, check=False)

    @classmethod
    def dvar(cls, space, base, name: str) -> "RelForm":
        j = space.index(name)
        return cls(space, base, 1, {((0,) * space.n, (j,), 0): ONE})

    @classmethod
    def dlog(cls, space, base, name: str) -> "RelForm":
        j = space.index(name)
        e = [0] * space.n
        e[j] = -1
        return cls(space, base, 1, {(tuple(e), (j,), 0): ONE})

    @classmethod
    def build(cls, space, base, degree, data: Iterable) -> "RelForm":
        """From ``[(coeff, {var: exp}, [var, ...], base element or None), ...]``.

        The differential list names variables (``"x"`` or ``"dx"``) in any order;
        the sign of the sorting permutation is applied.
        """
        out: dict = {}
        for coeff, exps, diffs, a in data:
            e = [0] * space.n
            for name, x in exps.items():
                e[space.index(name)] = int(x)
            idx = [space.index(d[1:] if d.startswith("d") and d not in space.names else d)
                   for d in diffs]
            if len(set(idx)) != len(idx):
                continue
            sign = 1
            for i in range(len(idx)):
                for j in range(i + 1, len(idx)):
                    if idx[i] > idx[j]:
                        sign = -sign
            a = base.one() if a is None else (base.parse(a) if isinstance(a, str) else a)
            for b, x in enumerate(a):
                if x:
                    key = (tuple(e), tuple(sorted(idx)), b)
                    out[key] = out.get(key, ZERO) + sign * Fraction(coeff) * x
        return cls(space, base, degree, out)

    # -- protocol --------------------------------------------------------
    def _compatible(self, other: "RelForm"):
        if self.space != other.space:
            raise SpaceMismatch("forms live on different spaces")
        if self.base != other.base:
            raise SpaceMismatch("forms have different base algebras")

    def __eq__(self, other):
        if isinstance(other, RelForm):
            return (self.space == other.space and self.base == other.base
                    and self.degree == other.degree and self.terms == other.terms)
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, self.degree, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"RelForm(deg={self.degree}, {self.format()})"

    def __add__(self, other):
        if not isinstance(other, RelForm):
            return NotImplemented
        self._compatible(other)
        if self.degree != other.degree:
            raise SpaceMismatch("cannot add forms of different degree")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return RelForm(self.space, self.base, self.degree, out, check=False)

    def __neg__(self):
        return RelForm(self.space, self.base, self.degree,
                       {k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RelForm":
        c = Fraction(c)
        return RelForm(self.space, self.base, self.degree,
                       {k: c * v for k, v in self.terms.items()}, check=False)

    def __mul__(self, other):
        """Scalar or function multiple."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, LaurentPoly):
            return wedge(RelForm.from_function(other), self)
        return NotImplemented

    __rmul__ = __mul__

    def times_base(self, a: Sequence) -> "RelForm":
        return wedge(RelForm.from_function(LaurentPoly.constant(self.space, self.base, ONE, a)), self)

    # -- base handling ---------------------------------------------------
    def base_component(self, b: int) -> "RelForm":
        """The ``Q``-form multiplying base monomial ``b``."""
        return RelForm(self.space, Q, self.degree,
                       {(e, i, 0): c for (e, i, bb), c in self.terms.items() if bb == b}, check=False)

    def map_base(self, target: ArtinAlgebra, matrix) -> "RelForm":
        out: dict = {}
        for (e, i, b), c in self.terms.items():
            for k, x in enumerate(matrix[b]):
                if x:
                    key = (e, i, k)
                    out[key] = out.get(key, ZERO) + c * x
        return RelForm(self.space, target, self.degree, out, check=False)

    def reduction(self) -> "RelForm":
        """Restriction to the closed fibre (image modulo the maximal ideal)."""
        return self.base_component(0)

    def contract_coordinate(self, j: int) -> "RelForm":
        """Interior product with the coordinate field ``d/dx_j`` (first slot)."""
        out: dict = {}
        for (e, idx, b), c in self.terms.items():
            if j in idx:
                pos = idx.index(j)
                key = (e, idx[:pos] + idx[pos + 1:], b)
                out[key] = out.get(key, ZERO) + (-c if pos & 1 else c)
        return RelForm(self.space, self.base, self.degree - 1, out, check=False)

    def coefficient(self, idx: tuple) -> LaurentPoly:
        """The function multiplying ``dx_idx``."""
        return LaurentPoly(self.space, self.base,
                           {(e, b): c for (e, i, b), c in self.terms.items() if i == tuple(idx)},
                           check=False)

    def format(self) -> str:
        if not self.terms:
            return "0"
        names = self.space.names
        parts = []
        for key in sorted(self.terms, key=_form_sort_key):
            e, idx, b = key
            c = self.terms[key]
            mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
            base = self.base.format(self.base.basis_element(b)) if b else ""
            diff = "^".join("d" + names[i] for i in idx)
            factors = [f for f in (mono, base) if f]
            head = "*".join([str(c)] + factors) if (c != 1 or not factors) else "*".join(factors)
            parts.append(f"{head} {diff}".strip())
        return " + ".join(parts)

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        names = self.space.names
        gens = self.base.generators
        terms = []
        for key in sorted(self.terms, key=_form_sort_key):
            e, idx, b = key
            c = self.terms[key]
            terms.append({
                "coeff": f"{c.numerator}/{c.denominator}",
                "exponents": {names[i]: x for i, x in enumerate(e) if x},
                "form": ["d" + names[i] for i in idx],
                "base_monomial": {gens[i]: x for i, x in enumerate(self.base.monomial_basis[b]) if x},
            })
        return {"space": self.space.to_json(), "base": self.base.to_json(),
                "degree": self.degree, "terms": terms}

    @classmethod
    def from_json(cls, data: dict, space: SpaceDescriptor | None = None,
                  base: ArtinAlgebra | None = None) -> "RelForm":
        from sympdef.serialize import parse_rational

        space = space or SpaceDescriptor.from_json(data["space"])
        base = base or ArtinAlgebra.from_json(data["base"])
        items = []
        for t in data["terms"]:
            mono = [0] * len(base.generators)
            for name, x in t.get("base_monomial", {}).items():
                mono[base.generators.index(name)] = int(x)
            a = base.normal_form({tuple(mono): ONE})
            items.append((parse_rational(t["coeff"]), t.get("exponents", {}), t.get("form", []), a))
        return cls.build(space, base, int(data["degree"]), items)


def _form_sort_key(key):
    e, idx, b = key
    return (b, idx, sum(abs(x) for x in e), e)


# -- operations ----------------------------------------------------------

def d(omega: RelForm) -> RelForm:
    """Exterior derivative in the ``X`` directions (linear over the base)."""
    out: dict = {}
    for (e, idx, b), c in omega.terms.items():
        for j, x in enumerate(e):
            if not x or j in idx:
                continue
            sign, new_idx = _insert(idx, j)
            f = list(e)
            f[j] -= 1
            key = (tuple(f), new_idx, b)
            out[key] = out.get(key, ZERO) + sign * x * c
    return RelForm(omega.space, omega.base, omega.degree + 1, out, check=False)


def wedge(w1: RelForm, w2: RelForm) -> RelForm:
    """Exterior product; graded commutative."""
    w1._compatible(w2)
    table = w1.base.multiplication_table
    out: dict = {}
    for (e1, i1, b1), c1 in w1.terms.items():
        row = table[b1]
        for (e2, i2, b2), c2 in w2.terms.items():
            prod = row[b2]
            if not prod:
                continue
            sign = _merge_sign(i1, i2)
            if not sign:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            idx = tuple(sorted(i1 + i2))
            c = sign * c1 * c2
            for b, x in prod:
                key = (e, idx, b)
                out[key] = out.get(key, ZERO) + c * x
    return RelForm(w1.space, w1.base, w1.degree + w2.degree, out, check=False)


def is_closed(omega: RelForm) -> bool:
    return not d(omega)


@dataclass(frozen=True)
class TruncationLevel:
    """``F^i``: the stupid filtration keeps forms of degree ``>= i``."""

    i: int

    def contains(self, omega: RelForm) -> bool:
        return omega.degree >= self.i or not omega


@dataclass(frozen=True)
class CohomologyBasis:
    space: SpaceDescriptor
    degree: int
    subsets: tuple  # laurent index subsets, lexicographic
    representatives: tuple

    def __len__(self):
        return len(self.subsets)

    def index(self, subset: tuple) -> int:
        return self.subsets.index(subset)

    def labels(self) -> list[str]:
        names = self.space.names
        return ["^".join(f"dlog {names[i]}" for i in s) or "1" for s in self.subsets]


_BASIS_CACHE: dict = {}


def cohomology_basis(space: SpaceDescriptor, p: int, base: ArtinAlgebra = Q) -> CohomologyBasis:
    """``H^p(X)``: wedges of ``dlog`` over the Laurent coordinates."""
    key = (space, p, base)
    hit = _BASIS_CACHE.get(key)
    if hit is not None:
        return hit
    subsets = tuple(itertools.combinations(space.laurent_indices(), p))
    reps = []
    for s in subsets:
        e = [0] * space.n
        for i in s:
            e[i] = -1
        reps.append(RelForm(space, base, p, {(tuple(e), s, 0): ONE}))
    basis = CohomologyBasis(space, p, subsets, tuple(reps))
    _BASIS_CACHE[key] = basis
    return basis


def homotopy(omega: RelForm) -> RelForm:
    """The contracting homotopy ``H`` (degree -1); zero on functions."""
    if omega.degree == 0:
        return RelForm.zero(omega.space, omega.base, 0)
    laurent = omega.space.laurent
    out: dict = {}
    for (e, idx, b), c in omega.terms.items():
        below = 0
        for i in range(len(e)):
            if i in idx:
                if e[i] != -1:
                    f = list(e)
                    f[i] += 1
                    pos = idx.index(i)
                    key = (tuple(f), idx[:pos] + idx[pos + 1:], b)
                    val = c / (e[i] + 1)
                    out[key] = out.get(key, ZERO) + (-val if below & 1 else val)
                    break
                if not laurent[i]:  # pragma: no cover - plain exponents are >= 0
                    break
                below += 1
            elif e[i] != 0:
                break
    return RelForm(omega.space, omega.base, omega.degree - 1, out, check=False)


def harmonic_part(omega: RelForm):
    """Cohomology coordinates (one base-algebra element per basis class)."""
    basis = cohomology_basis(omega.space, omega.degree)
    A = omega.base
    coords = [[ZERO] * A.dim for _ in range(len(basis))]
    pos = {s: k for k, s in enumerate(basis.subsets)}
    for (e, idx, b), c in omega.terms.items():
        if all((x == -1) if i in idx else (x == 0) for i, x in enumerate(e)):
            k = pos.get(idx)
            if k is not None:
                coords[k][b] += c
    return [tuple(v) for v in coords]


@dataclass(frozen=True)
class Decomposition:
    coords: tuple  # one base-algebra element per cohomology basis class
    primitive: RelForm
    basis: CohomologyBasis

    def harmonic(self, base: ArtinAlgebra) -> RelForm:
        out = RelForm.zero(self.primitive.space, base, self.basis.degree)
        for a, rep in zip(self.coords, self.basis.representatives):
            if any(a):
                out = out + extend_form(rep, base).times_base(a)
        return out


def decompose(omega: RelForm) -> Decomposition:
    """Split a closed form as ``sum coords_i * basis_i + d(primitive)``."""
    if not is_closed(omega):
        raise NotClosed("form is not closed", d(omega))
    coords = harmonic_part(omega)
    prim = homotopy(omega) if omega.degree > 0 else None
    if prim is None:
        prim = RelForm.zero(omega.space, omega.base, 0)
    return Decomposition(tuple(coords), prim, cohomology_basis(omega.space, omega.degree))


def extend_form(omega: RelForm, base: ArtinAlgebra) -> RelForm:
    """View a form over ``Q`` as a form over ``base`` (constant coefficients)."""
    if omega.base == base:
        return omega
    if omega.base.dim != 1:
        raise SpaceMismatch("only forms over Q can be extended to another base")
    return RelForm(omega.space, base, omega.degree,
                   {(e, i, 0): c for (e, i, _), c in omega.terms.items()}, check=False)


@dataclass(frozen=True)
class GaussManinImage:
    """An element of ``Omega^p(X) (x) Omega^1(A)``: one ``Q``-form per Kähler basis vector."""

    kahler: KahlerDiff
    components: tuple

    def is_zero(self) -> bool:
        return not any(self.components)


def gauss_manin(omega: RelForm) -> GaussManinImage:
    """Differentiate coefficients in the base directions on the trivial family."""
    A = omega.base
    K = kahler_differentials(A)
    dbasis = [K.d(A.basis_element(b)) for b in range(A.dim)]
    parts = [dict() for _ in range(K.dim)]
    for (e, idx, b), c in omega.terms.items():
        for k, x in enumerate(dbasis[b]):
            if x:
                key = (e, idx, 0)
                parts[k][key] = parts[k].get(key, ZERO) + c * x
    comps = tuple(RelForm(omega.space, Q, omega.degree, p, check=False) for p in parts)
    return GaussManinImage(K, comps)


def random_form(rng, space: SpaceDescriptor, base: ArtinAlgebra, degree: int,
                nterms: int = 3, maxdeg: int = 2, coeff_range: int = 3) -> RelForm:
    """A random bounded-degree form (test and CLI sampling helper)."""
    out: dict = {}
    laurent = space.laurent
    for _ in range(nterms):
        e = tuple(rng.randint(-maxdeg if lau else 0, maxdeg) for lau in laurent)
        idx = tuple(sorted(rng.sample(range(space.n), degree)))
        b = rng.randrange(base.dim)
        c = Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 2))
        key = (e, idx, b)
        out[key] = out.get(key, ZERO) + c
    return RelForm(space, base, degree, out)
