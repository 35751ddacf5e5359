"""Model spaces ``(C*)^a x C^b`` and their coordinate rings with Artin coefficients."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympdef.artin import ArtinAlgebra, lift
from sympdef.errors import ConfigError, Degenerate, SpaceMismatch, TermLimitExceeded
from sympdef.linalg import ONE, ZERO

DEFAULT_MAX_TERMS = 10**6


def max_terms() -> int:
    raw = os.environ.get("SYMPDEF_MAXTERMS")
    if not raw:
        return DEFAULT_MAX_TERMS
    try:
        return int(float(raw))
    except ValueError as exc:
        raise ConfigError(f"SYMPDEF_MAXTERMS must be an integer, got {raw!r}") from exc


def check_size(terms: dict) -> None:
    if len(terms) > 1000 and len(terms) > max_terms():
        raise TermLimitExceeded(f"{len(terms)} terms exceed SYMPDEF_MAXTERMS={max_terms()}")


@dataclass(frozen=True)
class SpaceDescriptor:
    """Coordinates ``(name, laurent)`` of ``X`` paired into Darboux pairs."""

    variables: tuple
    pairs: tuple
    spec: str = ""

    def __post_init__(self):
        names = [n for n, _ in self.variables]
        if len(set(names)) != len(names):
            raise ConfigError("variable names must be unique")
        if len(names) % 2:
            raise ConfigError("a symplectic model space needs an even number of variables")
        seen = sorted(i for p in self.pairs for i in p)
        if seen != list(range(len(names))):
            raise ConfigError("every variable must belong to exactly one pair")

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.variables)

    @property
    def laurent(self) -> tuple:
        return tuple(bool(f) for _, f in self.variables)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ConfigError(f"unknown variable {name!r}") from None

    def laurent_indices(self) -> list[int]:
        return [i for i, f in enumerate(self.laurent) if f]

    def __str__(self):
        return self.spec or "+".join(("L:" if f else "A:") + n for n, f in self.variables)

    def to_json(self) -> dict:
        return {
            "variables": [{"name": n, "laurent": bool(f)} for n, f in self.variables],
            "pairs": [[self.names[i], self.names[j]] for i, j in self.pairs],
            "spec": self.spec,
        }

    @classmethod
    def from_json(cls, data) -> "SpaceDescriptor":
        if isinstance(data, str):
            return parse_space(data)
        variables = tuple((v["name"], bool(v["laurent"])) for v in data["variables"])
        names = [n for n, _ in variables]
        pairs = tuple((names.index(a), names.index(b)) for a, b in data["pairs"])
        return cls(variables, pairs, data.get("spec", ""))


_FACTOR = re.compile(r"^\s*(torus|affine)\s*:\s*(\d+)\s*$")


def parse_space(text: str) -> SpaceDescriptor:
    """``"torus:k"`` is ``(C*)^2k``, ``"affine:k"`` is ``C^2k``; factors join with ``+``."""
    kinds = []
    for part in text.split("+"):
        m = _FACTOR.match(part)
        if not m:
            raise ConfigError(f"bad space factor {part!r}; expected torus:k or affine:k")
        k = int(m.group(2))
        if k < 1:
            raise ConfigError("factor dimension must be positive")
        kinds.extend([m.group(1) == "torus"] * k)
    if len(kinds) == 1:
        names = [("x", "y")]
    else:
        names = [(f"x{i + 1}", f"y{i + 1}") for i in range(len(kinds))]
    variables = []
    pairs = []
    for (xn, yn), laurent in zip(names, kinds):
        pairs.append((len(variables), len(variables) + 1))
        variables.append((xn, laurent))
        variables.append((yn, laurent))
    return SpaceDescriptor(tuple(variables), tuple(pairs), text.replace(" ", ""))


def _check_exponents(space: SpaceDescriptor, exps: tuple) -> None:
    if len(exps) != space.n:
        raise SpaceMismatch("exponent vector has the wrong length")
    for e, lau in zip(exps, space.laurent):
        if e < 0 and not lau:
            raise SpaceMismatch("negative exponent in a non-Laurent direction")


class LaurentPoly:
    """Element of ``O(X) (x) A``: map ``(exponents, base index) -> Fraction``."""

    __slots__ = ("space", "base", "terms", "_hash")

    def __init__(self, space: SpaceDescriptor, base: ArtinAlgebra, terms: dict | None = None,
                 check: bool = True):
        self.space = space
        self.base = base
        t = {k: c for k, c in (terms or {}).items() if c}
        if check:
            for (e, b) in t:
                _check_exponents(space, e)
                if not 0 <= b < base.dim:
                    raise SpaceMismatch("base index out of range")
        check_size(t)
        self.terms = t
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, space, base):
        return cls(space, base, {}, check=False)

    @classmethod
    def constant(cls, space, base, c=ONE, a: Sequence | None = None):
        """``c`` times the base element ``a`` (default 1) as a constant function."""
        a = base.one() if a is None else a
        zero = (0,) * space.n
        return cls(space, base, {(zero, b): Fraction(c) * x for b, x in enumerate(a) if x})

    @classmethod
    def monomial(cls, space, base, exps, c=ONE, b: int = 0):
        return cls(space, base, {(tuple(exps), b): Fraction(c)})

    @classmethod
    def variable(cls, space, base, name: str):
        e = [0] * space.n
        e[space.index(name)] = 1
        return cls.monomial(space, base, e)

    # -- protocol --------------------------------------------------------
    def _compatible(self, other: "LaurentPoly"):
        if self.space != other.space or self.base != other.base:
            raise SpaceMismatch("operands live on different spaces or bases")

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.space == other.space and self.base == other.base and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.format()})"

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return LaurentPoly(self.space, self.base, out, check=False)

    def __neg__(self):
        return LaurentPoly(self.space, self.base, {k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly(self.space, self.base, {k: c * v for k, v in self.terms.items()}, check=False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._compatible(other)
        table = self.base.multiplication_table
        out: dict = {}
        for (e1, b1), c1 in self.terms.items():
            row = table[b1]
            for (e2, b2), c2 in other.terms.items():
                prod = row[b2]
                if not prod:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                c12 = c1 * c2
                for b, x in prod:
                    key = (e, b)
                    out[key] = out.get(key, ZERO) + c12 * x
        return LaurentPoly(self.space, self.base, out, check=False)

    __rmul__ = __mul__

    def times_base(self, a: Sequence) -> "LaurentPoly":
        """Multiply by a base-algebra element."""
        return self * LaurentPoly.constant(self.space, self.base, ONE, a)

    def derivative(self, j: int) -> "LaurentPoly":
        out = {}
        for (e, b), c in self.terms.items():
            if e[j]:
                f = list(e)
                f[j] -= 1
                out[(tuple(f), b)] = c * e[j]
        return LaurentPoly(self.space, self.base, out, check=False)

    # -- base handling ---------------------------------------------------
    def base_component(self, b: int) -> dict:
        """Coefficient function of the ``b``-th base monomial: ``exps -> Fraction``."""
        return {e: c for (e, bb), c in self.terms.items() if bb == b}

    def reduction(self) -> "LaurentPoly":
        """Image modulo the maximal ideal, as a function over ``Q``."""
        q = ArtinAlgebra.rationals()
        return LaurentPoly(self.space, q, {(e, 0): c for (e, b), c in self.terms.items() if b == 0},
                           check=False)

    def map_base(self, target: ArtinAlgebra, matrix) -> "LaurentPoly":
        """Apply the linear map with ``matrix[b]`` = image of base monomial ``b``."""
        out: dict = {}
        for (e, b), c in self.terms.items():
            for k, x in enumerate(matrix[b]):
                if x:
                    key = (e, k)
                    out[key] = out.get(key, ZERO) + c * x
        return LaurentPoly(self.space, target, out, check=False)

    def is_unit(self) -> bool:
        red = self.reduction().terms
        if len(red) != 1:
            return False
        (e, _), = red.keys()
        return all(x == 0 or lau for x, lau in zip(e, self.space.laurent))

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit ``u0 (1 + n)`` with ``n`` nilpotent."""
        if not self.is_unit():
            raise Degenerate("element is not invertible in O(X) (x) A", self)
        (e0, _), c0 = next(iter(self.reduction().terms.items()))
        inv0 = LaurentPoly(self.space, self.base, {(tuple(-x for x in e0), 0): 1 / c0}, check=False)
        n = inv0 * self - LaurentPoly.constant(self.space, self.base)
        out = LaurentPoly.constant(self.space, self.base)
        power = out
        for _ in range(self.base.nilpotency_order):
            power = power * (-n)
            if not power:
                break
            out = out + power
        return out * inv0

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        names = self.space.names
        for (e, b) in sorted(self.terms, key=_term_sort_key):
            c = self.terms[(e, b)]
            mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
            base = self.base.format(self.base.basis_element(b)) if b else ""
            factors = [f for f in (mono, base) if f]
            coeff = str(c)
            parts.append("*".join([coeff] + factors) if c != 1 or not factors else "*".join(factors))
        return " + ".join(parts)


def _term_sort_key(key):
    e, b = key
    return (b, sum(abs(x) for x in e), e)


def extend_base(p: LaurentPoly, base: ArtinAlgebra) -> LaurentPoly:
    """View a function over ``Q`` (or any base) with coefficients in ``base`` via ``1 -> 1``."""
    if p.base == base:
        return p
    if p.base.dim != 1:
        raise SpaceMismatch("only functions over Q can be extended to another base")
    return LaurentPoly(p.space, base, {(e, 0): c for (e, _), c in p.terms.items()}, check=False)


def project_poly(p: LaurentPoly, quotient: ArtinAlgebra) -> LaurentPoly:
    return p.map_base(quotient, quotient.projection)


def lift_poly(p: LaurentPoly, parent: ArtinAlgebra, quotient: ArtinAlgebra) -> LaurentPoly:
    rows = [lift(quotient, parent, quotient.basis_element(k)) for k in range(quotient.dim)]
    return p.map_base(parent, rows)


def poly_from_dict(space: SpaceDescriptor, base: ArtinAlgebra, data: Iterable) -> LaurentPoly:
    """Build from ``[(coeff, {var: exp}, base_element_or_None), ...]``."""
    out = LaurentPoly.zero(space, base)
    for coeff, exps, a in data:
        e = [0] * space.n
        for name, x in exps.items():
            e[space.index(name)] = int(x)
        term = LaurentPoly.monomial(space, base, e, coeff)
        if a is not None:
            term = term.times_base(base.parse(a) if isinstance(a, str) else a)
        out = out + term
    return out


__all__ = [
    "SpaceDescriptor", "LaurentPoly", "parse_space", "extend_base", "project_poly", "lift_poly",
    "poly_from_dict", "max_terms",
]
