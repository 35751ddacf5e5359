"""Finite-dimensional DGLAs and the order-by-order Maurer-Cartan recursion.

For ``gamma(t) = sum_{i>=1} t^i gamma_i`` the equation ``d gamma = -1/2 [gamma, gamma]``
reads, at order ``n + 1``::

    d gamma_{n+1} = -1/2 sum_{i+j=n+1} [gamma_i, gamma_j]
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from sympdef.artin import parse_polynomial
from sympdef.errors import (
    ConfigError, JacobiFails, NotADerivation, NotADifferential, NotAntisymmetric, NotClosedInput,
    SympdefError,
)
from sympdef.linalg import ZERO, Subspace, mat_vec, nullspace, solve, solve_min_norm

HALF = Fraction(1, 2)


def _sign(k: int) -> int:
    return -1 if k & 1 else 1


class DGLA:
    """Graded pieces ``V^k`` for ``kmin <= k <= kmax`` with ``d`` and ``[,]`` as exact tables.

    ``differential[k]`` is a matrix (rows: ``V^{k+1}``, columns: ``V^k``);
    ``brackets[(i, j)][a][b]`` is ``[e_a, e_b]`` as a vector of ``V^{i+j}``.
    """

    def __init__(self, dims: Mapping[int, int], differential: Mapping | None = None,
                 brackets: Mapping | None = None, names: Mapping | None = None, validate: bool = True):
        if not dims:
            raise ConfigError("a DGLA needs at least one graded piece")
        self.kmin = min(dims)
        self.kmax = max(dims)
        self.dims = {k: int(dims.get(k, 0)) for k in range(self.kmin, self.kmax + 1)}
        if any(v < 0 for v in self.dims.values()):
            raise ConfigError("dimensions must be non-negative")
        self.differential = {}
        for k, m in (differential or {}).items():
            k = int(k)
            if k not in self.dims or k + 1 not in self.dims:
                raise ConfigError(f"differential from degree {k} leaves the graded range")
            m = [[Fraction(x) for x in row] for row in m]
            if len(m) != self.dims[k + 1] or any(len(r) != self.dims[k] for r in m):
                raise ConfigError(f"differential from degree {k} has the wrong shape")
            self.differential[k] = m
        self.brackets: dict = {}
        for (i, j), t in (brackets or {}).items():
            self._set_bracket(int(i), int(j), t)
        self._complete_brackets()
        self.names = {}
        for k in self.dims:
            given = (names or {}).get(k) or (names or {}).get(str(k))
            self.names[k] = list(given) if given else [f"e{k}_{i + 1}" for i in range(self.dims[k])]
            if len(self.names[k]) != self.dims[k]:
                raise ConfigError(f"degree {k} has {self.dims[k]} basis vectors but {len(self.names[k])} names")
        if validate:
            self.validate()

    # -- construction ------------------------------------------------------
    def _set_bracket(self, i, j, tensor):
        if i not in self.dims or j not in self.dims:
            raise ConfigError(f"bracket V^{i} x V^{j} leaves the graded range")
        k = i + j
        out_dim = self.dims.get(k, 0)
        t = [[[Fraction(x) for x in vec] for vec in row] for row in tensor]
        if len(t) != self.dims[i] or any(len(r) != self.dims[j] for r in t) or \
                any(len(v) != out_dim for r in t for v in r):
            raise ConfigError(f"bracket tensor for ({i}, {j}) has the wrong shape")
        if (i, j) in self.brackets:
            raise ConfigError(f"bracket ({i}, {j}) given twice")
        self.brackets[(i, j)] = t

    def _complete_brackets(self):
        for (i, j), t in list(self.brackets.items()):
            if (j, i) in self.brackets:
                continue
            s = -_sign(i * j)
            self.brackets[(j, i)] = [[[s * x for x in t[a][b]] for a in range(self.dims[i])]
                                     for b in range(self.dims[j])]

    # -- operations ---------------------------------------------------------
    def zero(self, k: int) -> tuple:
        return (ZERO,) * self.dims.get(k, 0)

    def basis(self, k: int) -> list:
        n = self.dims.get(k, 0)
        return [tuple(Fraction(int(a == b)) for b in range(n)) for a in range(n)]

    def d(self, k: int, v: Sequence) -> tuple:
        m = self.differential.get(k)
        if m is None:
            return self.zero(k + 1)
        return tuple(mat_vec(m, v))

    def bracket(self, i: int, j: int, x: Sequence, y: Sequence) -> tuple:
        k = i + j
        t = self.brackets.get((i, j))
        out = [ZERO] * self.dims.get(k, 0)
        if t is None or not out:
            return tuple(out)
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = t[a]
            for b, yb in enumerate(y):
                if yb:
                    c = xa * yb
                    for r, v in enumerate(row[b]):
                        if v:
                            out[r] += c * v
        return tuple(out)

    def format(self, k: int, v: Sequence) -> str:
        parts = []
        for name, c in zip(self.names.get(k, []), v):
            if c:
                parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def parse(self, k: int, text: str) -> tuple:
        """A linear expression in the degree-``k`` basis names."""
        names = self.names[k]
        poly = parse_polynomial(text, names)
        out = [ZERO] * len(names)
        for e, c in poly.items():
            if sum(e) != 1:
                raise ConfigError(f"{text!r} is not a linear combination of {names}")
            out[e.index(1)] += c
        return tuple(out)

    # -- validation ---------------------------------------------------------
    def validate(self) -> "DGLA":
        ks = list(self.dims)
        for k in ks:
            for v in self.basis(k):
                dd = self.d(k + 1, self.d(k, v)) if k + 2 in self.dims else ()
                if any(dd):
                    raise NotADifferential(f"d^2 != 0 on {self.names[k][v.index(1)]}", (k, v))
        for (i, j), t in self.brackets.items():
            s = -_sign(i * j)
            u = self.brackets[(j, i)]
            for a in range(self.dims[i]):
                for b in range(self.dims[j]):
                    if any(x != s * y for x, y in zip(t[a][b], u[b][a])):
                        raise NotAntisymmetric(
                            f"[{self.names[i][a]}, {self.names[j][b]}] violates graded antisymmetry",
                            ((i, a), (j, b)))
        for i, j, k in itertools.product(ks, repeat=3):
            if i + j + k not in self.dims:
                continue
            for x in self.basis(i):
                for y in self.basis(j):
                    for z in self.basis(k):
                        total = [ZERO] * self.dims[i + j + k]
                        terms = ((_sign(i * k), self.bracket(i, j + k, x, self.bracket(j, k, y, z))),
                                 (_sign(i * j), self.bracket(j, k + i, y, self.bracket(k, i, z, x))),
                                 (_sign(j * k), self.bracket(k, i + j, z, self.bracket(i, j, x, y))))
                        for s, v in terms:
                            for r, c in enumerate(v):
                                total[r] += s * c
                        if any(total):
                            raise JacobiFails("graded Jacobi identity fails",
                                              ((i, x.index(1)), (j, y.index(1)), (k, z.index(1))))
        for i, j in itertools.product(ks, repeat=2):
            if i + j + 1 not in self.dims:
                continue
            for x in self.basis(i):
                for y in self.basis(j):
                    lhs = self.d(i + j, self.bracket(i, j, x, y))
                    a = self.bracket(i + 1, j, self.d(i, x), y)
                    b = self.bracket(i, j + 1, x, self.d(j, y))
                    rhs = [p + _sign(i) * q for p, q in zip(a, b)]
                    if list(lhs) != rhs:
                        raise NotADerivation(
                            f"d[{self.names[i][x.index(1)]}, {self.names[j][y.index(1)]}] "
                            f"!= [d{self.names[i][x.index(1)]}, {self.names[j][y.index(1)]}] "
                            f"+ (-1)^{i} [{self.names[i][x.index(1)]}, d{self.names[j][y.index(1)]}]",
                            ((i, x.index(1)), (j, y.index(1))))
        return self

    # -- cohomology -----------------------------------------------------------
    def cocycles(self, k: int) -> list:
        m = self.differential.get(k)
        n = self.dims.get(k, 0)
        if m is None or not m:
            return self.basis(k)
        return nullspace(m, n)

    def coboundaries(self, k: int) -> Subspace:
        n = self.dims.get(k, 0)
        m = self.differential.get(k - 1)
        vecs = [] if m is None else [[row[c] for row in m] for c in range(self.dims[k - 1])]
        return Subspace(vecs, n)

    def cohomology_basis(self, k: int) -> list:
        """Cocycle representatives completing ``im d`` to ``ker d``."""
        im = self.coboundaries(k)
        span = Subspace(list(im.basis), self.dims.get(k, 0))
        reps = []
        for z in self.cocycles(k):
            if not span.contains(z):
                reps.append(tuple(z))
                span = Subspace(list(span.basis) + [list(z)], self.dims[k])
        return reps

    def cohomology_class(self, k: int, v: Sequence) -> tuple:
        """Coordinates of a cocycle in :meth:`cohomology_basis`."""
        reps = self.cohomology_basis(k)
        im = self.coboundaries(k)
        vecs = [list(r) for r in reps] + [list(b) for b in im.basis]
        n = self.dims.get(k, 0)
        matrix = [[vec[r] for vec in vecs] for r in range(n)]
        sol = solve(matrix, list(v), len(vecs))
        if sol is None:
            raise SympdefError("element is not a cocycle", tuple(v))
        return tuple(sol[:len(reps)])

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        from sympdef.serialize import format_rational
        return {
            "range": [self.kmin, self.kmax],
            "dims": {str(k): v for k, v in self.dims.items()},
            "names": {str(k): v for k, v in self.names.items()},
            "d": [{"from_deg": k, "matrix": [[format_rational(x) for x in r] for r in m]}
                  for k, m in sorted(self.differential.items())],
            "bracket": [{"i": i, "j": j, "tensor": [[[format_rational(x) for x in v] for v in r] for r in t]}
                        for (i, j), t in sorted(self.brackets.items()) if i <= j],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DGLA":
        from sympdef.serialize import parse_rational
        try:
            kmin, kmax = (int(x) for x in data["range"])
            raw_dims = {int(k): int(v) for k, v in data["dims"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed DGLA description: {exc}") from exc
        dims = {k: raw_dims.get(k, 0) for k in range(kmin, kmax + 1)}

        def conv(x):
            if isinstance(x, list):
                return [conv(y) for y in x]
            return parse_rational(x)

        differential = {int(e["from_deg"]): conv(e["matrix"]) for e in data.get("d", [])}
        brackets = {}
        for e in data.get("bracket", []):
            key = (int(e["i"]), int(e["j"]))
            if key in brackets:
                raise ConfigError(f"bracket {key} given twice")
            brackets[key] = conv(e["tensor"])
        names = {int(k): v for k, v in data.get("names", {}).items()}
        return cls(dims, differential, brackets, names)


def validate_dgla(candidate) -> DGLA:
    if isinstance(candidate, DGLA):
        return candidate.validate()
    return DGLA.from_json(candidate)


@dataclass(frozen=True)
class MCElement:
    """``gamma(t) = sum_{i=1}^{order} t^i coefficients[i-1]`` with ``coefficients`` in ``V^1``."""

    dgla: DGLA
    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def truncate(self, n: int) -> "MCElement":
        return MCElement(self.dgla, self.coefficients[:n])

    def format(self) -> str:
        return "\n".join(f"gamma_{i + 1} = {self.dgla.format(1, g)}" for i, g in enumerate(self.coefficients))


@dataclass(frozen=True)
class Obstructed:
    """The recursion failed at ``order``: ``rhs`` is closed but not exact."""

    order: int
    rhs: tuple
    cohomology_class: tuple  # coordinates in DGLA.cohomology_basis(2)
    partial: MCElement

    def __bool__(self):
        return False

    def format(self) -> str:
        g = self.partial.dgla
        reps = g.cohomology_basis(2)
        cls = [0] * g.dims.get(2, 0)
        for c, r in zip(self.cohomology_class, reps):
            for k, x in enumerate(r):
                cls[k] += c * x
        return f"Obstructed at order {self.order}, class {g.format(2, cls)}"


def mc_rhs(gamma: MCElement, m: int) -> tuple:
    """``-1/2 sum_{i+j=m} [gamma_i, gamma_j]`` for ``i, j >= 1``."""
    g = gamma.dgla
    out = [ZERO] * g.dims.get(2, 0)
    for i in range(1, m):
        j = m - i
        if i > gamma.order or j > gamma.order:
            continue
        br = g.bracket(1, 1, gamma.coefficients[i - 1], gamma.coefficients[j - 1])
        for r, c in enumerate(br):
            out[r] -= HALF * c
    return tuple(out)


def mc_step(gamma: MCElement):
    """Extend by one order, or report the obstruction."""
    g = gamma.dgla
    n = gamma.order
    R = mc_rhs(gamma, n + 1)
    if 2 in g.differential and any(g.d(2, R)):
        raise SympdefError("right-hand side is not closed; the DGLA axioms are violated", R)
    dim1 = g.dims.get(1, 0)
    if not any(R):
        return MCElement(g, gamma.coefficients + ((ZERO,) * dim1,))
    m = g.differential.get(1)
    sol = solve_min_norm(m, list(R), dim1) if m else None
    if sol is None:
        return Obstructed(n + 1, R, g.cohomology_class(2, R), gamma)
    return MCElement(g, gamma.coefficients + (tuple(sol),))


def mc_solve(dgla: DGLA, gamma1: Sequence, order: int):
    if order < 1:
        raise ConfigError("order must be at least 1")
    gamma1 = tuple(Fraction(x) for x in gamma1)
    if len(gamma1) != dgla.dims.get(1, 0):
        raise ConfigError("gamma_1 has the wrong length")
    if any(dgla.d(1, gamma1)):
        raise NotClosedInput("d(gamma_1) != 0", dgla.d(1, gamma1))
    gamma = MCElement(dgla, (gamma1,))
    while gamma.order < order:
        nxt = mc_step(gamma)
        if isinstance(nxt, Obstructed):
            return nxt
        gamma = nxt
    return gamma


def check_mc(gamma: MCElement) -> list:
    """Residual ``d gamma_m + 1/2 sum_{i+j=m} [gamma_i, gamma_j]`` for ``m = 1..order``."""
    g = gamma.dgla
    out = []
    for m in range(1, gamma.order + 1):
        dg = g.d(1, gamma.coefficients[m - 1])
        R = mc_rhs(gamma, m)
        out.append(tuple(a - b for a, b in zip(dg, R)))
    return out


# -- fixtures ----------------------------------------------------------------

def abelian(dims: Mapping[int, int]) -> DGLA:
    return DGLA(dims)


def obstructed_example() -> DGLA:
    """``V^1 = <a>, V^2 = <b>``, ``d = 0``, ``[a, a] = b``."""
    return DGLA({1: 1, 2: 1}, {}, {(1, 1): [[[1]]]}, {1: ["a"], 2: ["b"]})


def solvable_example() -> DGLA:
    """``V^1 = <a, c>, V^2 = <b>``, ``d c = b``, ``[a, a] = b``, other brackets zero."""
    return DGLA({1: 2, 2: 1}, {1: [[0, 1]]}, {(1, 1): [[[1], [0]], [[0], [0]]]},
                {1: ["a", "c"], 2: ["b"]})


def non_derivation_example() -> DGLA:
    """``V^0 = <u>, V^1 = <a>, V^2 = <b>``, ``d u = a``, ``[a, a] = b``: ``d`` is not a derivation."""
    return DGLA({0: 1, 1: 1, 2: 1}, {0: [[1]]}, {(1, 1): [[[1]]]},
                {0: ["u"], 1: ["a"], 2: ["b"]}, validate=False)
