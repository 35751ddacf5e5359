import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sympdef.artin import (
    ArtinAlgebra, RelativeDifferentials, artin_quotient, ideal_tensor_basis, is_elementary,
    kahler_differentials, lift, madic_filtration, project, random_artin_algebra, random_elementary_step,
    require_elementary, restrict_differentials,
)
from sympdef.errors import InvalidAlgebra, NotAnIdeal, NotElementary, NotSquareZero


def kahler_dim_oracle(A):
    """dim J/J^2 for J = ker(A (x) A -> A), computed with sympy only."""
    n = A.dim
    table = A.multiplication_table

    def prod(i, j):
        v = [0] * n
        for k, c in table[i][j]:
            v[k] = sympy.Rational(c.numerator, c.denominator)
        return v

    pairs = list(itertools.product(range(n), repeat=2))
    mu = sympy.Matrix([[prod(i, j)[r] for (i, j) in pairs] for r in range(n)])
    J = mu.nullspace()

    def tensor_mul(u, v):
        out = [0] * len(pairs)
        for a, (i, j) in enumerate(pairs):
            if not u[a]:
                continue
            for b, (k, l) in enumerate(pairs):
                if not v[b]:
                    continue
                left, right = prod(i, k), prod(j, l)
                for p, x in enumerate(left):
                    if x:
                        for q, y in enumerate(right):
                            if y:
                                out[p * n + q] += u[a] * v[b] * x * y
        return out

    sq = [tensor_mul(u, v) for u in J for v in J]
    r = sympy.Matrix(sq).rank() if sq else 0
    return len(J) - r


def test_truncated_basics():
    A = ArtinAlgebra.truncated(3)
    t = A.gen("t")
    assert A.dim == 3 and A.monomial_basis == ((0,), (1,), (2,))
    assert A.mul(t, A.mul(t, t)) == A.zero()
    assert A.nilpotency_order == 3
    assert A.format(A.parse("1 + 2*t + t^2 + t^5")) == "t^2 + 2*t + 1"


def test_unit_ideal_rejected():
    with pytest.raises(InvalidAlgebra):
        ArtinAlgebra(["t"], ["1 + t"], 3)


def test_ideal_closure():
    A = ArtinAlgebra.truncated(3)
    with pytest.raises(NotAnIdeal):
        from sympdef.artin import ArtinIdeal
        ArtinIdeal(A, [A.gen("t")])


@pytest.mark.parametrize("gens, ideal, order, dim, kdim", [
    (["t"], [], 2, 2, 1),
    (["t"], [], 3, 3, 2),
    (["s", "t"], ["s^2", "s*t", "t^2"], 3, 3, 3),
    (["s", "t"], [], 2, 3, 3),
    (["s", "t"], ["s^2", "t^2"], 3, 4, 4),
])
def test_kahler_dims(gens, ideal, order, dim, kdim):
    A = ArtinAlgebra(gens, ideal, order)
    assert A.dim == dim
    K = kahler_differentials(A)
    assert K.dim == kdim == kahler_dim_oracle(A)


def test_kahler_basis_labels():
    A = ArtinAlgebra(["s", "t"], ["s^2", "s*t", "t^2"], 3)
    K = kahler_differentials(A)
    assert [K.label(k) for k in range(K.dim)] == ["ds", "dt", "s*dt"]
    # t ds = -s dt
    tds = K.act(A.gen("t"), K.d(A.gen("s")))
    sdt = K.act(A.gen("s"), K.d(A.gen("t")))
    assert K.add(tds, sdt) == K.zero()


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_kahler_dim_random(seed):
    A = random_artin_algebra(random.Random(seed), max_dim=5)
    assert kahler_differentials(A).dim == kahler_dim_oracle(A)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_axioms_and_leibniz(seed):
    rng = random.Random(seed)
    A = random_artin_algebra(rng, max_dim=6)
    A.check_axioms()
    K = kahler_differentials(A)
    a = tuple(Fraction(rng.randint(-3, 3)) for _ in range(A.dim))
    b = tuple(Fraction(rng.randint(-3, 3)) for _ in range(A.dim))
    assert K.d(A.mul(a, b)) == K.add(K.act(a, K.d(b)), K.act(b, K.d(a)))
    assert not any(K.d(A.one()))


def test_quotient_projection_and_section():
    A = ArtinAlgebra.truncated(3)
    I = A.ideal(["t^2"])
    Q = artin_quotient(A, I)
    assert Q.dim == 2
    x = A.parse("1 + 2*t + 5*t^2")
    assert project(Q, x) == Q.parse("1 + 2*t")
    assert project(Q, lift(Q, A, Q.parse("3 - t"))) == Q.parse("3 - t")


def test_elementary_examples():
    A = ArtinAlgebra.truncated(3)
    assert is_elementary(A, A.ideal(["t^2"]))
    A4 = ArtinAlgebra.truncated(4)
    res = is_elementary(A4, A4.ideal(["t^2"]))
    assert not res and A4.format(res.witness) == "t^3"
    with pytest.raises(NotElementary):
        require_elementary(A4, A4.ideal(["t^2"]))
    with pytest.raises(NotSquareZero):
        is_elementary(A4, A4.ideal(["t"]))
    assert is_elementary(A, A.zero_ideal())


def test_restriction_map():
    A = ArtinAlgebra(["s", "t"], [], 2)
    I = A.ideal(["t"])
    eta = restrict_differentials(A, I)
    assert eta.source.dim == 2 and eta.target.dim == 1
    assert eta.is_surjective()
    assert len(eta.kernel()) == 1


def test_filtration_truncated():
    steps = madic_filtration(ArtinAlgebra.truncated(3))
    assert [(s.source.dim, s.ideal.dim, s.elementary) for s in steps] == [(3, 1, True), (2, 1, True)]
    assert madic_filtration(ArtinAlgebra.rationals()) == []


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_filtration_steps_elementary(seed):
    A = random_artin_algebra(random.Random(seed), max_order=5, max_dim=10)
    for s in madic_filtration(A):
        assert s.elementary
        assert s.ideal.is_square_zero()


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_relative_differentials_exact_sequence(seed):
    """I -> Omega(A)/I Omega(A) -> Omega(A/I) -> 0 is exact in the middle and on the right."""
    rng = random.Random(seed)
    A = random_artin_algebra(rng, max_dim=7)
    I = random_elementary_step(rng, A)
    if I is None:
        return
    eta = restrict_differentials(A, I)
    rel = RelativeDifferentials(A, I)
    assert eta.is_surjective()
    from sympdef.linalg import rank
    incl = rel.inclusion_matrix()
    assert rank(incl, rel.dim) == I.dim  # elementary: injective
    assert len(eta.kernel()) == I.dim  # exact in the middle
    for col in incl:
        assert not any(eta(col))


def test_ideal_tensor_basis():
    A = ArtinAlgebra.truncated(3)
    I = A.ideal(["t^2"])
    assert len(ideal_tensor_basis(A, I, 6)) == 6


def test_json_round_trip():
    A = ArtinAlgebra(["s", "t"], ["s^2 - t^3"], 4)
    assert ArtinAlgebra.from_json(A.to_json()) == A
