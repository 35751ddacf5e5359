import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from sympdef.artin import ArtinAlgebra
from sympdef.derham import RelForm, d, random_form, wedge
from sympdef.errors import Degenerate, NotClosed, RankOverflow, SpaceMismatch
from sympdef.laurent import LaurentPoly, parse_space
from sympdef.symplectic import (
    GrassmannForm, SymplecticForm, TangentValuedForm, VectorField, as_symplectic, contract,
    hamiltonian_field, lambda_op, lie_bracket, nondegenerate, raise_form, random_tangent_form,
    random_vector_field, schouten, standard_form, tian_todorov_check,
)

Q = ArtinAlgebra.rationals()
A2 = ArtinAlgebra.truncated(2)
A3 = ArtinAlgebra.truncated(3)
T1, T2, C2 = parse_space("torus:1"), parse_space("torus:2"), parse_space("affine:1")
MIXED = parse_space("torus:1+affine:1")
seeds = st.integers(0, 10**6)


def poly(space, base, terms):
    out = LaurentPoly.zero(space, base)
    for c, exps in terms:
        e = [0] * space.n
        for k, v in exps.items():
            e[space.index(k)] = v
        out = out + LaurentPoly.monomial(space, base, e, Fraction(c))
    return out


def field(space, base, **comps):
    vs = [LaurentPoly.zero(space, base)] * space.n
    for name, terms in comps.items():
        vs[space.index(name)] = poly(space, base, terms)
    return VectorField(space, base, vs)


def sym_poly(p):
    syms = sympy.symbols(p.space.names)
    out = 0
    for (e, _), c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for s, x in zip(syms, e):
            t *= s ** x
        out += t
    return sympy.expand(out)


# -- examples ---------------------------------------------------------------

def test_nondegenerate_examples():
    om0 = standard_form(T1)
    assert nondegenerate(om0)
    assert sym_poly(as_symplectic(om0).determinant()) == sympy.sympify("x**-2*y**-2")
    xdxdy = RelForm.build(C2, Q, 2, [(1, {"x": 1}, ["dx", "dy"], None)])
    assert not nondegenerate(xdxdy)
    deformed = standard_form(T1, A2) + d(RelForm.build(T1, A2, 1, [(1, {"x": 1}, ["dy"], "t")]))
    assert nondegenerate(deformed)


def test_not_closed_rejected():
    # x dy is not a 2-form; a non-closed 2-form needs more variables
    w = RelForm.build(T2, Q, 2, [(1, {"x2": 1}, ["dx1", "dy1"], None)])
    with pytest.raises(NotClosed):
        SymplecticForm(w)


def test_contract_examples():
    om0 = standard_form(T1)
    xi = field(T1, Q, x=[(1, {"x": 2, "y": 2})])
    assert contract(om0, xi) == RelForm.build(T1, Q, 1, [(1, {"x": 1, "y": 1}, ["dy"], None)])
    assert not contract(om0, VectorField.zero(T1, Q))
    dxdy = standard_form(C2)
    assert contract(dxdy, field(C2, Q, y=[(1, {})])) == -RelForm.dvar(C2, Q, "x")
    with pytest.raises(SpaceMismatch):
        contract(dxdy, field(T1, Q, y=[(1, {})]))


def test_raise_examples():
    om0 = standard_form(T1)
    assert raise_form(om0, RelForm.build(T1, Q, 1, [(1, {"x": 1, "y": 1}, ["dy"], None)])) == \
        field(T1, Q, x=[(1, {"x": 2, "y": 2})])
    assert not raise_form(om0, RelForm.zero(T1, Q, 1))
    dxdy = standard_form(C2)
    xi = raise_form(dxdy, RelForm.dvar(C2, Q, "x"))
    assert contract(dxdy, xi) == RelForm.dvar(C2, Q, "x")
    # degenerate forms cannot raise; use a closed degenerate 2-form on C^4
    C4 = parse_space("affine:2")
    bad = RelForm.build(C4, Q, 2, [(1, {}, ["dx1", "dy1"], None)])
    with pytest.raises(Degenerate):
        raise_form(bad, RelForm.dvar(C4, Q, "x1"))


def test_hamiltonian_examples():
    dxdy = standard_form(C2)
    X = hamiltonian_field(dxdy, poly(C2, Q, [(1, {"x": 1})]))
    assert X in (field(C2, Q, y=[(1, {})]), field(C2, Q, y=[(-1, {})]))
    assert not hamiltonian_field(dxdy, poly(C2, Q, [(5, {})]))
    om0 = standard_form(T1)
    X = hamiltonian_field(om0, poly(T1, Q, [(1, {"x": 1, "y": 1})]))
    assert not d(contract(om0, X))


def test_schouten_examples():
    x_dx = field(C2, Q, x=[(1, {"x": 1})])
    y_dy = field(C2, Q, y=[(1, {"y": 1})])
    g1 = TangentValuedForm.single(x_dx, (0,), 2)
    g2 = TangentValuedForm.single(y_dy, (1,), 2)
    assert not schouten(g1, g2)
    assert not schouten(g1, g1)
    a = TangentValuedForm.single(field(C2, Q, y=[(1, {"x": 1})]), (0,), 2)
    b = TangentValuedForm.single(field(C2, Q, x=[(1, {"y": 1})]), (1,), 2)
    expect = field(C2, Q, x=[(1, {"x": 1})], y=[(-1, {"y": 1})])
    assert schouten(a, b) == TangentValuedForm.single(expect, (0, 1), 2)
    with pytest.raises(RankOverflow):
        schouten(schouten(a, b), a)


def test_lambda_examples():
    assert lambda_op(standard_form(C2), standard_form(C2)).coefficient(()) == LaurentPoly.constant(C2, Q)
    assert not lambda_op(standard_form(C2), RelForm.dvar(C2, Q, "x"))
    om = standard_form(T2)
    assert lambda_op(om, om).coefficient(()) == LaurentPoly.constant(T2, Q, 2)


def test_tt_examples():
    om = standard_form(T1)
    rng = random.Random(7)
    g = random_tangent_form(rng, T1, Q)
    zero = TangentValuedForm(T1, Q, 1, {}, 2)
    res = tian_todorov_check(om, g, zero)
    assert res.holds and not res.lhs and not res.rhs
    h = random_tangent_form(rng, T1, Q, hamiltonian_on=om)
    assert tian_todorov_check(om, h, h).holds


# -- properties -------------------------------------------------------------

SPACES = [T1, C2, MIXED, T2]


def deformed(rng, X, base):
    om = standard_form(X, base)
    if base.dim > 1:
        w = random_form(rng, X, base, 1, nterms=2, maxdeg=1).times_base(base.gen("t"))
        om = om + d(w)
    return as_symplectic(om)


@given(seeds)
def test_determinant_matches_sympy(seed):
    rng = random.Random(seed)
    X = rng.choice(SPACES)
    S = deformed(rng, X, Q)
    n = X.n
    M = sympy.zeros(n, n)
    for i in range(n):
        for j in range(i + 1, n):
            c = sym_poly(S.underlying.coefficient((i, j)))
            M[i, j], M[j, i] = c, -c
    assert sympy.simplify(M.det() - sym_poly(S.determinant())) == 0


@given(seeds)
def test_contract_raise_inverse(seed):
    rng = random.Random(seed)
    X = rng.choice(SPACES)
    base = rng.choice([Q, A2, A3])
    S = deformed(rng, X, base)
    xi = random_vector_field(rng, X, base)
    assert raise_form(S, contract(S, xi)) == xi
    alpha = random_form(rng, X, base, 1)
    assert contract(S, raise_form(S, alpha)) == alpha


@given(seeds)
def test_hamiltonian_contraction_closed(seed):
    rng = random.Random(seed)
    X = rng.choice(SPACES)
    base = rng.choice([Q, A3])
    S = deformed(rng, X, base)
    f = random_form(rng, X, base, 0).coefficient(())
    assert not d(contract(S, hamiltonian_field(S, f)))


def test_contract_bijective_on_monomials():
    base = A2
    S = deformed(random.Random(3), T1, base)
    for e in [(a, b) for a in range(-1, 2) for b in range(-1, 2)]:
        for j in range(2):
            alpha = RelForm(T1, base, 1, {(e, (j,), 1): Fraction(1)})
            xi = raise_form(S, alpha)
            assert all(not c.base_component(0) for c in xi.components)  # stays in V (x) I
            assert contract(S, xi) == alpha


@given(seeds)
def test_schouten_antisymmetry_and_jacobi(seed):
    rng = random.Random(seed)
    X = rng.choice([T1, C2])
    g = [TangentValuedForm.single(random_vector_field(rng, X, Q, maxdeg=1), (k,), 3) for k in range(3)]
    a, b, c = g
    assert schouten(a, b) == schouten(b, a)  # odd elements: -(-1)^(1*1) = +1
    lhs = schouten(a, schouten(b, c))
    rhs = schouten(schouten(a, b), c) - schouten(b, schouten(a, c))
    assert lhs == rhs


@given(seeds)
def test_lie_bracket_matches_sympy(seed):
    rng = random.Random(seed)
    X = rng.choice([T1, C2])
    U, V = random_vector_field(rng, X, Q), random_vector_field(rng, X, Q)
    syms = sympy.symbols(X.names)
    u = [sym_poly(c) for c in U.components]
    v = [sym_poly(c) for c in V.components]
    br = [sym_poly(c) for c in lie_bracket(U, V).components]
    for k in range(X.n):
        expect = sum(u[j] * sympy.diff(v[k], syms[j]) - v[j] * sympy.diff(u[k], syms[j]) for j in range(X.n))
        assert sympy.expand(br[k] - expect) == 0


@given(seeds)
def test_lambda_normalization(seed):
    rng = random.Random(seed)
    X = rng.choice(SPACES)
    S = deformed(rng, X, rng.choice([Q, A3]))
    lam = lambda_op(S, S.underlying).coefficient(())
    assert lam == LaurentPoly.constant(X, S.base, X.n // 2)


@given(seeds)
def test_tian_todorov_closed_inputs(seed):
    rng = random.Random(seed)
    X = rng.choice([T1, T2, C2])
    S = as_symplectic(standard_form(X))
    g1 = random_tangent_form(rng, X, Q, hamiltonian_on=S, maxdeg=1)
    g2 = random_tangent_form(rng, X, Q, hamiltonian_on=S, maxdeg=1)
    res = tian_todorov_check(S, g1, g2)
    assert res.closed_inputs and res.holds


def test_tian_todorov_general_inputs_documented():
    """Without the closedness hypothesis the identity fails for most inputs."""
    rng = random.Random(11)
    S = as_symplectic(standard_form(T1))
    results = [tian_todorov_check(S, random_tangent_form(rng, T1, Q), random_tangent_form(rng, T1, Q))
               for _ in range(20)]
    general = [r for r in results if not r.closed_inputs]
    assert general and sum(not r.holds for r in general) >= len(general) // 2


def test_grassmann_product_sign():
    a = GrassmannForm(C2, Q, 1, 1, {(0,): RelForm.dvar(C2, Q, "x")})
    b = GrassmannForm(C2, Q, 1, 1, {(1,): RelForm.dvar(C2, Q, "y")})
    ab, ba = a * b, b * a
    # dx e0 * dy e1 vs dy e1 * dx e0: both form and marker swaps contribute
    assert ab == ba
    assert ab.parts[(0, 1)] == -wedge(RelForm.dvar(C2, Q, "x"), RelForm.dvar(C2, Q, "y"))
