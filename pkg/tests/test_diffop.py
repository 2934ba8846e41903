import random
from math import comb

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys
from jetmodules.diffop import (
    DiffOperator,
    FactorizationError,
    JetHom,
    do_rank_free,
    factor_through_jets,
    format_operator,
    hom_to_op,
    op_to_hom,
)
from jetmodules.jetcore import JetAlgebra
from jetmodules.polycore import DomainError, Poly
from jetmodules.presentations import AlgebraPresentation, FPModule
from jetmodules.propcheck.fixtures import rand_operator
from jetmodules.syntax import parse_operator, parse_poly
from test_polycore import to_sympy

R1 = AlgebraPresentation(("x",))
R2 = AlgebraPresentation(("x", "y"))


def op(text, ring=R2):
    return parse_operator(text, ring)


@st.composite
def operators(draw, ring=R2, max_order=3, coeff_deg=2):
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    return rand_operator(rng, ring, draw(st.integers(0, max_order)), coeff_deg)


def sympy_apply(D, f):
    syms = sp.symbols(D.ring.variables)
    g = to_sympy(f)
    total = sp.Integer(0)
    for I, mat in D.coeffs.items():
        h = g
        for s, k in zip(syms, I):
            h = sp.diff(h, s, k)
        total += to_sympy(mat[0][0]) * h
    return sp.expand(total)


def test_examples():
    D = op("x*d(x) + d(x)^2", R1)
    x = R1.var("x")
    assert D.apply([x ** 2])[0] == 2 * x ** 2 + 2
    assert D(x ** 2)[0] == 2 * x ** 2 + 2
    assert op("d(x)*x - x*d(x)", R1) == DiffOperator.identity(R1)
    xd = op("x*d(x)", R1)
    assert xd.compose(xd) == op("x^2*d(x)^2 + x*d(x)", R1)


def test_formatting():
    assert format_operator(op("x*d(x)^2 + d(x)", R1)) == "x*d(x)^2 + d(x)"
    assert format_operator(op("(x + y)*d(x) - 1/2")) == "(x + y)*d(x) - 1/2"
    assert format_operator(DiffOperator.zero(R2)) == "0"
    assert format_operator(op("d(y)^2 + d(x)*d(y) + d(x)^2")) == "d(x)^2 + d(x)*d(y) + d(y)^2"


def test_zero_operator_has_order_zero():
    assert DiffOperator.zero(R2).order() == 0
    assert op("d(x)^2*d(y)").order() == 3


@given(operators(), polys(("x", "y"), 4))
def test_apply_matches_sympy(D, f):
    assert sp.expand(to_sympy(D.apply([f])[0]) - sympy_apply(D, f)) == 0


@given(operators(max_order=2), operators(max_order=2), polys(("x", "y"), 4))
def test_composition_is_composition_of_maps(D, E, f):
    assert D.compose(E).apply([f]) == D.apply(E.apply([f]))


@given(operators(), operators())
def test_order_of_composition_is_subadditive(D, E):
    C = D.compose(E)
    if not C.coeffs:
        return
    assert C.order() <= D.order() + E.order()


@pytest.mark.parametrize("seed", range(20))
def test_order_of_composition_adds_for_one_variable(seed):
    rng = random.Random(seed)
    D = rand_operator(rng, R1, rng.randint(0, 3), 2, exact_order=True)
    E = rand_operator(rng, R1, rng.randint(0, 3), 2, exact_order=True)
    assert D.compose(E).order() == D.order() + E.order()


@given(operators())
def test_correspondence_roundtrip(D):
    H = op_to_hom(D)
    assert hom_to_op(H) == D
    assert op_to_hom(hom_to_op(H)) == H


@given(operators(), polys(("x", "y"), 4), st.integers(0, 1))
def test_two_evaluation_routes_agree(D, f, extra):
    assert D.apply([f]) == op_to_hom(D, D.order() + extra).compose_d([f])


def test_jet_hom_values_carry_factorials():
    H = op_to_hom(op("x*d(x) + d(x)^2", R1))
    assert {I: v[0] for (I, _), v in H.values.items()} == {(1,): R1.var("x"), (2,): Poly.const(2, ("x",))}


def test_low_jet_order_is_rejected():
    with pytest.raises(DomainError):
        op_to_hom(op("d(x)^3", R1), 2)


@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_partial_power_does_not_factor_below_its_order(N):
    P = DiffOperator.partial(R1, "x", N + 1)
    with pytest.raises(FactorizationError):
        factor_through_jets(P.apply, R1, 1, 1, N)
    assert hom_to_op(factor_through_jets(P.apply, R1, 1, 1, N + 1)) == P


def test_nonlinear_map_does_not_factor():
    with pytest.raises(FactorizationError):
        factor_through_jets(lambda v: [v[0] * v[0]], R1, 1, 1, 3)


@given(operators(max_order=2))
def test_factorization_recovers_operator(D):
    H = factor_through_jets(D.apply, R2, 1, 1, D.order())
    assert hom_to_op(H) == D


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rank_of_operators_on_free_modules(n):
    ranks = [do_rank_free(n, N) for N in range(4)]
    assert ranks == [comb(n + N, n) for N in range(4)]
    assert all(a < b for a, b in zip(ranks, ranks[1:]))
    assert do_rank_free(n, 2, 2, 3) == 6 * comb(n + 2, n)


def test_matrix_operators_and_direct_sum():
    D = op("d(x)", R1)
    S = D.direct_sum(op("x", R1))
    x = R1.var("x")
    assert S.m1 == S.m2 == 2
    assert S.apply([x ** 2, x]) == [2 * x, x ** 2]
    H = factor_through_jets(S.apply, R1, 2, 2, 1)
    assert hom_to_op(H) == S


def test_well_definedness_on_quotients():
    A = AlgebraPresentation(("x",), [parse_poly("x^2", ("x",))])
    assert not parse_operator("d(x)", A).is_well_defined()
    assert parse_operator("x*d(x)", A).is_well_defined()


def test_jet_hom_well_definedness():
    A = AlgebraPresentation(("x",), [parse_poly("x^2", ("x",))])
    J = JetAlgebra(A, 1)
    x = A.var("x")
    # x*dx = 0 in J^1, so the value on dx must be killed by x
    good = JetHom(J, 1, 1, {((0,), 0): [A.one()], ((1,), 0): [-x]})
    bad = JetHom(J, 1, 1, {((0,), 0): [A.one()], ((1,), 0): [A.one()]})
    assert good.is_well_defined()
    assert not bad.is_well_defined()


def test_jet_hom_rejects_out_of_range_indices():
    J = JetAlgebra(R1, 1)
    with pytest.raises(DomainError):
        JetHom(J, 1, 1, {((2,), 0): [R1.one()]})


def test_relative_operators():
    R = AlgebraPresentation(("a", "x"))
    D = parse_operator("a*d(x)^2", R, ("x",))
    H = op_to_hom(D)
    assert H.jet.jet_vars == ("dx",)
    assert hom_to_op(H) == D
