import random
from fractions import Fraction
from math import comb

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys, zero_dim_rings
from jetmodules.groebner import INFINITE
from jetmodules.jetcore import (
    JetAlgebra,
    JetModule,
    PreconditionError,
    base_change_0,
    canonical_map,
    cotangent_psi,
    graded_piece,
    jet_algebra,
    solve_universal_factorization,
    universal_derivation,
)
from jetmodules.polycore import DomainError, Poly
from jetmodules.presentations import AlgebraPresentation, FPModule, ModuleHom, RingMap, span_presentation
from jetmodules.syntax import parse_matrix, parse_poly, parse_poly_list
from sympy_ref import jet_dim, jet_ideal, module_dim
from test_polycore import to_sympy

V = ("x", "y")


def ring(text, vars=V):
    return AlgebraPresentation(vars, parse_poly_list(text, vars))


# Q-dimension chains of J^N, N = 0, 1, ...; frozen from the sympy reference
FROZEN_JET_DIMS = [
    ("x^2", ("x",), [2, 3, 4, 4, 4]),
    ("x^3", ("x",), [3, 5, 7, 8, 9]),
    ("x^2, y^2", V, [4, 8, 13, 15]),
    ("x^2, x*y, y^2", V, [3, 6, 9, 9]),
    ("y^2 - x^3, x^4", V, [8, 17, 28]),
]


@pytest.mark.parametrize("rels,vars,chain", FROZEN_JET_DIMS)
def test_frozen_jet_dimensions(rels, vars, chain):
    A = ring(rels, vars)
    assert [JetAlgebra(A, N).dimension() for N in range(len(chain))] == chain


@pytest.mark.parametrize("rels,vars,chain", FROZEN_JET_DIMS[:4])
def test_frozen_jet_dimensions_agree_with_sympy(rels, vars, chain):
    syms = sp.symbols(vars)
    gens = [to_sympy(f) for f in parse_poly_list(rels, vars)]
    assert [jet_dim(gens, list(syms), N) for N in range(len(chain))] == chain


FROZEN_JET_MODULES = [
    ("x^3", ("x",), "[[x^2]]", 1, 4),
    ("x^2, y^2", V, "[[x, y], [y, 0]]", 1, 9),
    ("x^2, y^3", V, "[[x*y, x], [y^2, 1 + x]]", 2, 16),
    ("x^4", ("x",), "[[x, x^2]]", 2, 13),
]


@pytest.mark.parametrize("rels,vars,mat,N,dim", FROZEN_JET_MODULES)
def test_frozen_jet_module_dimensions(rels, vars, mat, N, dim):
    A = ring(rels, vars)
    rows = parse_matrix(mat, vars)
    assert JetModule(FPModule(A, len(rows[0]), rows), N).dimension() == dim


@pytest.mark.parametrize("rels,vars,mat,N,dim", FROZEN_JET_MODULES)
def test_frozen_jet_module_dimensions_agree_with_sympy(rels, vars, mat, N, dim):
    syms = list(sp.symbols(vars))
    gens, allsyms = jet_ideal([to_sympy(f) for f in parse_poly_list(rels, vars)], syms, N)
    shift = {s: s + sp.Symbol("d" + str(s)) for s in syms}
    rows = [[sp.expand(to_sympy(a).subs(shift, simultaneous=True)) for a in r] for r in parse_matrix(mat, vars)]
    assert module_dim(gens, allsyms, rows, len(rows[0])) == dim


def test_jet_algebra_presentation():
    J = JetAlgebra(ring("x^2", ("x",)), 1)
    assert J.variables == ("x", "dx")
    assert sorted(J.gb.format()) == ["dx^2", "x*dx", "x^2"]
    assert str(J.p2(J.base.var("x"))) == "x + dx"


def test_jet_module_of_cyclic():
    A = AlgebraPresentation(("x",))
    J = JetModule(FPModule.cyclic(A, [A.var("x") ** 3]), 1)
    assert str(J.module.matrix[0][0]) == "x^3 + 3*x^2*dx"
    assert J.dimension() == 6


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("N", [0, 1, 2, 3, 4])
def test_free_rank(n, N):
    A = AlgebraPresentation(("x", "y", "z")[:n])
    J = JetAlgebra(A, N)
    assert J.dimension() == INFINITE
    assert J.fiber_dimension({v: 1 for v in A.variables}) == comb(n + N, n)
    if N:
        assert graded_piece(J).fiber_dimension({v: 0 for v in A.variables}) == comb(n + N - 1, n - 1)


@given(zero_dim_rings(max_deg=2), polys(V, 3), polys(V, 3), st.integers(0, 2))
def test_universal_derivation_is_multiplicative(A, a, b, N):
    J = JetAlgebra(A, N)
    assert J.p2(a * b) == J.normal_form(J.p2(a) * J.p2(b))
    assert J.p1(a * b) == J.normal_form(J.p1(a) * J.p1(b))


@given(zero_dim_rings(max_deg=2), polys(V, 3), st.integers(1, 2))
def test_derivation_is_filtered(A, a, N):
    J = JetAlgebra(A, N)
    diff = J.normal_form(J.p2(a) - J.p1(a))
    coeffs = J.dx_coefficients(diff)
    assert coeffs.get((0, 0), Poly.zero(A.variables)).is_zero() or A.contains(coeffs[(0, 0)])


@given(st.data())
def test_module_derivation_is_filtered(data):
    A = data.draw(zero_dim_rings(max_deg=2))
    rows = data.draw(st.lists(st.lists(polys(V, 2, 2), min_size=2, max_size=2), max_size=1))
    JM = JetModule(FPModule(A, 2, rows), 1)
    a = data.draw(polys(V, 2))
    m = data.draw(st.lists(polys(V, 2, 2), min_size=2, max_size=2))
    lhs = JM.d([a * c for c in m])
    rhs = [JM.jet.p1(a) * c for c in JM.d(m)]
    # d(a m) - a d(m) lies in the dx-ideal: it vanishes after setting dx = dy = 0
    diff = [JM.jet.normal_form(u - v) for u, v in zip(lhs, rhs)]
    zero = {"dx": 0, "dy": 0}
    base = FPModule(A, 2, rows)
    assert base.contains([d.subs(zero).embed(A.variables) for d in diff])


SMOOTH = [("y - x^2", "x"), ("x^2 + y^2 - 1", None), ("x*y - 1", "x")]


@pytest.mark.parametrize("rels,free_var", SMOOTH)
@pytest.mark.parametrize("N", [1, 2])
def test_jet_bundle_fiber_additivity(rels, free_var, N):
    A = ring(rels)
    top, low = JetAlgebra(A, N), JetAlgebra(A, N - 1)
    piece = graded_piece(top)
    rng = random.Random(rels)
    f = A.relations[0]
    points = []
    if rels == "x^2 + y^2 - 1":
        points = [{"x": Fraction(3, 5), "y": Fraction(4, 5)}, {"x": Fraction(1), "y": Fraction(0)}, {"x": Fraction(-5, 13), "y": Fraction(12, 13)}]
    else:
        while len(points) < 3:
            xv = Fraction(rng.randint(1, 9))
            yv = [v for v in (xv ** 2, 1 / xv) if f.evaluate({"x": xv, "y": v}) == 0][0]
            points.append({"x": xv, "y": yv})
    for pt in points:
        assert top.fiber_dimension(pt) == low.fiber_dimension(pt) + piece.fiber_dimension(pt)
        assert top.fiber_dimension(pt) == N + 1


@given(st.data())
def test_jets_preserve_surjections(data):
    A = data.draw(zero_dim_rings(max_deg=2))
    rows = data.draw(st.lists(st.lists(polys(V, 2, 2), min_size=2, max_size=2), max_size=2))
    M = FPModule(A, 2, rows)
    extra = data.draw(st.lists(polys(V, 2, 2), min_size=2, max_size=2))
    F = FPModule.free(A, 3)
    phi = ModuleHom(F, M, [M.generator(0), M.generator(1), extra])
    assert phi.is_surjective()
    N = data.draw(st.integers(0, 2))
    JF, JMod = JetModule(F, N), JetModule(M, N, jet=JetModule(F, N).jet)
    Jphi = ModuleHom(JF.module, JMod.module, [JMod.d(v) for v in phi.images])
    assert Jphi.is_well_defined()
    assert Jphi.is_surjective()


def test_relative_jets_change_with_fiber():
    A = AlgebraPresentation(("a", "x"), parse_poly_list("x^2 - a", ("a", "x")))
    J = JetAlgebra(A, 1, over=("a",))
    assert J.jet_vars == ("dx",)
    assert J.fiber_dimension({"a": 1}) == 2
    assert J.fiber_dimension({"a": 0}) == 3


def test_jet_name_collision_rejected():
    with pytest.raises(DomainError):
        JetAlgebra(AlgebraPresentation(("x", "dx")), 1)
    with pytest.raises(DomainError):
        JetAlgebra(AlgebraPresentation(("x",)), -1)


def test_universal_derivation_dispatch():
    A = AlgebraPresentation(("x",))
    J = jet_algebra(A, 2)
    assert str(universal_derivation(J, A.var("x") ** 2)) == "x^2 + 2*x*dx + dx^2"
    JM = JetModule(FPModule.free(A, 2), 1)
    assert [str(c) for c in universal_derivation(JM, [A.var("x"), A.one()])] == ["x + dx", "1"]
    with pytest.raises(DomainError):
        universal_derivation(A, A.var("x"))


def test_factorization_through_jets():
    A = AlgebraPresentation(("x",))
    src = FPModule.free(A, 1)
    jm = JetModule(src, 2)
    target = FPModule.free(jm.jet, 1)
    dx = jm.jet.var("dx")

    def t(v):
        return [jm.jet.normal_form(dx * c) for c in jm.d(v)]

    phi = solve_universal_factorization(t, src, target, 2)
    assert phi.images == [[dx]]

    def not_p2_linear(v):
        return [jm.jet.normal_form(dx * jm.jet.p1(c)) for c in v]

    with pytest.raises(PreconditionError):
        solve_universal_factorization(not_p2_linear, src, target, 2)


def test_graded_piece_of_artinian():
    A = ring("x^2", ("x",))
    assert graded_piece(A, 1).dimension() == 1
    assert graded_piece(A, 2).dimension() == 1
    assert graded_piece(A, 3).dimension() == 0
    with pytest.raises(DomainError):
        graded_piece(A, 0)


def test_base_change_zero_example():
    A = ring("x^2", ("x",))
    A2 = AlgebraPresentation(("y",))
    cm = base_change_0(A, A2, 1)
    assert cm.hom.is_well_defined() and cm.hom.is_surjective()
    for y in (0, 1, 2):
        assert cm.left.fiber_dimension({"y": y}) == cm.right.fiber_dimension({"y": y}) == 3


def test_cotangent_example_dimensions():
    A = AlgebraPresentation(("x",))
    psi, src, restricted = cotangent_psi(FPModule.free(A, 1), [A.var("x")])
    assert psi.is_well_defined()
    assert src.dimension() == 1
    image = span_presentation(restricted, psi.images, ("x",))
    assert image.dimension() == 1


def test_canonical_map_dispatch():
    A = ring("x^2", ("x",))
    cm = canonical_map("base_change_0", A=A, A2=AlgebraPresentation(("y",)), N=1)
    assert cm.kind == "base_change_0"
    with pytest.raises(DomainError):
        canonical_map("no_such_map")


def test_truncation_projection():
    J = JetAlgebra(ring("x^3", ("x",)), 3)
    proj = J.truncate_to(1)
    assert proj.is_surjective()
    with pytest.raises(DomainError):
        J.truncate_to(4)
