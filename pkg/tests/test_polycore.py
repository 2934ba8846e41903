from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys
from jetmodules.polycore import (
    DomainError,
    Poly,
    multi_factorial,
    multi_indices,
    multiply_truncated,
    taylor_shift,
    taylor_shift_by_derivatives,
)

V3 = ("x", "y", "z")
JM = {"x": "dx", "y": "dy", "z": "dz"}


def to_sympy(p: Poly):
    syms = sp.symbols(p.vars)
    return sp.Integer(0) + sum(sp.Rational(c.numerator, c.denominator) * sp.prod([s ** k for s, k in zip(syms, e)]) for e, c in p.terms.items())


def test_canonical_text():
    x, y = Poly.var("x", ("x", "y")), Poly.var("y", ("x", "y"))
    assert str(x ** 2 * y + 2 * x) == "x^2*y + 2*x"
    assert str(-x) == "-x"
    assert str(x - y) == "x - y"
    assert str(x / 2) == "1/2*x"
    assert str(Poly.zero(("x",))) == "0"


def test_arithmetic_basics():
    x = Poly.var("x", ("x",))
    assert (x + 1) ** 2 == x ** 2 + 2 * x + 1
    assert (x ** 3).partial_derivative("x") == 3 * x ** 2
    assert (x ** 3).degree() == 3
    assert Poly.zero(("x",)).is_zero()
    assert (x * 0).is_zero()


def test_division_by_zero_scalar():
    with pytest.raises((ZeroDivisionError, DomainError)):
        Poly.var("x", ("x",)) / 0


@given(polys(V3, 3), polys(V3, 3))
def test_ring_operations_match_sympy(p, q):
    assert sp.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sp.expand(to_sympy(p + q) - to_sympy(p) - to_sympy(q)) == 0


@given(polys(V3, 3))
def test_mixed_partials_commute(p):
    assert p.partial_derivative("x").partial_derivative("y") == p.partial_derivative("y").partial_derivative("x")


@given(polys(V3, 3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_taylor_recovers_translate(p, h):
    """Substituting dx := h - x into the full Taylor expansion gives p(h)."""
    N = max(p.degree(), 0)
    shifted = taylor_shift(p, JM, N)
    vals = {"x": Fraction(1), "y": Fraction(-2), "z": Fraction(3)}
    sub = dict(vals)
    sub.update({JM[v]: Fraction(hv) - vals[v] for v, hv in zip(V3, h)})
    assert shifted.evaluate(sub) == p.evaluate(dict(zip(V3, map(Fraction, h))))


@given(polys(V3, 3), st.integers(0, 4))
def test_two_taylor_constructions_agree(p, N):
    assert taylor_shift(p, JM, N) == taylor_shift_by_derivatives(p, JM, N)


@given(polys(V3, 2), polys(V3, 2), st.integers(0, 3))
def test_taylor_shift_is_multiplicative(p, q, N):
    jets = tuple(JM.values())
    lhs = taylor_shift(p * q, JM, N)
    rhs = multiply_truncated(taylor_shift(p, JM, N), taylor_shift(q, JM, N), jets, N)
    assert lhs == rhs


def test_taylor_shift_matches_sympy_series():
    x, dx = sp.symbols("x dx")
    p = Poly.var("x", ("x",)) ** 4 - 3 * Poly.var("x", ("x",))
    got = to_sympy(taylor_shift(p, {"x": "dx"}, 2))
    ref = sp.expand((x + dx) ** 4 - 3 * (x + dx))
    ref = sum(ref.coeff(dx, k) * dx ** k for k in range(3))
    assert sp.expand(got - ref) == 0


def test_multi_indices_and_factorial():
    assert list(multi_indices(2, 1)) == [(0, 0), (0, 1), (1, 0)] or sorted(multi_indices(2, 1)) == [(0, 0), (0, 1), (1, 0)]
    assert len(list(multi_indices(3, 4))) == 35
    assert len(list(multi_indices(2, 3, exact=True))) == 4
    assert multi_factorial((2, 3)) == 12


def test_subs_and_evaluate():
    vars = ("x", "y")
    p = Poly.var("x", vars) ** 2 * Poly.var("y", vars) + 1
    assert p.evaluate({"x": 2, "y": Fraction(1, 2)}) == 3
    assert p.subs({"y": 0}) == Poly.const(1, vars)


def test_unknown_variable_in_shift_rejected():
    with pytest.raises(DomainError):
        taylor_shift(Poly.var("x", ("x",)), {"x": "x"}, 1)
