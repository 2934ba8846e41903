"""Seeded random fixtures and their string serialization."""

from __future__ import annotations

import random
from itertools import combinations
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..diffop import DiffOperator, format_operator
from ..polycore import Poly, multi_indices
from ..presentations import INFINITE, AlgebraPresentation, FPModule
from ..syntax import format_matrix, parse_matrix, parse_operator, parse_poly, parse_poly_list
from .core import CheckFailure, Instance, instance_rng, require

X_NAMES = ("x", "y", "z")
P_NAMES = ("a", "b")


def rand_coeff(rng: random.Random, lo: int = -3, hi: int = 3, nonzero: bool = True) -> Fraction:
    while True:
        c = rng.randint(lo, hi)
        if c or not nonzero:
            return Fraction(c)


def rand_poly(rng: random.Random, vars: Sequence[str], max_deg: int, nterms: int = 3, min_deg: int = 0) -> Poly:
    vars = tuple(vars)
    if max_deg < min_deg:
        return Poly.zero(vars)
    monos = [I for I in multi_indices(len(vars), max_deg) if sum(I) >= min_deg]
    terms = {}
    for _ in range(nterms):
        terms[rng.choice(monos)] = rand_coeff(rng)
    return Poly(terms, vars)


def rand_zero_dim_relations(rng, vars, max_deg) -> List[Poly]:
    """One relation per variable with leading term v^d (degrevlex), so the quotient is finite."""
    rels = []
    for v in vars:
        d = rng.randint(1, max_deg)
        lead = Poly.monomial({v: d}, vars)
        tail = rand_poly(rng, vars, d - 1, nterms=2) if d > 1 else Poly.const(rng.randint(-2, 2), vars)
        rels.append(lead + tail)
    return rels


def rand_ring(rng, vars, max_deg, zero_dim_bias: float = 0.5) -> AlgebraPresentation:
    """Finite-dimensional with probability ``zero_dim_bias``; otherwise a polynomial ring
    or a hypersurface, which are handled through fiber sampling."""
    if rng.random() < zero_dim_bias:
        return AlgebraPresentation(vars, rand_zero_dim_relations(rng, vars, max_deg))
    if len(vars) >= 2 and rng.random() < 0.5:
        v = vars[0]
        d = rng.randint(1, max_deg)
        f = Poly.monomial({v: d}, vars) + rand_poly(rng, vars[1:], d, nterms=2)
        return AlgebraPresentation(vars, [f])
    return AlgebraPresentation(vars)


def rand_module(rng, ring: AlgebraPresentation, max_deg: int, max_gens: int = 2, max_rows: int = 2) -> FPModule:
    ngens = rng.randint(1, max_gens)
    rows = []
    for _ in range(rng.randint(0, max_rows)):
        row = [rand_poly(rng, ring.variables, max(0, max_deg - 1) if rng.random() < 0.5 else max_deg, nterms=2) for _ in range(ngens)]
        rows.append(row)
    return FPModule(ring, ngens, rows)


def rand_operator(rng, ring: AlgebraPresentation, order: int, coeff_deg: int, dvars=None, exact_order: bool = False) -> DiffOperator:
    dvars = tuple(ring.variables if dvars is None else dvars)
    coeffs = {}
    for I in multi_indices(len(dvars), order):
        if rng.random() < 0.6:
            coeffs[I] = rand_poly(rng, ring.variables, coeff_deg, nterms=2)
    if exact_order:
        top = [I for I in multi_indices(len(dvars), order, exact=True)]
        I = rng.choice(top)
        c = rand_poly(rng, ring.variables, coeff_deg, nterms=2)
        if c.is_zero():
            c = Poly.const(1, ring.variables)
        coeffs[I] = c
    return DiffOperator.scalar(ring, coeffs, dvars)


# -- serialization ------------------------------------------------------------------


def put_ring(inst: Instance, key: str, ring: AlgebraPresentation):
    inst[f"{key}.vars"] = ",".join(ring.variables)
    inst[f"{key}.rels"] = ", ".join(str(f) for f in ring.relations)


def get_ring(inst: Instance, key: str) -> AlgebraPresentation:
    vars = [v for v in inst[f"{key}.vars"].split(",") if v]
    return AlgebraPresentation(vars, parse_poly_list(inst[f"{key}.rels"], vars))


def put_module(inst: Instance, key: str, m: FPModule):
    inst[f"{key}.ngens"] = str(m.ngens)
    inst[f"{key}.matrix"] = format_matrix(m.matrix)


def get_module(inst: Instance, key: str, ring: AlgebraPresentation) -> FPModule:
    rows = parse_matrix(inst[f"{key}.matrix"], ring.variables)
    return FPModule(ring, int(inst[f"{key}.ngens"]), rows)


def put_polys(inst: Instance, key: str, polys: Sequence[Poly]):
    inst[key] = ", ".join(str(p) for p in polys)


def get_polys(inst: Instance, key: str, vars) -> List[Poly]:
    return parse_poly_list(inst[key], vars)


def get_poly(inst: Instance, key: str, vars) -> Poly:
    return parse_poly(inst[key], vars)


def put_operator(inst: Instance, key: str, op: DiffOperator):
    inst[key] = format_operator(op)
    inst[f"{key}.dvars"] = ",".join(op.dvars)


def get_operator(inst: Instance, key: str, ring: AlgebraPresentation) -> DiffOperator:
    dvars = [v for v in inst.get(f"{key}.dvars", ",".join(ring.variables)).split(",") if v]
    return parse_operator(inst[key], ring, dvars)


# -- dimension comparison ---------------------------------------------------------------


def sample_points(inst: Instance, vars: Sequence[str], count: int, avoid: Sequence[Poly] = (), lo: int = -4, hi: int = 4):
    rng = instance_rng(inst)
    pts = []
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > 500:
            raise CheckFailure("sampling", "could not find sample points avoiding the excluded set")
        pt = {v: Fraction(rng.randint(lo, hi)) for v in vars}
        if all(f.subs(pt).terms for f in avoid):
            pts.append(pt)
    return pts


def dims_agree(left, right, base_vars: Sequence[str], inst: Instance, stage: str, samples: int = 3, avoid=()):
    """Exact Q-dimension equality when finite, else fiber dimensions at sampled points."""
    dl, dr = left.dimension(), right.dimension()
    if dl != INFINITE or dr != INFINITE:
        require(dl == dr, stage, f"dimensions {dl} != {dr}")
        return dl
    for pt in sample_points(inst, _finite_fiber_vars(left, base_vars, inst), samples, avoid):
        fl, fr = left.fiber_dimension(pt), right.fiber_dimension(pt)
        require(fl != INFINITE, stage, f"infinite fiber at {_pt(pt)}")
        require(fl == fr, stage, f"fiber dimensions {fl} != {fr} at {_pt(pt)}")
    return None


def _finite_fiber_vars(obj, base_vars, inst) -> Tuple[str, ...]:
    """Smallest set of variables whose specialization leaves a finite, nonzero fiber.

    Specializing every variable usually lands off the support (e.g. x = 2 on Q[x]/(x^2)),
    where both sides are zero and the comparison says nothing.
    """
    base_vars = tuple(base_vars)
    probe = sample_points(inst, base_vars, 1)[0]
    for k in range(1, len(base_vars)):
        for sub in combinations(base_vars, k):
            if obj.fiber_dimension({v: probe[v] for v in sub}) not in (INFINITE, 0):
                return sub
    return base_vars


def _pt(pt: Dict[str, Fraction]) -> str:
    return ",".join(f"{k}={v}" for k, v in pt.items())


def measure(obj, base_vars, inst, samples=3, avoid=()):
    """Global dimension if finite, else the tuple of fiber dimensions at sample points."""
    d = obj.dimension()
    if d != INFINITE:
        return d
    return tuple(obj.fiber_dimension(pt) for pt in sample_points(inst, base_vars, samples, avoid))


def pick_vars(rng, names, max_count):
    return tuple(names[: rng.randint(1, max_count)])


def additive(middle, parts, base_vars, inst, stage: str, samples: int = 3, avoid=()):
    """dim(middle) == sum(dim(parts)); global dimensions when all finite, else fiberwise."""
    dims = [middle.dimension()] + [p.dimension() for p in parts]
    if all(d != INFINITE for d in dims):
        require(dims[0] == sum(dims[1:]), stage, f"{dims[0]} != " + " + ".join(map(str, dims[1:])))
        return
    for pt in sample_points(inst, base_vars, samples, avoid):
        fd = [middle.fiber_dimension(pt)] + [p.fiber_dimension(pt) for p in parts]
        require(all(d != INFINITE for d in fd), stage, f"infinite fiber at {_pt(pt)}")
        require(fd[0] == sum(fd[1:]), stage, f"{fd[0]} != " + " + ".join(map(str, fd[1:])) + f" at {_pt(pt)}")
