"""Jet algebras J^N(A/R), jet modules J^N(M/R) and the canonical maps between them.

Coordinates: a base variable ``x`` gets the jet variable ``dx`` standing for
``1 (x) x - x (x) 1``. The first structure map p1 is ``x -> x`` and the second
(the universal derivation) is ``x -> x + dx`` truncated at dx-degree N.
Relative jets over a set of base variables ("parameters") only shift the others.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .polycore import DomainError, Poly, jet_name, multi_indices, taylor_shift
from .presentations import (
    AlgebraPresentation,
    FPModule,
    InvariantViolation,
    ModuleHom,
    RingMap,
    span_presentation,
    tensor_modules,
)


class PreconditionError(ValueError):
    """An input does not satisfy the hypotheses of a construction."""


def _jet_map(base: AlgebraPresentation, over: Sequence[str]) -> Dict[str, str]:
    over = set(over)
    for v in over:
        if v not in base.variables:
            raise DomainError(f"unknown parameter variable {v!r}")
    jm = {v: jet_name(v) for v in base.variables if v not in over}
    clash = set(jm.values()) & set(base.variables)
    if clash:
        raise DomainError(f"jet variable name collides with a base variable: {sorted(clash)}")
    return jm


class JetAlgebra(AlgebraPresentation):
    """Q[x, dx] / (f, d^1 f, dx-monomials of degree N+1), relative to ``over``."""

    def __init__(self, base: AlgebraPresentation, N: int, over: Sequence[str] = ()):
        if N < 0:
            raise DomainError("jet order must be >= 0")
        self.base = base
        self.N = int(N)
        self.over = tuple(v for v in base.variables if v in set(over))
        self.jet_map = _jet_map(base, self.over)
        self.jet_vars = tuple(self.jet_map.values())
        self.shifted = tuple(self.jet_map)
        vars = base.variables + self.jet_vars
        rels = [f.embed(vars) for f in base.relations]
        rels += [self.jet_part(f) for f in base.relations]
        rels += self.truncation_monomials()
        super().__init__(vars, rels)

    def __repr__(self):
        rel = f"/{','.join(self.over)}" if self.over else ""
        return f"J^{self.N}({self.base!r}{rel})"

    def truncation_monomials(self) -> List[Poly]:
        vars = self.base.variables + self.jet_vars
        return [Poly.monomial(dict(zip(self.jet_vars, I)), vars) for I in multi_indices(len(self.jet_vars), self.N + 1, exact=True)]

    def jet_part(self, f: Poly) -> Poly:
        """d^1 f = f(x + dx) - f, truncated at order N."""
        f = self.base.poly(f)
        vars = self.base.variables + self.jet_vars
        return (taylor_shift(f, self.jet_map, self.N) - f).embed(vars)

    def dx_monomial(self, I: Sequence[int]) -> Poly:
        return Poly.monomial(dict(zip(self.jet_vars, I)), self.variables)

    def dx_indices(self, max_degree: Optional[int] = None, exact: bool = False):
        return multi_indices(len(self.jet_vars), self.N if max_degree is None else max_degree, exact=exact)

    # structure maps

    def p1(self, a) -> Poly:
        return self.normal_form(self.base.poly(a).embed(self.variables))

    def p2(self, a) -> Poly:
        a = self.base.poly(a)
        return self.normal_form(taylor_shift(a, self.jet_map, self.N))

    d = p2

    @cached_property
    def p1_map(self) -> RingMap:
        return RingMap(self.base, self, {v: self.var(v) for v in self.base.variables})

    @cached_property
    def p2_map(self) -> RingMap:
        imgs = {v: self.var(v) + (self.var(self.jet_map[v]) if v in self.jet_map else 0) for v in self.base.variables}
        return RingMap(self.base, self, imgs)

    def dx_coefficients(self, p: Poly) -> Dict[Tuple[int, ...], Poly]:
        """Split a normal form as sum c_I(x) dx^I; the c_I live on the base variables."""
        p = self.normal_form(p)
        out = {}
        for exps, c in p.coefficients_in(self.jet_vars).items():
            out[exps] = c.embed(self.variables).embed(self.base.variables)
        return out

    def as_base_module(self) -> FPModule:
        """J^N as a module over the base ring through p1, generated by the dx^I."""
        vecs = [[self.dx_monomial(I)] for I in self.dx_indices()]
        return span_presentation(FPModule.free(self, 1), vecs, self.base.variables)

    def truncate_to(self, M: int) -> RingMap:
        """The projection J^N -> J^M for M <= N (identity on names)."""
        if M > self.N:
            raise DomainError("can only truncate to a lower order")
        return RingMap(self, jet_algebra(self.base, M, self.over))


def jet_algebra(a: AlgebraPresentation, N: int, over: Sequence[str] = ()) -> JetAlgebra:
    return JetAlgebra(a, N, over)


class JetModule:
    """J^N(M/R): the base presentation matrix pushed through p2."""

    def __init__(self, base: FPModule, N: int, over: Sequence[str] = (), jet: JetAlgebra | None = None):
        self.base = base
        self.jet = jet if jet is not None else JetAlgebra(base.ring, N, over)
        if jet is not None and (jet.N != N or jet.base.variables != base.ring.variables):
            raise DomainError("supplied jet algebra does not match")
        self.N = self.jet.N
        rows = [[self.jet.p2(a) for a in row] for row in base.matrix]
        self.module = FPModule(self.jet, base.ngens, rows)

    def __repr__(self):
        return f"JetModule(N={self.N}, {self.module!r})"

    @property
    def ngens(self):
        return self.base.ngens

    def d(self, vec: Sequence) -> List[Poly]:
        """The universal derivation m -> class of 1 (x) m."""
        vec = self.base.vector(vec)
        return self.module.normal_form([self.jet.p2(a) for a in vec])

    def p1_vector(self, vec: Sequence) -> List[Poly]:
        return [self.jet.p1(a) for a in self.base.vector(vec)]

    def generator(self, j: int, I: Sequence[int] | None = None) -> List[Poly]:
        """dx^I e_j."""
        z = self.jet.zero()
        mono = self.jet.one() if I is None else self.jet.dx_monomial(I)
        return [mono if k == j else z for k in range(self.ngens)]

    def dimension(self):
        return self.module.dimension()

    def fiber_dimension(self, point):
        return self.module.fiber_dimension(point)

    def contains(self, vec) -> bool:
        return self.module.contains(vec)

    def as_base_module(self) -> FPModule:
        vecs = [self.generator(j, I) for j in range(self.ngens) for I in self.jet.dx_indices()]
        return span_presentation(self.module, vecs, self.base.ring.variables)


def jet_module(m: FPModule, N: int, over: Sequence[str] = ()) -> JetModule:
    return JetModule(m, N, over)


def universal_derivation(j, elem):
    """d^N on an algebra element (JetAlgebra) or a vector (JetModule)."""
    if isinstance(j, JetAlgebra):
        return j.p2(elem)
    if isinstance(j, JetModule):
        return j.d(elem)
    raise DomainError("expected a jet algebra or jet module")


@dataclass
class GradedPiece:
    order: int
    module: FPModule

    def dimension(self):
        return self.module.dimension()

    def fiber_dimension(self, point):
        return self.module.fiber_dimension(point)


def graded_piece(j, N: Optional[int] = None) -> GradedPiece:
    """I^N J / I^{N+1} J as a module over the base ring (through p1)."""
    if isinstance(j, AlgebraPresentation) and not isinstance(j, JetAlgebra):
        if N is None:
            raise DomainError("order required")
        j = JetAlgebra(j, N)
    if isinstance(j, FPModule):
        if N is None:
            raise DomainError("order required")
        j = JetModule(j, N)
    if j.N < 1:
        raise DomainError("graded pieces start at order 1")
    if isinstance(j, JetAlgebra):
        jet, module, ngens, base_vars = j, FPModule.free(j, 1), 1, j.base.variables
    else:
        jet, module, ngens, base_vars = j.jet, j.module, j.ngens, j.base.ring.variables
    vecs = []
    for k in range(ngens):
        for I in jet.dx_indices(jet.N, exact=True):
            v = [jet.zero()] * ngens
            v[k] = jet.dx_monomial(I)
            vecs.append(v)
    return GradedPiece(jet.N, span_presentation(module, vecs, base_vars))


# -- universal property -------------------------------------------------------------


def solve_universal_factorization(
    t: Callable[[List[Poly]], Sequence[Poly]],
    source: FPModule,
    target: FPModule,
    N: int,
    over: Sequence[str] = (),
    probe_degree: int = 2,
) -> ModuleHom:
    """The unique J^N-linear phi with t = phi o d^N, for a filtered derivation t: M -> target.

    ``target`` is a module over the jet algebra of ``source.ring``; t is checked to be
    linear for the second structure on monomial probes.
    """
    jm = JetModule(source, N, over)
    if target.ring.variables != jm.jet.variables:
        raise DomainError("target must be a module over the jet algebra of the source ring")
    target = FPModule(jm.jet, target.ngens, target.matrix)
    images = [target.vector(t(source.generator(j))) for j in range(source.ngens)]
    A = source.ring
    for mono in multi_indices(len(A.variables), probe_degree):
        a = Poly.monomial(dict(zip(A.variables, mono)), A.variables)
        pa = jm.jet.p2(a)
        for j in range(source.ngens):
            v = [a if k == j else A.zero() for k in range(source.ngens)]
            lhs = target.vector(t(v))
            rhs = [pa * g for g in images[j]]
            if not target.contains([x - y for x, y in zip(lhs, rhs)]):
                raise PreconditionError(f"t is not linear for the second structure at {a} e_{j}")
    phi = ModuleHom(jm.module, target, images, RingMap(jm.jet, target.ring, check=False))
    if not phi.is_well_defined():
        raise InvariantViolation("relations of the jet module do not map to zero")
    return phi


# -- canonical maps ---------------------------------------------------------------------


def _identity_hom(src: FPModule, dst: FPModule, pairing: Sequence[int] | None = None) -> ModuleHom:
    rm = RingMap(src.ring, dst.ring)
    if pairing is None:
        pairing = range(src.ngens)
    return ModuleHom(src, dst, [dst.generator(k) for k in pairing], rm)


@dataclass
class CanonicalMap:
    """A constructed comparison map together with its two ends."""

    kind: str
    hom: ModuleHom
    left: object
    right: object


def base_change_0(A: AlgebraPresentation, A2: AlgebraPresentation, N: int) -> CanonicalMap:
    """J^N(A (x)_Q A' / A') -> J^N(A/Q) (x)_Q A'."""
    if set(A.variables) & set(A2.variables):
        raise DomainError("base change 0 needs disjoint variable sets")
    left = JetAlgebra(A.tensor(A2), N, over=A2.variables)
    right = JetAlgebra(A, N).tensor(A2)
    hom = _identity_hom(FPModule.free(left, 1), FPModule.free(right, 1))
    return CanonicalMap("base_change_0", hom, left, right)


def base_change_I(M: FPModule, params: Sequence[str], A2: AlgebraPresentation, N: int) -> CanonicalMap:
    """beta: J^N(M (x)_A A' / A') -> J^N(M/A) (x)_A A'.

    A is the parameter subring (variables ``params``) of M's ring B, and A' is an
    A-algebra whose variables contain ``params``.
    """
    B = M.ring
    for p in params:
        if p not in A2.variables:
            raise DomainError("A' must contain the parameter variables")
    BA = B.tensor(A2)
    over = A2.variables
    left = JetModule(M.over(BA), N, over)
    jm = JetModule(M, N, params)
    ring = jm.jet.tensor(A2)
    right = jm.module.over(ring)
    left_mod = left.module
    right = FPModule(ring, right.ngens, right.matrix)
    return CanonicalMap("base_change_I", _identity_hom(left_mod, right), left, right)


def base_change_II(M: FPModule, params: Sequence[str], W: FPModule, N: int) -> CanonicalMap:
    """alpha: J^N(M (x)_A W / A) -> J^N(M/A) (x)_A W, W a module over the parameter ring."""
    B = M.ring
    for v in W.ring.variables:
        if v not in params:
            raise DomainError("W must live on the parameter ring")
    MW = tensor_modules(M, W.over(B) if W.ring.variables != B.variables else W)
    left = JetModule(MW, N, params)
    jm = JetModule(M, N, params)
    right = tensor_modules(jm.module, W.over(jm.jet))
    right = FPModule(jm.jet, right.ngens, right.matrix)
    return CanonicalMap("base_change_II", _identity_hom(left.module, right), left, right)


def base_change_III(M: FPModule, params: Sequence[str], W: FPModule, N: int) -> CanonicalMap:
    """alpha_{M,W}: J^N(M (x)_A W / A') -> J^N(M/A) (x)_A W, W a module over A'."""
    A2 = W.ring
    B = M.ring
    BA = B.tensor(A2)
    MW = tensor_modules(M.over(BA), W.over(BA))
    left = JetModule(MW, N, A2.variables)
    jm = JetModule(M, N, params)
    ring = jm.jet.tensor(A2)
    right = tensor_modules(jm.module.over(ring), W.over(ring))
    right = FPModule(ring, right.ngens, right.matrix)
    return CanonicalMap("base_change_III", _identity_hom(left.module, right), left, right)


def tensor_theta(M: FPModule, W: FPModule, N: int, over: Sequence[str] = ()) -> CanonicalMap:
    """theta: J^N(M (x)_A W) -> J^N(M) (x)_{J^N(A)} J^N(W)."""
    left = JetModule(M.tensor(W), N, over)
    jm = JetModule(M, N, over, jet=left.jet)
    jw = JetModule(W, N, over, jet=left.jet)
    right = jm.module.tensor(jw.module)
    return CanonicalMap("tensor", _identity_hom(left.module, right), left, right)


def exterior_gamma(A: AlgebraPresentation, B: AlgebraPresentation, N: int) -> Tuple[CanonicalMap, CanonicalMap]:
    """The sandwich J^{2N}(A(x)B) ->> J^N(A) (x) J^N(B) ->> J^N(A(x)B) (identity on names)."""
    if set(A.variables) & set(B.variables):
        raise DomainError("exterior products need disjoint variable sets")
    AB = A.tensor(B)
    middle = JetAlgebra(A, N).tensor(JetAlgebra(B, N))
    top = JetAlgebra(AB, 2 * N)
    bottom = JetAlgebra(AB, N)
    upper = _identity_hom(FPModule.free(top, 1), FPModule.free(middle, 1))
    gamma = _identity_hom(FPModule.free(middle, 1), FPModule.free(bottom, 1))
    return CanonicalMap("exterior_upper", upper, top, middle), CanonicalMap("exterior_gamma", gamma, middle, bottom)


def exterior_gamma_modules(M: FPModule, W: FPModule, N: int) -> Tuple[CanonicalMap, CanonicalMap]:
    """Module version: J^{2N}(M (x)_Q W) ->> J^N(M) (x)_Q J^N(W) ->> J^N(M (x)_Q W)."""
    A, B = M.ring, W.ring
    if set(A.variables) & set(B.variables):
        raise DomainError("exterior products need disjoint variable sets")
    MW = tensor_modules(M, W)
    jm, jw = JetModule(M, N), JetModule(W, N)
    middle = tensor_modules(jm.module, jw.module)
    top = JetModule(MW, 2 * N)
    bottom = JetModule(MW, N)
    middle = FPModule(middle.ring, middle.ngens, middle.matrix)
    upper = _identity_hom(top.module, middle)
    gamma = _identity_hom(middle, bottom.module)
    return CanonicalMap("exterior_upper", upper, top, middle), CanonicalMap("exterior_gamma", gamma, middle, bottom)


def restriction_map(M: FPModule, ideal: Sequence[Poly], N: int, over: Sequence[str] = ()) -> CanonicalMap:
    """p_XY: J^N_X(M) ->> J^N_Y(M) for an A/I-module M (reduction mod the ideal of Y)."""
    A = M.ring
    Y = A.quotient(ideal)
    left = JetModule(M, N, over)
    right = JetModule(M.over(Y), N, over)
    return CanonicalMap("restriction", _identity_hom(left.module, right.module), left, right)


def cotangent_psi(M: FPModule, ideal: Sequence[Poly]) -> Tuple[ModuleHom, FPModule, FPModule]:
    """psi_M: I M / I^2 M -> J^(1)(M)|_E, f m |-> class of 1 (x) f m.

    Returns (psi, source presentation over A, restricted first-order jet module).
    The source is presented on generators f_k e_j.
    """
    A = M.ring
    ideal = [A.poly(f) for f in ideal]
    sq = [f * g for i, f in enumerate(ideal) for g in ideal[i:]]
    m2 = M.with_relations([[f if k == j else A.zero() for k in range(M.ngens)] for f in sq for j in range(M.ngens)])
    gens = [(f, j) for f in ideal for j in range(M.ngens)]
    vecs = [[f if k == j else A.zero() for k in range(M.ngens)] for f, j in gens]
    src = span_presentation(m2, vecs, A.variables)
    jm = JetModule(M, 1)
    restricted = jm.module.with_relations([[jm.jet.p1(f) if k == j else jm.jet.zero() for k in range(M.ngens)] for f in ideal for j in range(M.ngens)])
    images = []
    for f, j in gens:
        v = [jm.jet.zero()] * M.ngens
        v[j] = jm.jet.p2(f)
        images.append(v)
    psi = ModuleHom(src, restricted, images, jm.jet.p1_map)
    return psi, src, restricted


def canonical_map(kind: str, **data):
    """Dispatch by name: base_change_0/I/II/III, tensor, exterior, restriction, cotangent, factorization."""
    table = {
        "base_change_0": base_change_0,
        "base_change_I": base_change_I,
        "base_change_II": base_change_II,
        "base_change_III": base_change_III,
        "tensor": tensor_theta,
        "exterior": exterior_gamma,
        "exterior_modules": exterior_gamma_modules,
        "restriction": restriction_map,
        "cotangent": cotangent_psi,
        "factorization": solve_universal_factorization,
    }
    if kind not in table:
        raise DomainError(f"unknown canonical map {kind!r}")
    try:
        return table[kind](**data)
    except TypeError as exc:
        raise DomainError(f"data does not match kind {kind!r}: {exc}") from None
