"""Finitely presented algebras and modules over Q.

Module elements are coefficient vectors (lists of ``Poly``). Submodule arithmetic
is done with position variables: a vector ``(v_1, .., v_r)`` becomes the polynomial
``sum v_j * _e<j>`` and Buchberger runs with S-pairs of position degree >= 2
discarded.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .groebner import (
    INFINITE,
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    standard_monomials,
)
from .polycore import DomainError, Poly

Vector = List[Poly]
Matrix = List[List[Poly]]


class InvariantViolation(AssertionError):
    """An internal consistency check failed."""


def _pos_names(r: int, tag: str = "_e") -> Tuple[str, ...]:
    return tuple(f"{tag}{j}" for j in range(r))


def _pos_degree_at_least_two(npos_start: int):
    def truncate(m):
        return sum(m[npos_start:]) >= 2

    return truncate


class AlgebraPresentation:
    """A = Q[variables] / (relations), with a cached degrevlex Groebner basis."""

    def __init__(self, variables: Sequence[str], relations: Sequence[Poly] = (), name: str | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise DomainError("repeated variable")
        for v in self.variables:
            if v.startswith("_"):
                raise DomainError(f"variable names may not start with '_': {v!r}")
        rels = []
        for f in relations:
            if isinstance(f, (int, Fraction)):
                f = Poly.const(f, self.variables)
            bad = set(f.used_vars()) - set(self.variables)
            if bad:
                raise DomainError(f"relation uses unknown variables {sorted(bad)}")
            f = f.embed(self.variables)
            if f.terms:
                rels.append(f)
        self.relations = tuple(rels)
        self.name = name

    # -- basics ---------------------------------------------------------------

    @cached_property
    def order(self) -> MonomialOrder:
        return MonomialOrder.degrevlex(self.variables)

    @cached_property
    def gb(self) -> GroebnerBasis:
        return buchberger(self.relations, self.order)

    def __repr__(self):
        rels = ", ".join(str(f) for f in self.relations)
        return f"Q[{', '.join(self.variables)}]/({rels})"

    def poly(self, p) -> Poly:
        if isinstance(p, (int, Fraction)):
            return Poly.const(p, self.variables)
        return p.embed(self.variables)

    def var(self, name: str) -> Poly:
        return Poly.var(name, self.variables)

    def one(self) -> Poly:
        return Poly.const(1, self.variables)

    def zero(self) -> Poly:
        return Poly.zero(self.variables)

    def normal_form(self, p) -> Poly:
        return self.gb.normal_form(self.poly(p))

    def contains(self, p) -> bool:
        """Ideal membership: p == 0 in A."""
        return self.gb.contains(self.poly(p))

    def is_zero_ring(self) -> bool:
        return self.gb.is_unit()

    def dimension(self):
        return self.gb.quotient_dimension()

    def staircase(self):
        return self.gb.staircase()

    # -- constructions --------------------------------------------------------

    def quotient(self, extra: Sequence[Poly]) -> "AlgebraPresentation":
        return AlgebraPresentation(self.variables, list(self.relations) + [self.poly(f) for f in extra])

    def with_variables(self, more: Sequence[str], relations: Sequence[Poly] = ()) -> "AlgebraPresentation":
        vars = self.variables + tuple(v for v in more if v not in self.variables)
        return AlgebraPresentation(vars, [f.embed(vars) for f in self.relations] + [f.embed(vars) for f in relations])

    def tensor(self, other: "AlgebraPresentation") -> "AlgebraPresentation":
        """Tensor product amalgamated over the shared variables (their relations are unioned)."""
        vars = self.variables + tuple(v for v in other.variables if v not in self.variables)
        rels = [f.embed(vars) for f in self.relations]
        for f in other.relations:
            f = f.embed(vars)
            if f not in rels:
                rels.append(f)
        return AlgebraPresentation(vars, rels)

    def specialize(self, point: Mapping[str, object]) -> "AlgebraPresentation":
        for v in point:
            if v not in self.variables:
                raise DomainError(f"cannot specialize unknown variable {v!r}")
        rest = tuple(v for v in self.variables if v not in point)
        return AlgebraPresentation(rest, [f.subs(point).embed(rest) for f in self.relations])

    def fiber_dimension(self, point: Mapping[str, object]):
        return self.specialize(point).dimension()

    def same_ideal(self, gens: Sequence[Poly]) -> bool:
        other = AlgebraPresentation(self.variables, gens)
        return all(other.contains(f) for f in self.relations) and all(self.contains(g) for g in gens)


# -- modules ---------------------------------------------------------------------


class FPModule:
    """Cokernel of ``matrix`` (rows = relations, columns = generators) over ``ring``."""

    def __init__(self, ring: AlgebraPresentation, ngens: int, matrix: Sequence[Sequence] = ()):
        self.ring = ring
        self.ngens = int(ngens)
        rows = []
        for row in matrix:
            if len(row) != self.ngens:
                raise DomainError(f"relation row has {len(row)} entries, expected {self.ngens}")
            row = [ring.normal_form(a) for a in row]
            if any(a.terms for a in row):
                rows.append(row)
        self.matrix = rows

    def __repr__(self):
        body = "; ".join("[" + ", ".join(str(a) for a in row) + "]" for row in self.matrix)
        return f"FPModule(rank {self.ngens} over {self.ring!r}, relations [{body}])"

    @classmethod
    def free(cls, ring: AlgebraPresentation, rank: int) -> "FPModule":
        return cls(ring, rank, [])

    @classmethod
    def cyclic(cls, ring: AlgebraPresentation, ideal: Sequence[Poly]) -> "FPModule":
        return cls(ring, 1, [[ring.poly(f)] for f in ideal])

    # -- vectors --------------------------------------------------------------

    def generator(self, j: int) -> Vector:
        return [self.ring.one() if i == j else self.ring.zero() for i in range(self.ngens)]

    def vector(self, entries: Sequence) -> Vector:
        if len(entries) != self.ngens:
            raise DomainError("vector length mismatch")
        return [self.ring.poly(a) for a in entries]

    @cached_property
    def _pos(self):
        return _pos_names(self.ngens)

    @cached_property
    def _order(self) -> MonomialOrder:
        return MonomialOrder.block(self.ring.variables, self._pos)

    def _encode(self, vec: Sequence[Poly]) -> Poly:
        vars = self._order.variables
        out = Poly.zero(vars)
        for j, a in enumerate(vec):
            a = self.ring.poly(a)
            if a.terms:
                out = out + a.embed(vars) * Poly.var(self._pos[j], vars)
        return out

    def _decode(self, p: Poly) -> Vector:
        vec = [self.ring.zero() for _ in range(self.ngens)]
        groups = p.coefficients_in(self._pos)
        for exps, c in groups.items():
            if sum(exps) != 1:
                raise InvariantViolation("non-linear term in module element")
            vec[exps.index(1)] = c.embed(self.ring.variables)
        return vec

    @cached_property
    def gb(self) -> GroebnerBasis:
        n = len(self.ring.variables)
        gens = [self._encode(row) for row in self.matrix]
        return buchberger(
            gens,
            self._order,
            base=self.ring.gb.generators,
            truncate=_pos_degree_at_least_two(n),
        )

    def normal_form(self, vec: Sequence) -> Vector:
        return self._decode(self.gb.normal_form(self._encode(vec)))

    def contains(self, vec: Sequence) -> bool:
        """True when ``vec`` lies in the relation submodule (is zero in the module)."""
        return self.gb.contains(self._encode(vec))

    def is_zero_element(self, vec: Sequence) -> bool:
        return self.contains(vec)

    def _slice_lts(self, j: int):
        n = len(self.ring.variables)
        out = []
        for e in self.gb.leading_exponents():
            pos = e[n:]
            if sum(pos) == 0 or (sum(pos) == 1 and pos[j] == 1):
                out.append(e[:n])
        return out

    def basis_monomials(self):
        """Per generator, the standard monomials multiplying it; None if some slice is infinite."""
        out = []
        for j in range(self.ngens):
            st = standard_monomials(self._slice_lts(j), len(self.ring.variables))
            if st is None:
                return None
            out.append(st)
        return out

    def dimension(self):
        total = 0
        for j in range(self.ngens):
            st = standard_monomials(self._slice_lts(j), len(self.ring.variables))
            if st is None:
                return INFINITE
            total += len(st)
        return total

    def is_zero(self) -> bool:
        return self.dimension() == 0

    # -- constructions --------------------------------------------------------

    def specialize(self, point: Mapping[str, object]) -> "FPModule":
        ring = self.ring.specialize(point)
        rows = [[a.subs(point).embed(ring.variables) for a in row] for row in self.matrix]
        return FPModule(ring, self.ngens, rows)

    def fiber_dimension(self, point: Mapping[str, object]):
        return self.specialize(point).dimension()

    def over(self, ring: AlgebraPresentation) -> "FPModule":
        """The same presentation read over a ring whose variables contain ours (scalar extension)."""
        return FPModule(ring, self.ngens, [[a.embed(ring.variables) for a in row] for row in self.matrix])

    def with_relations(self, rows: Sequence[Sequence]) -> "FPModule":
        return FPModule(self.ring, self.ngens, list(self.matrix) + [list(r) for r in rows])

    def direct_sum(self, other: "FPModule") -> "FPModule":
        if other.ring.variables != self.ring.variables:
            raise DomainError("direct sum needs a common ring")
        z = self.ring.zero()
        rows = [list(r) + [z] * other.ngens for r in self.matrix]
        rows += [[z] * self.ngens + list(r) for r in other.matrix]
        return FPModule(self.ring, self.ngens + other.ngens, rows)

    def tensor(self, other: "FPModule") -> "FPModule":
        """Tensor product over the common ring; generator (i, k) has index i * other.ngens + k."""
        if other.ring.variables != self.ring.variables:
            raise DomainError("tensor product needs a common ring")
        a, b = self.ngens, other.ngens
        z = self.ring.zero()
        rows = []
        for r in self.matrix:
            for k in range(b):
                row = [z] * (a * b)
                for i in range(a):
                    row[i * b + k] = r[i]
                rows.append(row)
        for r in other.matrix:
            for i in range(a):
                row = [z] * (a * b)
                for k in range(b):
                    row[i * b + k] = r[k]
                rows.append(row)
        return FPModule(self.ring, a * b, rows)

    def annihilator(self) -> List[Poly]:
        """Generators of ann(M): read off for cyclic modules, the last invariant factor over Q[t]."""
        if self.ngens == 1:
            return [row[0] for row in self.matrix]
        if len(self.ring.variables) != 1 or self.ring.relations:
            raise DomainError("annihilators need a cyclic module or a module over Q[t]")
        t = self.ring.variables[0]
        if not self.matrix:
            return []
        snf = smith_normal_form(self.matrix, t)
        if snf.rank < self.ngens:
            return []
        return [snf.invariants[-1].embed(self.ring.variables)]


def tensor_modules(m: FPModule, w: FPModule) -> FPModule:
    """Tensor product of modules living on rings that are amalgamated by shared variables."""
    ring = m.ring.tensor(w.ring)
    return m.over(ring).tensor(w.over(ring))


# -- maps ------------------------------------------------------------------------


class RingMap:
    """Algebra map source -> target given by the image of every source variable."""

    def __init__(self, source: AlgebraPresentation, target: AlgebraPresentation, images: Mapping[str, Poly] | None = None, check: bool = True):
        self.source = source
        self.target = target
        imgs = {}
        for v in source.variables:
            if images is not None and v in images:
                img = images[v]
            elif v in target.variables:
                img = target.var(v)
            else:
                raise DomainError(f"no image for variable {v!r}")
            imgs[v] = target.poly(img) if isinstance(img, Poly) else Poly.const(img, target.variables)
        self.images = imgs
        if check:
            for f in source.relations:
                if not target.contains(self(f)):
                    raise InvariantViolation(f"relation {f} does not map to zero")

    @classmethod
    def identity_on_names(cls, source, target, check=True):
        return cls(source, target, None, check)

    def __call__(self, p: Poly) -> Poly:
        p = self.source.poly(p)
        return p.subs(self.images, vars=self.target.variables)

    def apply_reduced(self, p: Poly) -> Poly:
        return self.target.normal_form(self(p))

    def compose(self, first: "RingMap") -> "RingMap":
        """self after first."""
        return RingMap(first.source, self.target, {v: self(first.images[v]) for v in first.source.variables})

    def is_surjective(self) -> bool:
        """Subalgebra membership of every target variable, by elimination."""
        tags = tuple(f"_t{i}" for i in range(len(self.source.variables)))
        order = MonomialOrder.block(self.target.variables, tags)
        vars = order.variables
        gens = [f.embed(vars) for f in self.target.relations]
        for t, v in zip(tags, self.source.variables):
            gens.append(Poly.var(t, vars) - self.images[v].embed(vars))
        gb = buchberger(gens, order)
        n = len(self.target.variables)
        for v in self.target.variables:
            r = gb.normal_form(Poly.var(v, vars))
            if any(any(e[:n]) for e in r.terms):
                return False
        return True


class ModuleHom:
    """Homomorphism source -> target sending generator j to ``images[j]``.

    Linear over ``ring_map`` (default: identity on variable names) from the source
    ring to the target ring.
    """

    def __init__(self, source: FPModule, target: FPModule, images: Sequence[Sequence], ring_map: RingMap | None = None):
        if len(images) != source.ngens:
            raise DomainError("one image per source generator required")
        self.source = source
        self.target = target
        self.ring_map = ring_map or RingMap(source.ring, target.ring, check=False)
        self.images = [target.vector(v) for v in images]

    def apply(self, vec: Sequence) -> Vector:
        vec = self.source.vector(vec)
        out = [self.target.ring.zero() for _ in range(self.target.ngens)]
        for a, img in zip(vec, self.images):
            if not a.terms:
                continue
            fa = self.ring_map(a)
            out = [o + fa * b for o, b in zip(out, img)]
        return [self.target.ring.normal_form(o) for o in out]

    def is_well_defined(self) -> bool:
        return all(self.target.contains(self.apply(row)) for row in self.source.matrix)

    def is_surjective(self) -> bool:
        """Every target generator lies in the image (assumes the ring map is onto)."""
        span = self.target.with_relations(self.images)
        return all(span.contains(self.target.generator(j)) for j in range(self.target.ngens))

    def compose(self, first: "ModuleHom") -> "ModuleHom":
        """self after first."""
        return ModuleHom(first.source, self.target, [self.apply(v) for v in first.images], self.ring_map.compose(first.ring_map))

    def is_zero(self) -> bool:
        return all(self.target.contains(v) for v in self.images)

    def image(self) -> "FPModule":
        """The image as a module over the target ring (via span_presentation)."""
        return span_presentation(self.target, self.images, self.target.ring.variables)

    def cokernel(self) -> FPModule:
        return self.target.with_relations(self.images)


def span_presentation(module: FPModule, vectors: Sequence[Sequence], sub_vars: Sequence[str]) -> FPModule:
    """Present the Q[sub_vars]-submodule of ``module`` spanned by ``vectors``.

    Returns an FPModule with one generator per vector over the subring
    Q[sub_vars] / (relations of the ring meeting Q[sub_vars]). Computed by
    elimination with a block order (other ring variables and positions first).
    """
    ring = module.ring
    sub_vars = tuple(sub_vars)
    for v in sub_vars:
        if v not in ring.variables:
            raise DomainError(f"unknown subring variable {v!r}")
    others = tuple(v for v in ring.variables if v not in sub_vars)
    pos = module._pos
    tags = _pos_names(len(vectors), "_s")
    order = MonomialOrder.block(others + pos, sub_vars + tags)
    vars = order.variables
    gens = [f.embed(vars) for f in ring.relations]
    for row in module.matrix:
        gens.append(module._encode(row).embed(vars))
    for t, v in zip(tags, vectors):
        gens.append(Poly.var(t, vars) - module._encode(module.vector(v)).embed(vars))
    lin = set(pos + tags)
    idx = [vars.index(v) for v in lin]

    def truncate(m):
        return sum(m[i] for i in idx) >= 2

    gb = buchberger(gens, order, truncate=truncate)
    drop = set(vars.index(v) for v in others + pos)
    sub_ring_vars = sub_vars
    ring_rels = []
    rows = []
    tag_idx = [vars.index(t) for t in tags]
    for g in gb.generators:
        if any(e[i] for e in g.terms for i in drop):
            continue
        deg = {sum(e[i] for i in tag_idx) for e in g.terms}
        if deg == {0}:
            ring_rels.append(g.embed(sub_ring_vars + tags).embed(sub_ring_vars))
        else:
            lin_part = Poly._raw({e: c for e, c in g.terms.items() if sum(e[i] for i in tag_idx) == 1}, vars)
            groups = lin_part.coefficients_in(tags)
            row = [Poly.zero(sub_ring_vars) for _ in tags]
            for exps, c in groups.items():
                row[exps.index(1)] = c.embed(sub_ring_vars + tags).embed(sub_ring_vars)
            rows.append(row)
    subring = AlgebraPresentation(sub_ring_vars, ring_rels)
    return FPModule(subring, len(vectors), rows)


def fiber_dimension(obj, point: Mapping[str, object]):
    """Q-dimension of an algebra or module after substituting ``point``; INFINITE if not finite."""
    return obj.fiber_dimension(point)


def random_point(variables: Sequence[str], rng: random.Random, avoid: Sequence[Poly] = (), lo: int = -5, hi: int = 5, tries: int = 200) -> Dict[str, Fraction]:
    """A rational point with the given ``avoid`` polynomials nonzero."""
    for _ in range(tries):
        pt = {v: Fraction(rng.randint(lo, hi)) for v in variables}
        if all(f.subs(pt).terms for f in avoid):
            return pt
    raise DomainError("could not find a point avoiding the given polynomials")


# -- univariate algebra, Smith normal form ----------------------------------------


def _univariate_var(entries) -> str | None:
    name = None
    for p in entries:
        for v in p.used_vars():
            if name is None:
                name = v
            elif v != name:
                raise DomainError("entries are not univariate")
    return name


def _udeg(p: Poly) -> int:
    return p.degree()


def _ulc(p: Poly) -> Fraction:
    e = max(p.terms, key=sum)
    return p.terms[e]


def udivmod(a: Poly, b: Poly, t: str) -> Tuple[Poly, Poly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    vars = (t,)
    a, b = a.embed(vars), b.embed(vars)
    q = Poly.zero(vars)
    r = a
    db, lb = _udeg(b), _ulc(b)
    while r.terms and _udeg(r) >= db:
        k = _udeg(r) - db
        term = Poly({(k,): _ulc(r) / lb}, vars)
        q = q + term
        r = r - term * b
    return q, r


def monic(p: Poly) -> Poly:
    if p.is_zero():
        return p
    return p / _ulc(p)


def ugcd(a: Poly, b: Poly, t: str) -> Poly:
    a, b = a.embed((t,)), b.embed((t,))
    while b.terms:
        a, b = b, udivmod(a, b, t)[1]
    return monic(a)


class SmithForm:
    """U * mat * V = diag(invariants); ``V_inv`` is V's inverse."""

    def __init__(self, invariants, diag, U, V, V_inv, variable):
        self.invariants = invariants
        self.diag = diag
        self.U = U
        self.V = V
        self.V_inv = V_inv
        self.variable = variable

    @property
    def rank(self) -> int:
        return len(self.invariants)


def _ident(n, vars):
    return [[Poly.const(1 if i == j else 0, vars) for j in range(n)] for i in range(n)]


def smith_normal_form(mat: Sequence[Sequence[Poly]], variable: str | None = None) -> SmithForm:
    """Smith normal form over Q[t] with unimodular transforms.

    Returns monic invariant factors d_1 | d_2 | ... (nonzero ones only).
    """
    rows = [list(r) for r in mat]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    t = variable or _univariate_var([a for r in rows for a in r]) or "t"
    vars = (t,)
    D = [[a.embed(vars) if isinstance(a, Poly) else Poly.const(a, vars) for a in r] for r in rows]
    U = _ident(m, vars)
    V = _ident(n, vars)
    Vi = _ident(n, vars)

    def row_op(dst, src, q):  # row_dst -= q * row_src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def col_op(dst, src, q):  # col_dst -= q * col_src
        for r in D:
            r[dst] = r[dst] - q * r[src]
        for r in V:
            r[dst] = r[dst] - q * r[src]
        # inverse: row_src of Vi += q * row_dst
        Vi[src] = [a + q * b for a, b in zip(Vi[src], Vi[dst])]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    k = 0
    while k < min(m, n):
        cands = [(D[i][j].degree(), i, j) for i in range(k, m) for j in range(k, n) if D[i][j].terms]
        if not cands:
            break
        _, pi, pj = min(cands)
        swap_rows(k, pi)
        swap_cols(k, pj)
        while True:
            done = True
            for i in range(k + 1, m):
                if D[i][k].terms:
                    q, r = udivmod(D[i][k], D[k][k], t)
                    row_op(i, k, q)
                    if r.terms:
                        swap_rows(k, i)
                        done = False
            for j in range(k + 1, n):
                if D[k][j].terms:
                    q, r = udivmod(D[k][j], D[k][k], t)
                    col_op(j, k, q)
                    if r.terms:
                        swap_cols(k, j)
                        done = False
            if not done:
                continue
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if D[i][j].terms and udivmod(D[i][j], D[k][k], t)[1].terms:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # pull the offending row into row k; next pass shrinks the pivot degree
            D[k] = [a + b for a, b in zip(D[k], D[bad])]
            U[k] = [a + b for a, b in zip(U[k], U[bad])]
        lc = _ulc(D[k][k])
        if lc != 1:
            D[k] = [a / lc for a in D[k]]
            U[k] = [a / lc for a in U[k]]
        k += 1
    invariants = [D[i][i] for i in range(min(m, n)) if D[i][i].terms]
    return SmithForm(invariants, D, U, V, Vi, t)


def determinant(mat: Sequence[Sequence[Poly]]) -> Poly:
    n = len(mat)
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return mat[0][0]
    total = None
    for j in range(n):
        if not mat[0][j].terms:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else mat[0][0] * 0


def minors(mat: Sequence[Sequence[Poly]], size: int) -> List[Poly]:
    m = len(mat)
    n = len(mat[0]) if m else 0
    out = []
    for rs in combinations(range(m), size):
        for cs in combinations(range(n), size):
            out.append(determinant([[mat[i][j] for j in cs] for i in rs]))
    return out


def torsion_filtration(module: FPModule):
    """For a module over Q[t]: (torsion generators, free rank, invariant factors of the torsion).

    The torsion generators are vectors in the module's generator coordinates.
    """
    ring = module.ring
    if len(ring.variables) != 1 or ring.relations:
        raise DomainError("torsion filtration needs the polynomial ring Q[t]")
    t = ring.variables[0]
    if not module.matrix:
        return [], module.ngens, []
    snf = smith_normal_form(module.matrix, t)
    gens, factors = [], []
    for i, d in enumerate(snf.invariants):
        if d.degree() >= 1:
            gens.append([a.embed(ring.variables) for a in snf.V_inv[i]])
            factors.append(d.embed(ring.variables))
    free_rank = module.ngens - snf.rank
    return gens, free_rank, factors


def is_torsion_element(module: FPModule, vec: Sequence[Poly], snf: SmithForm | None = None) -> bool:
    """Torsion test via SNF coordinates: the free coordinates of vec * V vanish."""
    t = module.ring.variables[0]
    if not module.matrix:
        return all(not module.ring.poly(a).terms for a in vec)
    snf = snf or smith_normal_form(module.matrix, t)
    vars = (t,)
    vec = [module.ring.poly(a).embed(vars) for a in vec]
    n = module.ngens
    for j in range(snf.rank, n):
        coord = Poly.zero(vars)
        for i in range(n):
            coord = coord + vec[i] * snf.V[i][j]
        if coord.terms:
            return False
    return True


def jacobian_smooth(a: AlgebraPresentation, relative_dim: int, over: Sequence[str] = ()):
    """Jacobian criterion: (minors of size #vars - relative_dim) + relations == (1).

    Differentiation is only along variables not in ``over``. Returns (smooth, witness generators).
    """
    xs = [v for v in a.variables if v not in set(over)]
    size = len(xs) - relative_dim
    rels = list(a.relations)
    if size < 0 or size > len(rels) and size > 0:
        raise DomainError(f"minor size {size} does not fit a {len(rels)}x{len(xs)} Jacobian")
    if size == 0:
        witness = [a.one()]
    else:
        jac = [[f.partial_derivative(x) for x in xs] for f in rels]
        witness = [m for m in minors(jac, size) if m.terms] + rels
    if not witness:
        return False, []
    ideal = AlgebraPresentation(a.variables, witness)
    return ideal.is_zero_ring(), witness
