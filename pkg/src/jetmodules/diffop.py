"""Linear differential operators sum_I a_I d^I between free modules, and jet homomorphisms.

An operator of order <= N corresponds to a p1-linear map H: J^N(A^m1) -> A^m2 with
H(dx^I e_j) = I! * (column j of a_I); this is the bridge used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .jetcore import JetAlgebra
from .polycore import DomainError, Poly, multi_factorial, multi_indices
from .presentations import AlgebraPresentation, FPModule, span_presentation

Index = Tuple[int, ...]
Matrix = List[List[Poly]]


class FactorizationError(ArithmeticError):
    """A map does not factor through the requested jet module."""


def _zero_matrix(ring, rows, cols) -> Matrix:
    return [[ring.zero() for _ in range(cols)] for _ in range(rows)]


def _is_zero_matrix(mat: Matrix) -> bool:
    return all(not a.terms for row in mat for a in row)


def _binom_multi(J: Index, I: Index) -> int:
    out = 1
    for j, i in zip(J, I):
        out *= comb(j, i)
    return out


def _leq(I: Index, J: Index) -> bool:
    return all(i <= j for i, j in zip(I, J))


class DiffOperator:
    """sum_I a_I * d^I with a_I an (m2 x m1) matrix over ``ring``.

    ``dvars`` lists the variables being differentiated (default: all of them);
    the rest act as parameters, giving operators relative to the parameter ring.
    """

    def __init__(self, ring: AlgebraPresentation, m1: int, m2: int, coeffs: Mapping[Index, Sequence[Sequence]] = (), dvars: Sequence[str] | None = None):
        self.ring = ring
        self.m1, self.m2 = int(m1), int(m2)
        self.dvars = tuple(ring.variables if dvars is None else dvars)
        for v in self.dvars:
            if v not in ring.variables:
                raise DomainError(f"unknown variable {v!r}")
        table: Dict[Index, Matrix] = {}
        for I, mat in dict(coeffs).items():
            I = tuple(I)
            if len(I) != len(self.dvars) or any(k < 0 for k in I):
                raise DomainError(f"bad multi-index {I}")
            if len(mat) != self.m2 or any(len(r) != self.m1 for r in mat):
                raise DomainError("coefficient matrix has the wrong shape")
            mat = [[ring.normal_form(a) for a in r] for r in mat]
            if not _is_zero_matrix(mat):
                table[I] = mat
        self.coeffs = table

    # -- constructors -----------------------------------------------------------

    @classmethod
    def scalar(cls, ring, coeffs: Mapping[Index, object], dvars=None) -> "DiffOperator":
        return cls(ring, 1, 1, {I: [[ring.poly(a)]] for I, a in coeffs.items()}, dvars)

    @classmethod
    def partial(cls, ring, var: str, k: int = 1, dvars=None) -> "DiffOperator":
        dvars = tuple(ring.variables if dvars is None else dvars)
        I = tuple(k if v == var else 0 for v in dvars)
        return cls.scalar(ring, {I: 1}, dvars)

    @classmethod
    def multiplication(cls, ring, g, dvars=None) -> "DiffOperator":
        dvars = tuple(ring.variables if dvars is None else dvars)
        return cls.scalar(ring, {(0,) * len(dvars): g}, dvars)

    @classmethod
    def identity(cls, ring, m: int = 1, dvars=None) -> "DiffOperator":
        dvars = tuple(ring.variables if dvars is None else dvars)
        mat = [[ring.one() if i == j else ring.zero() for j in range(m)] for i in range(m)]
        return cls(ring, m, m, {(0,) * len(dvars): mat}, dvars)

    @classmethod
    def zero(cls, ring, m1=1, m2=1, dvars=None) -> "DiffOperator":
        return cls(ring, m1, m2, {}, dvars)

    # -- basics -----------------------------------------------------------------

    def order(self) -> int:
        return max((sum(I) for I in self.coeffs), default=0)

    def coefficient(self, I: Index) -> Matrix:
        return self.coeffs.get(tuple(I)) or _zero_matrix(self.ring, self.m2, self.m1)

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return (
            self.ring.variables == other.ring.variables
            and self.dvars == other.dvars
            and (self.m1, self.m2) == (other.m1, other.m2)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.dvars, self.m1, self.m2, tuple(sorted(self.coeffs))))

    def _compatible(self, other):
        if self.ring.variables != other.ring.variables or self.dvars != other.dvars:
            raise DomainError("operators live on different rings")

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        self._compatible(other)
        if (self.m1, self.m2) != (other.m1, other.m2):
            raise DomainError("rank mismatch")
        out = {I: [r[:] for r in m] for I, m in self.coeffs.items()}
        for I, m in other.coeffs.items():
            if I in out:
                out[I] = [[a + b for a, b in zip(r, s)] for r, s in zip(out[I], m)]
            else:
                out[I] = m
        return DiffOperator(self.ring, self.m1, self.m2, out, self.dvars)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffOperator":
        c = self.ring.poly(c)
        return DiffOperator(self.ring, self.m1, self.m2, {I: [[c * a for a in r] for r in m] for I, m in self.coeffs.items()}, self.dvars)

    def __repr__(self):
        return f"DiffOperator({self})"

    def __str__(self):
        return format_operator(self)

    # -- action -----------------------------------------------------------------

    def apply(self, v: Sequence) -> List[Poly]:
        if self.m1 == 1 and not isinstance(v, (list, tuple)):
            v = [v]
        if len(v) != self.m1:
            raise DomainError(f"vector of length {len(v)} given to an operator on rank {self.m1}")
        v = [self.ring.poly(a) for a in v]
        out = [self.ring.zero() for _ in range(self.m2)]
        for I, mat in self.coeffs.items():
            dv = [a.derivative(dict(zip(self.dvars, I))) for a in v]
            for i in range(self.m2):
                for j in range(self.m1):
                    if mat[i][j].terms and dv[j].terms:
                        out[i] = out[i] + mat[i][j] * dv[j]
        return [self.ring.normal_form(a) for a in out]

    __call__ = apply

    def compose(self, other: "DiffOperator") -> "DiffOperator":
        """self o other, by the Leibniz rule."""
        self._compatible(other)
        if other.m2 != self.m1:
            raise DomainError("rank mismatch in composition")
        out: Dict[Index, Matrix] = {}
        for I, A in self.coeffs.items():
            for J, B in other.coeffs.items():
                for K in multi_indices(len(I), sum(I)):
                    if not _leq(K, I):
                        continue
                    c = _binom_multi(I, K)
                    dB = [[b.derivative(dict(zip(self.dvars, K))) for b in r] for r in B]
                    if _is_zero_matrix(dB):
                        continue
                    L = tuple(i - k + j for i, k, j in zip(I, K, J))
                    prod = _zero_matrix(self.ring, self.m2, other.m1)
                    for r in range(self.m2):
                        for s in range(other.m1):
                            acc = self.ring.zero()
                            for t in range(self.m1):
                                if A[r][t].terms and dB[t][s].terms:
                                    acc = acc + A[r][t] * dB[t][s]
                            prod[r][s] = acc * c
                    if L in out:
                        out[L] = [[a + b for a, b in zip(x, y)] for x, y in zip(out[L], prod)]
                    else:
                        out[L] = prod
        return DiffOperator(self.ring, other.m1, self.m2, out, self.dvars)

    def __mul__(self, other):
        if isinstance(other, DiffOperator):
            return self.compose(other)
        return self.scale(other)

    def direct_sum(self, other: "DiffOperator") -> "DiffOperator":
        self._compatible(other)
        keys = set(self.coeffs) | set(other.coeffs)
        out = {}
        for I in keys:
            A, B = self.coefficient(I), other.coefficient(I)
            mat = _zero_matrix(self.ring, self.m2 + other.m2, self.m1 + other.m1)
            for i in range(self.m2):
                for j in range(self.m1):
                    mat[i][j] = A[i][j]
            for i in range(other.m2):
                for j in range(other.m1):
                    mat[self.m2 + i][self.m1 + j] = B[i][j]
            out[I] = mat
        return DiffOperator(self.ring, self.m1 + other.m1, self.m2 + other.m2, out, self.dvars)

    def is_well_defined(self, probe_degree: int = 2) -> bool:
        """On a quotient ring: D maps (relation ideal) * A^m1 into the relation ideal on probes."""
        R = self.ring
        if not R.relations:
            return True
        for f in R.relations:
            for mono in multi_indices(len(R.variables), probe_degree):
                m = Poly.monomial(dict(zip(R.variables, mono)), R.variables)
                for j in range(self.m1):
                    v = [f * m if k == j else R.zero() for k in range(self.m1)]
                    if any(a.terms for a in self.apply(v)):
                        return False
        return True


# -- printing ---------------------------------------------------------------------


def _partial_str(dvars, I) -> str:
    parts = []
    for v, k in zip(dvars, I):
        if k == 1:
            parts.append(f"d({v})")
        elif k > 1:
            parts.append(f"d({v})^{k}")
    return "*".join(parts)


def _op_index_key(I):
    return (sum(I), tuple(I))


def format_operator(op: DiffOperator) -> str:
    """Canonical text for a scalar operator, e.g. ``x*d(x)^2 + d(x)``."""
    if (op.m1, op.m2) != (1, 1):
        rows = []
        for I in sorted(op.coeffs, key=_op_index_key, reverse=True):
            rows.append(f"{_partial_str(op.dvars, I) or '1'}: " + str([[str(a) for a in r] for r in op.coeffs[I]]))
        return "{" + "; ".join(rows) + "}"
    if not op.coeffs:
        return "0"
    pieces = []
    for I in sorted(op.coeffs, key=_op_index_key, reverse=True):
        a = op.coeffs[I][0][0]
        ds = _partial_str(op.dvars, I)
        if not ds:
            txt = str(a)
        elif a == 1:
            txt = ds
        elif a == -1:
            txt = "-" + ds
        elif len(a.terms) == 1:
            txt = f"{a}*{ds}"
        else:
            txt = f"({a})*{ds}"
        pieces.append(txt)
    out = pieces[0]
    for p in pieces[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# -- jet homomorphisms ------------------------------------------------------------


class JetHom:
    """A p1-linear map J^N(A^m1) -> target with values on the generators dx^I e_j."""

    def __init__(self, jet: JetAlgebra, m1: int, m2: int, values: Mapping[Tuple[Index, int], Sequence], target: FPModule | None = None):
        self.jet = jet
        self.base = jet.base
        self.m1, self.m2 = int(m1), int(m2)
        self.target = target if target is not None else FPModule.free(self.base, self.m2)
        if self.target.ngens != self.m2:
            raise DomainError("target rank mismatch")
        n = len(jet.jet_vars)
        vals = {}
        for (I, j), vec in dict(values).items():
            I = tuple(I)
            if len(I) != n or sum(I) > jet.N:
                raise DomainError(f"multi-index {I} is outside J^{jet.N}")
            if not 0 <= j < self.m1:
                raise DomainError("generator index out of range")
            vec = self.target.normal_form(self.target.vector(vec))
            if any(a.terms for a in vec):
                vals[(I, j)] = vec
        self.values = vals

    @property
    def N(self):
        return self.jet.N

    def value(self, I: Index, j: int = 0) -> List[Poly]:
        return self.values.get((tuple(I), j)) or [self.base.zero() for _ in range(self.m2)]

    def __eq__(self, other):
        if not isinstance(other, JetHom):
            return NotImplemented
        return self.jet.variables == other.jet.variables and self.N == other.N and self.values == other.values

    def __repr__(self):
        items = ", ".join(f"{I},{j}: [{', '.join(map(str, v))}]" for (I, j), v in sorted(self.values.items()))
        return f"JetHom(N={self.N}, {{{items}}})"

    def apply(self, w: Sequence) -> List[Poly]:
        """Evaluate on an element of J^N(A)^m1 given by jet-ring coordinates."""
        if self.m1 == 1 and not isinstance(w, (list, tuple)):
            w = [w]
        if len(w) != self.m1:
            raise DomainError("length mismatch")
        out = [self.base.zero() for _ in range(self.m2)]
        for j, a in enumerate(w):
            for I, c in self.jet.dx_coefficients(self.jet.poly(a)).items():
                val = self.values.get((I, j))
                if val is None:
                    continue
                out = [o + c * b for o, b in zip(out, val)]
        return self.target.normal_form(out)

    __call__ = apply

    def compose_d(self, v: Sequence) -> List[Poly]:
        """H(d^N v)."""
        if self.m1 == 1 and not isinstance(v, (list, tuple)):
            v = [v]
        return self.apply([self.jet.p2(a) for a in v])

    def is_well_defined(self) -> bool:
        """H respects the A-linear relations among the dx^I e_j in J^N(A)^m1."""
        vecs, keys = [], []
        for j in range(self.m1):
            for I in self.jet.dx_indices():
                v = [self.jet.zero()] * self.m1
                v[j] = self.jet.dx_monomial(I)
                vecs.append(v)
                keys.append((I, j))
        pres = span_presentation(FPModule(self.jet, self.m1, []), vecs, self.base.variables)
        for row in pres.matrix:
            acc = [self.base.zero() for _ in range(self.m2)]
            for c, key in zip(row, keys):
                if c.terms:
                    acc = [o + c.embed(self.base.variables) * b for o, b in zip(acc, self.value(*key))]
            if not self.target.contains(acc):
                return False
        return True


def _jet_for(op_ring: AlgebraPresentation, dvars: Sequence[str], N: int) -> JetAlgebra:
    params = [v for v in op_ring.variables if v not in dvars]
    return JetAlgebra(op_ring, N, over=params)


def op_to_hom(d: DiffOperator, N: int | None = None, jet: JetAlgebra | None = None) -> JetHom:
    """H with H(dx^I e_j) = I! * (column j of a_I)."""
    if N is None:
        N = d.order()
    if N < d.order():
        raise DomainError(f"order {d.order()} operator does not factor through J^{N}")
    jet = jet or _jet_for(d.ring, d.dvars, N)
    if jet.shifted != d.dvars:
        raise DomainError("jet algebra does not match the operator's variables")
    values = {}
    for I, mat in d.coeffs.items():
        f = multi_factorial(I)
        for j in range(d.m1):
            values[(I, j)] = [mat[i][j] * f for i in range(d.m2)]
    return JetHom(jet, d.m1, d.m2, values)


def hom_to_op(h: JetHom) -> DiffOperator:
    coeffs: Dict[Index, Matrix] = {}
    for (I, j), vec in h.values.items():
        mat = coeffs.setdefault(I, _zero_matrix(h.base, h.m2, h.m1))
        inv = Fraction(1, multi_factorial(I))
        for i in range(h.m2):
            mat[i][j] = vec[i] * inv
    return DiffOperator(h.base, h.m1, h.m2, coeffs, h.jet.shifted)


def factor_through_jets(
    D: Callable[[List[Poly]], Sequence[Poly]],
    ring: AlgebraPresentation,
    m1: int,
    m2: int,
    N: int,
    dvars: Sequence[str] | None = None,
    verify_degree: int | None = None,
    target: FPModule | None = None,
) -> JetHom:
    """Find H: J^N(A^m1) -> A^m2 with D = H o d^N, or raise FactorizationError.

    ``ring`` must be a polynomial ring (no relations). The candidate is forced by
    the values on monomials of degree <= N and then verified on all monomials of
    degree <= N + verify_degree (default 2), in every variable.
    """
    if ring.relations:
        raise DomainError("factorization solving is implemented over polynomial rings")
    dvars = tuple(ring.variables if dvars is None else dvars)
    jet = _jet_for(ring, dvars, N)
    target = target or FPModule.free(ring, m2)
    extra = 2 if verify_degree is None else verify_degree
    idx = [ring.variables.index(v) for v in dvars]

    def mono(J):
        e = {v: k for v, k in zip(dvars, J)}
        return Poly.monomial(e, ring.variables)

    def call(v):
        out = target.vector(list(D(v)))
        if len(out) != m2:
            raise DomainError("map returned a vector of the wrong length")
        return out

    values = {}
    for j in range(m1):
        h: Dict[Index, List[Poly]] = {}
        for J in multi_indices(len(dvars), N):
            v = [mono(J) if k == j else ring.zero() for k in range(m1)]
            acc = call(v)
            for I in list(h):
                if I != J and _leq(I, J):
                    c = _binom_multi(J, I)
                    xm = mono(tuple(a - b for a, b in zip(J, I)))
                    acc = [a - xm * b * c for a, b in zip(acc, h[I])]
            h[J] = target.normal_form(acc)
        for J, vec in h.items():
            values[(J, j)] = vec
    H = JetHom(jet, m1, m2, values, target)
    for e in multi_indices(len(ring.variables), N + extra):
        m = Poly.monomial(dict(zip(ring.variables, e)), ring.variables)
        for j in range(m1):
            v = [m if k == j else ring.zero() for k in range(m1)]
            lhs = call(v)
            rhs = H.compose_d(v)
            if not target.contains([a - b for a, b in zip(lhs, rhs)]):
                raise FactorizationError(f"no factorization through J^{N}: mismatch at {m} e_{j}")
    return H


def do_rank_free(n: int, N: int, m1: int = 1, m2: int = 1) -> int:
    """Rank of DO^N(A^m1, A^m2) over A = Q[x_1..x_n], read off the jet staircase."""
    names = tuple(f"x{i}" for i in range(1, n + 1))
    jet = JetAlgebra(AlgebraPresentation(names), N)
    fiber = jet.fiber_dimension({v: 0 for v in names})
    return fiber * m1 * m2
