"""Buchberger's algorithm, normal forms, staircases and ideal arithmetic."""

from __future__ import annotations

import math
from contextlib import contextmanager
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .polycore import DomainError, Exps, Poly

MAX_PAIRS = 10**5
MAX_DEGREE = 20
_limits = {"max_pairs": MAX_PAIRS, "max_degree": MAX_DEGREE}


@contextmanager
def resource_limits(max_pairs: int | None = None, max_degree: int | None = None):
    """Temporarily tighten (or loosen) the caps used by every Groebner computation."""
    saved = dict(_limits)
    if max_pairs is not None:
        _limits["max_pairs"] = max_pairs
    if max_degree is not None:
        _limits["max_degree"] = max_degree
    try:
        yield
    finally:
        _limits.update(saved)

INFINITE = math.inf


class ResourceError(RuntimeError):
    """A configured resource cap was exceeded; no partial result is kept."""


class MonomialOrder:
    """Total order on exponent vectors over a fixed variable list.

    kinds: ``degrevlex``, ``lex`` and ``block`` (degrevlex inside each block,
    the first block eliminated, i.e. larger than anything in the second).
    """

    def __init__(self, kind: str, variables: Sequence[str], block_sizes: Sequence[int] = ()):
        if kind not in ("degrevlex", "lex", "block"):
            raise DomainError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise DomainError("repeated variable in order")
        self.block_sizes = tuple(block_sizes)
        if kind == "block" and sum(self.block_sizes) != len(self.variables):
            raise DomainError("block sizes do not cover the variables")
        self._cache: Dict[Exps, tuple] = {}

    @classmethod
    def degrevlex(cls, variables):
        return cls("degrevlex", variables)

    @classmethod
    def lex(cls, variables):
        return cls("lex", variables)

    @classmethod
    def block(cls, first: Sequence[str], second: Sequence[str]):
        return cls("block", tuple(first) + tuple(second), (len(first), len(second)))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.variables == other.variables
            and self.block_sizes == other.block_sizes
        )

    def __hash__(self):
        return hash((self.kind, self.variables, self.block_sizes))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {self.variables})"

    def key(self, e: Exps):
        k = self._cache.get(e)
        if k is None:
            if self.kind == "degrevlex":
                k = (sum(e), tuple(-x for x in reversed(e)))
            elif self.kind == "lex":
                k = e
            else:
                parts = []
                start = 0
                for size in self.block_sizes:
                    b = e[start:start + size]
                    parts.append((sum(b), tuple(-x for x in reversed(b))))
                    start += size
                k = tuple(parts)
            self._cache[e] = k
        return k

    def leading(self, p: Poly) -> Tuple[Exps, Fraction]:
        p = p.embed(self.variables)
        e = max(p.terms, key=self.key)
        return e, p.terms[e]

    def format(self, p: Poly) -> str:
        return p.embed(self.variables).to_str(self.key)


# -- low-level helpers on term dicts ---------------------------------------------


def _divides(a: Exps, b: Exps) -> bool:
    for i, j in zip(a, b):
        if i > j:
            return False
    return True


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(i if i > j else j for i, j in zip(a, b))


def _coprime(a: Exps, b: Exps) -> bool:
    for i, j in zip(a, b):
        if i and j:
            return False
    return True


class _Elem:
    __slots__ = ("lt", "terms")

    def __init__(self, terms: Dict[Exps, Fraction], key):
        lt = max(terms, key=key)
        lc = terms[lt]
        if lc != 1:
            terms = {e: c / lc for e, c in terms.items()}
        self.lt = lt
        self.terms = terms


def _reduce(p: Dict[Exps, Fraction], basis: List[_Elem], key, full: bool = True) -> Dict[Exps, Fraction]:
    p = dict(p)
    rem: Dict[Exps, Fraction] = {}
    while p:
        lt = max(p, key=key)
        c = p[lt]
        for g in basis:
            if _divides(g.lt, lt):
                shift = tuple(i - j for i, j in zip(lt, g.lt))
                for e, gc in g.terms.items():
                    ne = tuple(i + j for i, j in zip(e, shift))
                    s = p.get(ne, 0) - c * gc
                    if s:
                        p[ne] = s
                    else:
                        p.pop(ne, None)
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[lt] = c
            del p[lt]
    return rem


def _spoly(f: _Elem, g: _Elem) -> Dict[Exps, Fraction]:
    m = _lcm(f.lt, g.lt)
    sf = tuple(i - j for i, j in zip(m, f.lt))
    sg = tuple(i - j for i, j in zip(m, g.lt))
    out: Dict[Exps, Fraction] = {}
    for e, c in f.terms.items():
        out[tuple(i + j for i, j in zip(e, sf))] = c
    for e, c in g.terms.items():
        ne = tuple(i + j for i, j in zip(e, sg))
        s = out.get(ne, 0) - c
        if s:
            out[ne] = s
        else:
            out.pop(ne, None)
    return out


# -- Groebner bases --------------------------------------------------------------


class GroebnerBasis:
    """A Groebner basis with respect to a fixed monomial order (immutable)."""

    def __init__(self, generators: Sequence[Poly], order: MonomialOrder, reduced: bool = False):
        self.order = order
        self.generators = tuple(g.embed(order.variables) for g in generators)
        self.reduced = reduced
        self._elems = [_Elem(dict(g.terms), order.key) for g in self.generators if g.terms]

    @property
    def variables(self):
        return self.order.variables

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(self.order.format(g) for g in self.generators)}])"

    def leading_exponents(self) -> List[Exps]:
        return [g.lt for g in self._elems]

    def normal_form(self, p: Poly) -> Poly:
        p = p.embed(self.order.variables)
        return Poly._raw(_reduce(p.terms, self._elems, self.order.key), self.order.variables)

    def contains(self, p: Poly) -> bool:
        p = p.embed(self.order.variables)
        return not _reduce(p.terms, self._elems, self.order.key, full=False)

    def is_unit(self) -> bool:
        return any(not any(g.lt) for g in self._elems)

    def staircase(self, limit: int = 100000):
        """Standard monomials (exponent tuples), or None when there are infinitely many."""
        return standard_monomials(self.leading_exponents(), len(self.order.variables), limit=limit)

    def quotient_dimension(self):
        st = self.staircase()
        return INFINITE if st is None else len(st)

    def format(self) -> List[str]:
        return [self.order.format(g) for g in self.generators]


def buchberger(
    gens: Iterable[Poly],
    order: MonomialOrder,
    *,
    base: Optional[Sequence[Poly]] = None,
    truncate: Optional[Callable[[Exps], bool]] = None,
    max_pairs: int | None = None,
    max_degree: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens`` (plus ``base``).

    ``base`` must already be a Groebner basis for ``order`` (typically the relations of a
    ring whose order is the restriction of ``order``); pairs inside it are skipped. ``truncate(lcm)`` returning True discards an S-pair, which yields a basis
    that is only valid up to the corresponding grading (used for module computations
    encoded with position variables).
    """
    max_pairs = _limits["max_pairs"] if max_pairs is None else max_pairs
    max_degree = _limits["max_degree"] if max_degree is None else max_degree
    key = order.key
    vars = order.variables
    G: List[_Elem] = []
    pairs: set = set()
    n_pairs = 0

    def check_degree(terms):
        for e in terms:
            if sum(e) > max_degree:
                raise ResourceError(f"total degree cap {max_degree} exceeded")

    def add(elem: _Elem):
        nonlocal n_pairs
        idx = len(G)
        G.append(elem)
        for i in range(idx):
            pairs.add((i, idx))
            n_pairs += 1
        if n_pairs > max_pairs:
            raise ResourceError(f"pair queue cap {max_pairs} exceeded")

    base_count = 0
    if base is not None:
        for g in base:
            g = g.embed(vars)
            if g.terms:
                G.append(_Elem(dict(g.terms), key))
        base_count = len(G)

    todo = []
    for g in gens:
        g = g.embed(vars)
        if g.terms:
            todo.append(g.terms)
    for t in todo:
        r = _reduce(t, G, key)
        if r:
            check_degree(r)
            add(_Elem(r, key))

    while pairs:
        i, j = min(pairs, key=lambda ij: key(_lcm(G[ij[0]].lt, G[ij[1]].lt)))
        pairs.discard((i, j))
        f, g = G[i], G[j]
        m = _lcm(f.lt, g.lt)
        if truncate is not None and truncate(m):
            continue
        if _coprime(f.lt, g.lt):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if _divides(G[k].lt, m):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        r = _reduce(_spoly(f, g), G, key)
        if r:
            check_degree(r)
            add(_Elem(r, key))

    return GroebnerBasis(_interreduce(G, key, vars), order, reduced=True)


def _interreduce(elems: List[_Elem], key, vars) -> List[Poly]:
    # minimal basis: drop anything whose leading term is divisible by another's
    elems = sorted(elems, key=lambda g: key(g.lt))
    minimal: List[_Elem] = []
    for g in elems:
        if not any(_divides(h.lt, g.lt) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = dict(g.terms)
        lt = g.lt
        del tail[lt]
        red = _reduce(tail, others, key)
        red[lt] = Fraction(1)
        out.append(Poly._raw(red, vars))
    out.sort(key=lambda p: key(max(p.terms, key=key)))
    return out


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    return gb.normal_form(p)


def groebner(gens: Sequence[Poly], variables: Sequence[str] | None = None, kind: str = "degrevlex") -> GroebnerBasis:
    """Convenience wrapper: reduced basis in the given (default degrevlex) order."""
    gens = list(gens)
    if not gens:
        raise DomainError("need at least one generator")
    if variables is None:
        variables = ()
        for g in gens:
            variables = variables + tuple(v for v in g.vars if v not in variables)
    return buchberger(gens, MonomialOrder(kind, variables))


# -- staircases ------------------------------------------------------------------


def standard_monomials(lts: Sequence[Exps], nvars: int, limit: int = 100000):
    """Monomials outside the monomial ideal generated by ``lts``; None when infinite."""
    lts = [tuple(e) for e in lts]
    if any(not any(e) for e in lts):
        return []
    for i in range(nvars):
        if not any(e[i] and sum(e) == e[i] for e in lts):
            return None
    out = []
    stack = [((0,) * nvars, 0)]
    while stack:
        m, start = stack.pop()
        out.append(m)
        if len(out) > limit:
            raise ResourceError("staircase too large")
        for i in range(start, nvars):
            c = m[:i] + (m[i] + 1,) + m[i + 1:]
            if not any(_divides(e, c) for e in lts):
                stack.append((c, i))
    out.sort()
    return out


def quotient_dimension(gb: GroebnerBasis):
    """Number of standard monomials, or ``INFINITE``."""
    return gb.quotient_dimension()


# -- ideal arithmetic ------------------------------------------------------------


def _common_vars(*groups: Iterable[Poly]) -> Tuple[str, ...]:
    vars: Tuple[str, ...] = ()
    for grp in groups:
        for g in grp:
            vars = vars + tuple(v for v in g.vars if v not in vars)
    return vars


def ideal_sum(a: Sequence[Poly], b: Sequence[Poly]) -> List[Poly]:
    return list(a) + list(b)


def ideal_product(a: Sequence[Poly], b: Sequence[Poly]) -> List[Poly]:
    return [f * g for f in a for g in b]


def ideal_power(a: Sequence[Poly], k: int) -> List[Poly]:
    """Generators of a^k: all products of k generators (with repetition)."""
    from itertools import combinations_with_replacement

    if k < 0:
        raise DomainError("power must be >= 0")
    a = list(a)
    if k == 0:
        vars = _common_vars(a)
        return [Poly.const(1, vars)]
    out = []
    for combo in combinations_with_replacement(range(len(a)), k):
        p = a[combo[0]]
        for i in combo[1:]:
            p = p * a[i]
        out.append(p)
    return out


def ideal_contains(gens: Sequence[Poly], p: Poly, variables: Sequence[str] | None = None) -> bool:
    vars = tuple(variables) if variables else _common_vars(gens, [p])
    nonzero = [g for g in gens if g.terms]
    if not nonzero:
        return p.is_zero()
    gb = buchberger(nonzero, MonomialOrder.degrevlex(vars))
    return gb.contains(p)


def is_unit_ideal(gens: Sequence[Poly], variables: Sequence[str] | None = None) -> bool:
    vars = tuple(variables) if variables else _common_vars(gens)
    nonzero = [g for g in gens if g.terms]
    if not nonzero:
        return False
    gb = buchberger(nonzero, MonomialOrder.degrevlex(vars))
    return gb.is_unit()


def ideals_equal(a: Sequence[Poly], b: Sequence[Poly]) -> bool:
    vars = _common_vars(a, b)
    return all(ideal_contains(a, g, vars) for g in b) and all(ideal_contains(b, g, vars) for g in a)


def ideal_ops(kind: str, *args):
    """Dispatcher for membership / sum / product / power / is_unit."""
    if kind == "membership":
        p, gens = args
        return ideal_contains(gens, p)
    if kind == "sum":
        return ideal_sum(*args)
    if kind == "product":
        return ideal_product(*args)
    if kind == "power":
        return ideal_power(*args)
    if kind == "is_unit":
        return is_unit_ideal(*args)
    raise DomainError(f"unknown ideal operation {kind!r}")


def eliminate(gens: Sequence[Poly], drop: Sequence[str], keep: Sequence[str]) -> List[Poly]:
    """Generators of the ideal intersected with Q[keep]."""
    order = MonomialOrder.block(drop, keep)
    gb = buchberger(gens, order)
    drop_idx = range(len(drop))
    out = []
    for g in gb.generators:
        if all(not e[i] for e in g.terms for i in drop_idx):
            out.append(g.embed(tuple(keep)))
    return out
