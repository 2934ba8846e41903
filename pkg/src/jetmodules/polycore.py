"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial carries its ambient variable list; exponent vectors are tuples
aligned with that list. Binary operations between polynomials on different
variable lists first embed both into the union of the lists (left operand's
variables first).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exps = Tuple[int, ...]

MAX_EXPONENT = 10**6


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


def degrevlex_key(e: Exps):
    return (sum(e), tuple(-x for x in reversed(e)))


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Poly:
    """Immutable sparse polynomial over Q.

    >>> x = Poly.var("x", ("x", "y")); y = Poly.var("y", ("x", "y"))
    >>> str(x**2 * y + 2 * x)
    'x^2*y + 2*x'
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[Exps, object] | None = None, vars: Sequence[str] = ()):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean: Dict[Exps, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise DomainError(f"exponent {e} does not match variables {self.vars}")
                c = _coerce_coeff(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exps, Fraction], vars: Tuple[str, ...]) -> "Poly":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------------

    @classmethod
    def const(cls, c, vars: Sequence[str] = ()) -> "Poly":
        vars = tuple(vars)
        c = _coerce_coeff(c)
        return cls._raw({(0,) * len(vars): c} if c else {}, vars)

    @classmethod
    def zero(cls, vars: Sequence[str] = ()) -> "Poly":
        return cls._raw({}, tuple(vars))

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "Poly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            raise DomainError(f"unknown variable {name!r}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw({e: Fraction(1)}, vars)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], vars: Sequence[str], coeff=1) -> "Poly":
        vars = tuple(vars)
        for v in exps:
            if v not in vars:
                raise DomainError(f"unknown variable {v!r}")
        e = tuple(exps.get(v, 0) for v in vars)
        return cls({e: coeff}, vars)

    # -- variable bookkeeping -------------------------------------------------

    def embed(self, vars: Sequence[str]) -> "Poly":
        """Re-express in the variable list ``vars`` (which must contain every used variable)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for i, v in enumerate(self.vars):
            if v in vars:
                idx.append((i, vars.index(v)))
            elif any(e[i] for e in self.terms):
                raise DomainError(f"variable {v!r} is used but missing from {vars}")
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, j in idx:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return Poly._raw(out, vars)

    def used_vars(self) -> Tuple[str, ...]:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return tuple(v for i, v in enumerate(self.vars) if i in used)

    def _aligned(self, other: "Poly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        extra = tuple(v for v in other.vars if v not in self.vars)
        vars = self.vars + extra
        return vars, self.embed(vars).terms, other.embed(vars).terms

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.vars)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        vars, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(out, vars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.vars)
            return Poly._raw({e: c * other for e, c in self.terms.items()}, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        vars, a, b = self._aligned(other)
        out: Dict[Exps, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        for e in out:
            if e and max(e) > MAX_EXPONENT:
                raise OverflowError("exponent overflow")
        return Poly._raw(out, vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            inv = 1 / Fraction(other)
            return self * inv
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("exponent must be a nonnegative integer")
        result = Poly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        _, a, b = self._aligned(other)
        return a == b

    def __hash__(self):
        if self._hash is None:
            # hash must agree across ambient lists, so key on named exponents
            items = []
            for e, c in self.terms.items():
                items.append((tuple((v, k) for v, k in zip(self.vars, e) if k), c))
            self._hash = hash(frozenset(items))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coeff(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [i for i, v in enumerate(self.vars) if v in set(names)]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def coeff(self, exps: Mapping[str, int]) -> Fraction:
        e = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(e, Fraction(0))

    def sorted_terms(self, key=degrevlex_key):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def coefficients_in(self, names: Sequence[str]) -> Dict[Exps, "Poly"]:
        """Group terms by their exponent in ``names``; values are polynomials on the same ambient list
        with those variables stripped to exponent zero."""
        names = tuple(names)
        idx = [self.vars.index(v) for v in names]
        groups: Dict[Exps, Dict[Exps, Fraction]] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        return {k: Poly._raw(v, self.vars) for k, v in groups.items()}

    # -- calculus -------------------------------------------------------------

    def partial_derivative(self, v: str, r: int = 1) -> "Poly":
        if v not in self.vars:
            raise DomainError(f"unknown variable {v!r}")
        if r < 1:
            raise DomainError("derivative order must be >= 1")
        i = self.vars.index(v)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k < r:
                continue
            f = 1
            for j in range(k - r + 1, k + 1):
                f *= j
            ne = e[:i] + (k - r,) + e[i + 1:]
            out[ne] = c * f
        return Poly._raw(out, self.vars)

    def derivative(self, multi: Mapping[str, int]) -> "Poly":
        p = self
        for v, r in multi.items():
            if r:
                p = p.partial_derivative(v, r)
        return p

    def subs(self, values: Mapping[str, object], vars: Sequence[str] | None = None) -> "Poly":
        """Substitute polynomials or numbers for variables; the result lives on ``vars``
        (default: this polynomial's list with numerically-substituted variables kept)."""
        images = {}
        for v, val in values.items():
            if v not in self.vars:
                continue
            images[v] = val
        if vars is None:
            vars = self.vars
            for val in images.values():
                if isinstance(val, Poly):
                    vars = vars + tuple(w for w in val.vars if w not in vars)
        vars = tuple(vars)
        result = Poly.zero(vars)
        cache: Dict[Tuple[str, int], Poly] = {}

        def power(v, k):
            key = (v, k)
            if key not in cache:
                val = images[v]
                if isinstance(val, Poly):
                    cache[key] = val.embed(vars) ** k
                else:
                    cache[key] = Poly.const(_coerce_coeff(val) ** k, vars)
            return cache[key]

        kept = [(i, v) for i, v in enumerate(self.vars) if v not in images]
        for e, c in self.terms.items():
            mono = {}
            for i, v in kept:
                if e[i]:
                    mono[v] = e[i]
            term = Poly.monomial(mono, vars, c)
            for i, v in enumerate(self.vars):
                if v in images and e[i]:
                    term = term * power(v, e[i])
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        total = Fraction(0)
        vals = []
        for v in self.vars:
            if v not in values:
                if any(e[self.vars.index(v)] for e in self.terms):
                    raise DomainError(f"no value for {v!r}")
                vals.append(Fraction(0))
            else:
                vals.append(_coerce_coeff(values[v]))
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x**k
            total += t
        return total

    def truncate(self, jet_vars: Iterable[str], N: int) -> "Poly":
        """Drop every term whose total degree in ``jet_vars`` exceeds N."""
        idx = [i for i, v in enumerate(self.vars) if v in set(jet_vars)]
        out = {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) <= N}
        return Poly._raw(out, self.vars)

    # -- printing -------------------------------------------------------------

    def to_str(self, key=degrevlex_key) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(key):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _fmt(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt(a)}*{mono}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r}, vars={self.vars})"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def partial_derivative(p: Poly, v: str, r: int = 1) -> Poly:
    return p.partial_derivative(v, r)


def jet_name(v: str) -> str:
    return "d" + v


def _check_jet_map(p: Poly, jet_map: Mapping[str, str]):
    jets = set(jet_map.values())
    if len(jets) != len(jet_map):
        raise DomainError("jet variables must be distinct")
    clash = jets & set(jet_map)
    if clash:
        raise DomainError(f"jet variable collides with a base variable: {sorted(clash)}")
    used = set(p.used_vars())
    if used & jets:
        raise DomainError(f"polynomial already involves jet variables {sorted(used & jets)}")
    for v in jet_map:
        if v not in p.vars:
            raise DomainError(f"unknown variable {v!r}")


def taylor_shift(p: Poly, jet_map: Mapping[str, str], N: int) -> Poly:
    """Return p(x + dx) with all terms of total dx-degree > N removed.

    ``jet_map`` sends each shifted base variable to its jet variable; base variables
    not in the map are left alone (relative jets). Jet variables are appended to the
    ambient list when absent.
    """
    if N < 0:
        raise DomainError("truncation order must be >= 0")
    _check_jet_map(p, jet_map)
    vars = p.vars + tuple(j for j in jet_map.values() if j not in p.vars)
    n = len(vars)
    shifted = [(p.vars.index(v), vars.index(j)) for v, j in jet_map.items()]
    out: Dict[Exps, Fraction] = {}
    for e, c in p.terms.items():
        base = list(e) + [0] * (n - len(e))
        # partial expansions: list of (exps list, coeff, dx-degree)
        partial = [(base, c, 0)]
        for i, j in shifted:
            k = e[i]
            if not k:
                continue
            nxt = []
            for exps, cc, deg in partial:
                for t in range(0, min(k, N - deg) + 1):
                    ne = list(exps)
                    ne[i] -= t
                    ne[j] += t
                    nxt.append((ne, cc * comb(k, t), deg + t))
            partial = nxt
        for exps, cc, _ in partial:
            key = tuple(exps)
            s = out.get(key, 0) + cc
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Poly._raw(out, vars)


def taylor_shift_by_derivatives(p: Poly, jet_map: Mapping[str, str], N: int) -> Poly:
    """Independent route: sum over |I| <= N of (1/I!) * d^I p * dx^I."""
    _check_jet_map(p, jet_map)
    bases = list(jet_map)
    vars = p.vars + tuple(j for j in jet_map.values() if j not in p.vars)
    total = Poly.zero(vars)
    for I in multi_indices(len(bases), N):
        d = p.derivative(dict(zip(bases, I)))
        if d.is_zero():
            continue
        denom = 1
        for k in I:
            denom *= factorial(k)
        mono = Poly.monomial({jet_map[b]: k for b, k in zip(bases, I)}, vars)
        total = total + d.embed(vars) * mono * Fraction(1, denom)
    return total


def multiply_truncated(p: Poly, q: Poly, jet_vars: Iterable[str], N: int) -> Poly:
    """Product with every term of jet-degree > N dropped."""
    jet_vars = tuple(jet_vars)
    vars, a, b = p._aligned(q)
    idx = [i for i, v in enumerate(vars) if v in jet_vars]
    out: Dict[Exps, Fraction] = {}
    for ea, ca in a.items():
        da = sum(ea[i] for i in idx)
        if da > N:
            continue
        for eb, cb in b.items():
            if da + sum(eb[i] for i in idx) > N:
                continue
            e = tuple(i + j for i, j in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return Poly._raw(out, vars)


def multi_indices(n: int, max_degree: int, exact: bool = False):
    """All multi-indices of length n with |I| <= max_degree (or == when exact), graded order."""
    out = []
    degrees = [max_degree] if exact else range(max_degree + 1)
    for d in degrees:
        out.extend(_compositions(n, d))
    return out


def _compositions(n: int, d: int):
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    res = []
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            res.append((first,) + rest)
    return res


def multi_factorial(I: Sequence[int]) -> int:
    out = 1
    for k in I:
        out *= factorial(k)
    return out


def variables(names: Sequence[str]):
    """Convenience: generator polynomials for each name on the shared list."""
    names = tuple(names)
    return tuple(Poly.var(v, names) for v in names)
