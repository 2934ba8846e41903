"""Text syntax for polynomials, matrices and operator expressions.

Polynomials: integers, rationals via ``/`` by a constant, ``+ - * ^`` and parentheses.
Operator expressions additionally allow ``d(v)`` for the partial derivative in ``v``;
juxtaposed factors multiply as in the Weyl algebra (``d(x)*x = x*d(x) + 1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .polycore import DomainError, Poly


class ParseError(DomainError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


class SemanticError(DomainError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, OP, EOF
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<NUM>\d+)|(?P<NAME>[A-Za-z_][A-Za-z0-9_]*)|(?P<OP>->|[-+*/^()\[\],;=:])")


def tokenize(text: str) -> List[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind:
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(Token("EOF", "", line, pos - line_start + 1))
    return out


class TokenStream:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def at(self, text: str) -> bool:
        t = self.peek
        return t.kind in ("OP", "NAME") and t.text == text

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text or t.kind not in ("OP", "NAME"):
            shown = t.text or "end of input"
            raise ParseError(f"expected {text!r}, found {shown!r}", t.line, t.col)
        return t

    def expect_kind(self, kind: str, what: str) -> Token:
        t = self.next()
        if t.kind != kind:
            shown = t.text or "end of input"
            raise ParseError(f"expected {what}, found {shown!r}", t.line, t.col)
        return t

    def error(self, message: str):
        t = self.peek
        raise ParseError(message, t.line, t.col)


# -- expression evaluation with pluggable semantics --------------------------------


class _PolySemantics:
    def __init__(self, variables: Sequence[str]):
        self.vars = tuple(variables)

    def number(self, c: Fraction):
        return Poly.const(c, self.vars)

    def name(self, tok: Token):
        if tok.text not in self.vars:
            raise SemanticError(f"{tok.line}:{tok.col}: unknown variable {tok.text!r}")
        return Poly.var(tok.text, self.vars)

    def partial(self, tok: Token):
        raise ParseError("d(...) is only allowed in operator expressions", tok.line, tok.col)

    def mul(self, a, b):
        return a * b

    def one(self):
        return Poly.const(1, self.vars)

    def constant_of(self, p):
        if isinstance(p, Poly) and p.is_constant():
            return p.constant_coeff()
        return None


class _OperatorSemantics(_PolySemantics):
    def __init__(self, ring, dvars=None):
        super().__init__(ring.variables)
        from .diffop import DiffOperator

        self.ring = ring
        self.dvars = tuple(ring.variables if dvars is None else dvars)
        self.D = DiffOperator

    def number(self, c):
        return self.D.multiplication(self.ring, c, self.dvars)

    def name(self, tok):
        return self.D.multiplication(self.ring, _PolySemantics.name(self, tok), self.dvars)

    def partial(self, tok):
        if tok.text not in self.dvars:
            raise SemanticError(f"{tok.line}:{tok.col}: cannot differentiate in {tok.text!r}")
        return self.D.partial(self.ring, tok.text, 1, self.dvars)

    def mul(self, a, b):
        return a.compose(b)

    def one(self):
        return self.D.identity(self.ring, 1, self.dvars)

    def constant_of(self, op):
        if op.order() == 0:
            c = op.coefficient((0,) * len(self.dvars))[0][0]
            if c.is_constant():
                return c.constant_coeff()
        return None


def _parse_expr(ts: TokenStream, sem):
    value = _parse_term(ts, sem)
    while ts.at("+") or ts.at("-"):
        op = ts.next().text
        rhs = _parse_term(ts, sem)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_term(ts: TokenStream, sem):
    value = _parse_unary(ts, sem)
    while ts.at("*") or ts.at("/"):
        op = ts.next()
        rhs = _parse_unary(ts, sem)
        if op.text == "*":
            value = sem.mul(value, rhs)
        else:
            c = sem.constant_of(rhs)
            if c is None:
                raise ParseError("division is only by nonzero constants", op.line, op.col)
            if c == 0:
                raise ParseError("division by zero", op.line, op.col)
            value = sem.mul(value, sem.number(Fraction(1) / c))
    return value


def _parse_unary(ts: TokenStream, sem):
    if ts.at("-"):
        ts.next()
        return -_parse_unary(ts, sem)
    if ts.at("+"):
        ts.next()
        return _parse_unary(ts, sem)
    return _parse_power(ts, sem)


def _parse_power(ts: TokenStream, sem):
    base = _parse_atom(ts, sem)
    if ts.at("^"):
        ts.next()
        tok = ts.expect_kind("NUM", "an exponent")
        k = int(tok.text)
        if k > 64:
            raise ParseError("exponent too large", tok.line, tok.col)
        out = sem.one()
        for _ in range(k):
            out = sem.mul(out, base)
        return out
    return base


def _parse_atom(ts: TokenStream, sem):
    tok = ts.peek
    if tok.kind == "NUM":
        ts.next()
        return sem.number(Fraction(int(tok.text)))
    if tok.kind == "NAME":
        ts.next()
        if tok.text == "d" and ts.at("("):
            ts.next()
            v = ts.expect_kind("NAME", "a variable")
            ts.expect(")")
            return sem.partial(v)
        return sem.name(tok)
    if ts.at("("):
        ts.next()
        value = _parse_expr(ts, sem)
        ts.expect(")")
        return value
    ts.error(f"unexpected {tok.text or 'end of input'!r}")


def parse_poly_from(ts: TokenStream, variables: Sequence[str]) -> Poly:
    return _parse_expr(ts, _PolySemantics(variables))


def parse_operator_from(ts: TokenStream, ring, dvars=None):
    return _parse_expr(ts, _OperatorSemantics(ring, dvars))


def _finish(ts: TokenStream):
    if ts.peek.kind != "EOF":
        ts.error(f"unexpected trailing input {ts.peek.text!r}")


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    ts = TokenStream(tokenize(text))
    p = parse_poly_from(ts, variables)
    _finish(ts)
    return p


def parse_poly_list(text: str, variables: Sequence[str], sep: str = ",") -> List[Poly]:
    ts = TokenStream(tokenize(text))
    out = []
    if ts.peek.kind == "EOF":
        return out
    out.append(parse_poly_from(ts, variables))
    while ts.at(sep):
        ts.next()
        out.append(parse_poly_from(ts, variables))
    _finish(ts)
    return out


def parse_operator(text: str, ring, dvars=None):
    ts = TokenStream(tokenize(text))
    op = parse_operator_from(ts, ring, dvars)
    _finish(ts)
    return op


def parse_matrix_from(ts: TokenStream, variables: Sequence[str]) -> List[List[Poly]]:
    ts.expect("[")
    rows = []
    if ts.at("]"):
        ts.next()
        return rows
    while True:
        ts.expect("[")
        row = [parse_poly_from(ts, variables)]
        while ts.at(","):
            ts.next()
            row.append(parse_poly_from(ts, variables))
        ts.expect("]")
        rows.append(row)
        if ts.at(","):
            ts.next()
            continue
        ts.expect("]")
        break
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise SemanticError("matrix rows have different lengths")
    return rows


def parse_matrix(text: str, variables: Sequence[str]) -> List[List[Poly]]:
    ts = TokenStream(tokenize(text))
    m = parse_matrix_from(ts, variables)
    _finish(ts)
    return m


def format_poly(p: Poly, variables: Sequence[str] | None = None) -> str:
    return str(p if variables is None else p.embed(variables))


def format_matrix(rows: Sequence[Sequence[Poly]], variables: Sequence[str] | None = None) -> str:
    return "[" + ", ".join("[" + ", ".join(format_poly(a, variables) for a in r) + "]" for r in rows) + "]"


def format_vector(vec: Sequence[Poly], variables: Sequence[str] | None = None) -> str:
    return "[" + ", ".join(format_poly(a, variables) for a in vec) + "]"


def parse_assignments(text: str) -> dict:
    """``x=1,y=-2/3`` -> {name: Fraction}."""
    out = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in part:
            raise ParseError(f"expected NAME=VALUE, got {part!r}")
        name, val = (s.strip() for s in part.split("=", 1))
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ParseError(f"bad variable name {name!r}")
        try:
            out[name] = Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational value {val!r}") from None
    return out
