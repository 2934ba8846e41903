"""Session files: named rings, modules, operators and ring maps.

::

    ring A = Q[x, y] / (x^2, y^3);
    module M over A = coker [[x, y], [y, 0]];
    module F over A = free 2;
    op D on A = x*d(x)^2 + d(y);
    map f : A -> B = [y^2, 0];
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Union

from .diffop import DiffOperator, format_operator
from .polycore import jet_name
from .presentations import AlgebraPresentation, FPModule, RingMap
from .syntax import (
    ParseError,
    SemanticError,
    TokenStream,
    format_matrix,
    parse_matrix_from,
    parse_operator_from,
    parse_poly_from,
    tokenize,
)


@dataclass
class RingDecl:
    name: str
    ring: AlgebraPresentation

    def format(self) -> str:
        r = self.ring
        head = f"ring {self.name} = Q[{', '.join(r.variables)}]"
        if r.relations:
            head += " / (" + ", ".join(str(f) for f in r.relations) + ")"
        return head + ";"


@dataclass
class ModuleDecl:
    name: str
    ring_name: str
    module: FPModule
    free: bool = False

    def format(self) -> str:
        if self.free or not self.module.matrix:
            return f"module {self.name} over {self.ring_name} = free {self.module.ngens};"
        return f"module {self.name} over {self.ring_name} = coker {format_matrix(self.module.matrix)};"


@dataclass
class OpDecl:
    name: str
    ring_name: str
    op: DiffOperator

    def format(self) -> str:
        return f"op {self.name} on {self.ring_name} = {format_operator(self.op)};"


@dataclass
class MapDecl:
    name: str
    source: str
    target: str
    map: RingMap

    def format(self) -> str:
        imgs = ", ".join(str(self.map.images[v]) for v in self.map.source.variables)
        return f"map {self.name} : {self.source} -> {self.target} = [{imgs}];"


Decl = Union[RingDecl, ModuleDecl, OpDecl, MapDecl]


@dataclass
class Session:
    decls: List[Decl] = field(default_factory=list)

    def _index(self) -> Dict[str, Decl]:
        return {d.name: d for d in self.decls}

    def get(self, name: str, kind=None) -> Decl:
        d = self._index().get(name)
        if d is None:
            raise SemanticError(f"unknown name {name!r}")
        if kind is not None and not isinstance(d, kind):
            raise SemanticError(f"{name!r} is not a {kind.__name__.replace('Decl', '').lower()}")
        return d

    def ring(self, name: str) -> AlgebraPresentation:
        return self.get(name, RingDecl).ring

    def module(self, name: str) -> FPModule:
        return self.get(name, ModuleDecl).module

    def op(self, name: str) -> DiffOperator:
        return self.get(name, OpDecl).op

    def ring_of(self, name: str) -> Tuple[str, AlgebraPresentation]:
        d = self.get(name)
        if isinstance(d, RingDecl):
            return d.name, d.ring
        if isinstance(d, (ModuleDecl, OpDecl)):
            return d.ring_name, self.ring(d.ring_name)
        raise SemanticError(f"{name!r} has no ring")

    def format(self) -> str:
        return "\n".join(d.format() for d in self.decls) + ("\n" if self.decls else "")

    __str__ = format


def _check_variables(vars: List[str], tok):
    seen = set()
    for v in vars:
        if v in seen:
            raise SemanticError(f"{tok.line}:{tok.col}: repeated variable {v!r}")
        seen.add(v)
    for v in vars:
        if jet_name(v) in seen:
            raise SemanticError(f"{tok.line}:{tok.col}: variable {jet_name(v)!r} collides with the jet variable of {v!r}")
        if v == "d":
            raise SemanticError(f"{tok.line}:{tok.col}: 'd' is reserved for derivatives")


def _name(ts: TokenStream) -> str:
    return ts.expect_kind("NAME", "a name").text


def parse(text: str) -> Session:
    ts = TokenStream(tokenize(text))
    s = Session()
    names = set()
    while ts.peek.kind != "EOF":
        kw = ts.peek
        if kw.kind != "NAME" or kw.text not in ("ring", "module", "op", "map"):
            ts.error(f"expected a declaration, found {kw.text!r}")
        ts.next()
        name_tok = ts.peek
        name = _name(ts)
        if name in names:
            raise SemanticError(f"{name_tok.line}:{name_tok.col}: duplicate name {name!r}")
        if kw.text == "ring":
            ts.expect("=")
            q = ts.expect_kind("NAME", "'Q'")
            if q.text != "Q":
                raise ParseError("only the field Q is supported", q.line, q.col)
            ts.expect("[")
            vars = []
            if not ts.at("]"):
                vars.append(_name(ts))
                while ts.at(","):
                    ts.next()
                    vars.append(_name(ts))
            ts.expect("]")
            _check_variables(vars, name_tok)
            rels = []
            if ts.at("/"):
                ts.next()
                ts.expect("(")
                rels.append(parse_poly_from(ts, vars))
                while ts.at(","):
                    ts.next()
                    rels.append(parse_poly_from(ts, vars))
                ts.expect(")")
            decl = RingDecl(name, AlgebraPresentation(vars, rels))
        elif kw.text == "module":
            ts.expect("over")
            rname = _name(ts)
            ring = s.ring(rname)
            ts.expect("=")
            kind = ts.next()
            if kind.text == "free":
                k = int(ts.expect_kind("NUM", "a rank").text)
                decl = ModuleDecl(name, rname, FPModule.free(ring, k), free=True)
            elif kind.text == "coker":
                rows = parse_matrix_from(ts, ring.variables)
                if not rows:
                    raise SemanticError(f"{kind.line}:{kind.col}: use 'free k' for a module without relations")
                decl = ModuleDecl(name, rname, FPModule(ring, len(rows[0]), rows))
            else:
                raise ParseError("expected 'coker' or 'free'", kind.line, kind.col)
        elif kw.text == "op":
            ts.expect("on")
            rname = _name(ts)
            ring = s.ring(rname)
            ts.expect("=")
            decl = OpDecl(name, rname, parse_operator_from(ts, ring))
        else:
            ts.expect(":")
            src = _name(ts)
            ts.expect("->")
            dst = _name(ts)
            A, B = s.ring(src), s.ring(dst)
            ts.expect("=")
            ts.expect("[")
            imgs = []
            if not ts.at("]"):
                imgs.append(parse_poly_from(ts, B.variables))
                while ts.at(","):
                    ts.next()
                    imgs.append(parse_poly_from(ts, B.variables))
            ts.expect("]")
            if len(imgs) != len(A.variables):
                raise SemanticError(f"{name_tok.line}:{name_tok.col}: map needs one image per variable of {src}")
            try:
                rm = RingMap(A, B, dict(zip(A.variables, imgs)))
            except AssertionError as exc:
                raise SemanticError(f"{name_tok.line}:{name_tok.col}: {exc}") from None
            decl = MapDecl(name, src, dst, rm)
        ts.expect(";")
        names.add(name)
        s.decls.append(decl)
    return s
