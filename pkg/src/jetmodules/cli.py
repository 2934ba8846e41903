"""Command line front end: ``jetmod COMMAND ...`` over a session file.

Exit codes: 0 success (or all oracle trials passed), 1 an oracle reported failures,
2 parse, semantic or domain error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Sequence

from .diffop import FactorizationError, JetHom, format_operator, hom_to_op, op_to_hom
from .groebner import INFINITE, ResourceError, resource_limits
from .jetcore import JetAlgebra, JetModule, PreconditionError
from .polycore import DomainError, Poly
from .presentations import AlgebraPresentation, FPModule, InvariantViolation
from .session import ModuleDecl, RingDecl, Session, parse
from .syntax import ParseError, format_matrix, format_vector, parse_assignments, parse_matrix, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class CliError(DomainError):
    pass


def _load(path: str) -> Session:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def _dim_text(d) -> str:
    return "inf" if d == INFINITE else str(d)


def _sorted_gb(ring: AlgebraPresentation) -> List[str]:
    gb = ring.gb
    gens = sorted(gb.generators, key=lambda g: gb.order.key(gb.order.leading(g)[0]))
    return [gb.order.format(g) for g in gens]


def _ring_text(ring: AlgebraPresentation) -> str:
    head = f"Q[{', '.join(ring.variables)}]"
    rels = _sorted_gb(ring)
    return head + (" / (" + ", ".join(rels) + ")" if rels else "")


def _jet_of(session: Session, name: str, N, over: Sequence[str]):
    """The named ring or module, or its N-th jet object when N is given."""
    decl = session.get(name)
    if isinstance(decl, RingDecl):
        return decl.ring if N is None else JetAlgebra(decl.ring, N, over)
    if isinstance(decl, ModuleDecl):
        return decl.module if N is None else JetModule(decl.module, N, over)
    raise CliError(f"{name!r} is neither a ring nor a module")


def _vector_or_poly(text: str, vars, size: int):
    text = text.strip()
    if text.startswith("["):
        rows = parse_matrix("[" + text + "]", vars)
        vec = rows[0] if rows else []
        if len(vec) != size:
            raise CliError(f"expected a vector of length {size}")
        return vec, True
    if size != 1:
        raise CliError(f"expected a vector of length {size} like [a, b]")
    return [parse_poly(text, vars)], False


def _pick_ring(session: Session, name: str | None):
    if name is not None:
        return session.ring_of(name)
    rings = [d for d in session.decls if isinstance(d, RingDecl)]
    if len(rings) != 1:
        raise CliError("several rings declared; choose one with --in")
    return rings[0].name, rings[0].ring


# -- commands ---------------------------------------------------------------------------


def cmd_jet_algebra(a, out):
    J = JetAlgebra(_load(a.file).ring(a.ring), a.N, a.over)
    out.append(_ring_text(J))


def cmd_jet_module(a, out):
    J = JetModule(_load(a.file).module(a.module), a.N, a.over)
    out.append(_ring_text(J.jet))
    m = J.module
    out.append(f"coker {format_matrix(m.matrix)}" if m.matrix else f"free {m.ngens}")


def cmd_derive(a, out):
    s = _load(a.file)
    if a.target is not None and isinstance(s.get(a.target), ModuleDecl):
        J = JetModule(s.module(a.target), a.N, a.over)
        vec, _ = _vector_or_poly(a.elem, J.base.ring.variables, J.ngens)
        out.append(format_vector(J.d(vec)))
        return
    _, ring = _pick_ring(s, a.target)
    J = JetAlgebra(ring, a.N, a.over)
    out.append(str(J.p2(parse_poly(a.elem, ring.variables))))


def cmd_apply(a, out):
    s = _load(a.file)
    D = s.op(a.op)
    vec, is_vec = _vector_or_poly(a.elem, D.ring.variables, D.m1)
    if a.via_jets is not None:
        res = op_to_hom(D, a.via_jets).compose_d(vec)
    else:
        res = D.apply(vec)
    res = [D.ring.normal_form(r) for r in res]
    out.append(format_vector(res) if is_vec or D.m2 != 1 else str(res[0]))


def cmd_compose(a, out):
    s = _load(a.file)
    D, E = s.op(a.first), s.op(a.second)
    out.append(format_operator(D.compose(E)))


def _mono_text(J: JetAlgebra, I) -> str:
    return str(J.dx_monomial(I).embed(J.jet_vars) if any(I) else Poly.const(1))


def cmd_to_hom(a, out):
    s = _load(a.file)
    D = s.op(a.op)
    H = op_to_hom(D, a.N)
    for (I, j) in sorted(H.values, key=lambda k: (sum(k[0]), tuple(-e for e in k[0]), k[1])):
        val = H.values[(I, j)]
        lhs = _mono_text(H.jet, I) + (f" e{j}" if D.m1 != 1 else "")
        rhs = str(val[0]) if D.m2 == 1 else format_vector(val)
        out.append(f"{lhs} -> {rhs}")


def parse_hom_values(text: str, J: JetAlgebra):
    """``1 -> a; dx -> b; dx^2 -> c`` (scalar homs) into JetHom values."""
    values = {}
    for part in filter(None, (p.strip() for p in text.replace("\n", ";").split(";"))):
        if "->" not in part:
            raise CliError(f"expected 'MONOMIAL -> VALUE', got {part!r}")
        lhs, rhs = (x.strip() for x in part.split("->", 1))
        mono = parse_poly(lhs, J.jet_vars)
        if len(mono.terms) != 1 or next(iter(mono.terms.values())) != 1:
            raise CliError(f"{lhs!r} is not a jet monomial")
        I = next(iter(mono.terms))
        if sum(I) > J.N:
            raise CliError(f"{lhs!r} exceeds the jet order {J.N}")
        values[(I, 0)] = [parse_poly(rhs, J.base.variables)]
    return values


def cmd_from_hom(a, out):
    s = _load(a.file)
    ring = s.ring(a.ring)
    J = JetAlgebra(ring, a.N, a.over)
    H = JetHom(J, 1, 1, parse_hom_values(a.values, J))
    out.append(format_operator(hom_to_op(H)))


def cmd_dim(a, out):
    obj = _jet_of(_load(a.file), a.name, a.N, a.over)
    out.append(_dim_text(obj.dimension()))


def cmd_fiber_dim(a, out):
    obj = _jet_of(_load(a.file), a.name, a.N, a.over)
    out.append(_dim_text(obj.fiber_dimension(parse_assignments(a.at))))


def cmd_groebner(a, out):
    obj = _jet_of(_load(a.file), a.name, a.N, a.over)
    if isinstance(obj, (FPModule, JetModule)):
        m = obj if isinstance(obj, FPModule) else obj.module
        for g in m.gb.generators:
            out.append(m.gb.order.format(g))
        return
    out.extend(_sorted_gb(obj))


def cmd_check(a, out):
    from .propcheck import ORACLE_GROUPS, OracleConfig, oracle_names, run_oracle

    group, _, kind = a.oracle.partition(":")
    kind = kind or a.kind
    if group not in ORACLE_GROUPS:
        raise CliError(f"unknown oracle {group!r}; choose from {', '.join(ORACLE_GROUPS)}")
    if kind and kind not in ORACLE_GROUPS[group]:
        raise CliError(f"unknown kind {kind!r} for {group}")
    cfg = OracleConfig(seed=a.seed, trials=a.trials, max_vars=a.max_vars, max_deg=a.max_deg, max_order=a.max_order, fiber_samples=a.fiber_samples)
    reports = [run_oracle(n, cfg) for n in oracle_names(group, kind or None)]
    if a.json:
        payload = [r.to_dict(timing=not a.no_timing) for r in reports]
        out.append(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
    else:
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            extra = f", {len(r.resource_errors)} hit resource caps" if r.resource_errors else ""
            out.append(f"{r.oracle}: {status} ({r.trials} instances, {len(r.failures)} failures{extra})")
            for f in r.failures:
                out.append(f"  stage {f['stage']}: {f['detail']}")
                out.append(f"  instance {json.dumps(f['instance'], sort_keys=True)}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------------


def build_parser(cls=argparse.ArgumentParser) -> argparse.ArgumentParser:
    p = cls(prog="jetmod", description="Jet algebras, jet modules and differential operators over Q.")
    p.add_argument("--max-pairs", type=int, default=None, help="cap on Buchberger pair queue (exit 3 when exceeded)")
    p.add_argument("--max-degree", type=int, default=None, help="cap on polynomial degree during Groebner computations")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND", parser_class=cls)

    def jet_opts(sp, required=True):
        sp.add_argument("-N", type=int, required=required, default=None, help="jet order")
        sp.add_argument("--over", type=lambda s: tuple(v for v in s.split(",") if v), default=(), help="comma-separated parameter variables (relative jets)")

    sp = sub.add_parser("jet-algebra", help="print the jet algebra J^N of a ring")
    jet_opts(sp)
    sp.add_argument("file")
    sp.add_argument("ring")
    sp.set_defaults(func=cmd_jet_algebra)

    sp = sub.add_parser("jet-module", help="print the jet module J^N of a module")
    jet_opts(sp)
    sp.add_argument("file")
    sp.add_argument("module")
    sp.set_defaults(func=cmd_jet_module)

    sp = sub.add_parser("derive", help="apply the universal derivation d^N to an element")
    jet_opts(sp)
    sp.add_argument("file")
    sp.add_argument("elem")
    sp.add_argument("--in", dest="target", default=None, help="ring or module the element belongs to")
    sp.set_defaults(func=cmd_derive)

    sp = sub.add_parser("apply", help="apply an operator to an element")
    sp.add_argument("file")
    sp.add_argument("op")
    sp.add_argument("elem")
    sp.add_argument("--via-jets", type=int, default=None, metavar="N", help="evaluate as H(d^N f) with H the jet hom of the operator")
    sp.set_defaults(func=cmd_apply)

    sp = sub.add_parser("compose", help="compose two operators (first after second)")
    sp.add_argument("file")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("to-hom", help="print the jet hom of an operator")
    sp.add_argument("-N", type=int, default=None, help="jet order (default: operator order)")
    sp.add_argument("file")
    sp.add_argument("op")
    sp.set_defaults(func=cmd_to_hom)

    sp = sub.add_parser("from-hom", help="operator of a scalar jet hom given as 'MONO -> VALUE; ...'")
    jet_opts(sp)
    sp.add_argument("file")
    sp.add_argument("ring")
    sp.add_argument("values", help="\"MONO -> VALUE; ...\"")
    sp.set_defaults(func=cmd_from_hom)

    sp = sub.add_parser("dim", help="Q-dimension of a ring, module, or (with -N) its jets")
    jet_opts(sp, required=False)
    sp.add_argument("file")
    sp.add_argument("name")
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("fiber-dim", help="dimension of the fiber at a point")
    jet_opts(sp, required=False)
    sp.add_argument("--at", required=True, help="assignments such as x=1,y=-1/2")
    sp.add_argument("file")
    sp.add_argument("name")
    sp.set_defaults(func=cmd_fiber_dim)

    sp = sub.add_parser("groebner", help="reduced Groebner basis of a ring, module, or its jets")
    jet_opts(sp, required=False)
    sp.add_argument("file")
    sp.add_argument("name")
    sp.set_defaults(func=cmd_groebner)

    from .propcheck import ORACLE_GROUPS

    groups = "\n".join(f"  {g}" + (f"  (kinds: {', '.join(k)})" if k else "") for g, k in ORACLE_GROUPS.items())
    sp = sub.add_parser(
        "check",
        help="run a property oracle",
        epilog="oracles:\n" + groups,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sp.add_argument("oracle", help="oracle group, optionally GROUP:KIND")
    sp.add_argument("--kind", default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--max-deg", type=int, default=2)
    sp.add_argument("--max-vars", type=int, default=2)
    sp.add_argument("--max-order", type=int, default=2)
    sp.add_argument("--fiber-samples", type=int, default=3)
    sp.add_argument("--json", action="store_true", help="emit the JSON report")
    sp.add_argument("--no-timing", action="store_true", help="omit millis from JSON (for reproducible output)")
    sp.set_defaults(func=cmd_check)
    return p


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Execute one command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser(_Parser)
    try:
        args = parser.parse_args(list(argv))
    except _ArgError as exc:
        return EXIT_USAGE, "", f"jetmod: error: {exc}\n"
    out: List[str] = []
    try:
        with resource_limits(args.max_pairs, args.max_degree):
            code = args.func(args, out) or EXIT_OK
    except ResourceError as exc:
        return EXIT_RESOURCE, "", f"jetmod: resource limit: {exc}\n"
    except (ParseError, DomainError, PreconditionError, FactorizationError, InvariantViolation, KeyError) as exc:
        return EXIT_USAGE, "", f"jetmod: error: {exc}\n"
    return code, "".join(line + "\n" for line in out), ""


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        build_parser().parse_args(list(argv))
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
