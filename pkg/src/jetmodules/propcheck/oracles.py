"""One oracle per structural statement about jets and differential operators.

Every oracle has a seeded instance generator, optional golden instances, and a trial
function that rebuilds everything from the serialized instance and raises
``CheckFailure`` on the first violated property. Isomorphism claims are verified by
constructing the comparison map, checking that it is well defined and surjective,
and comparing dimensions (global when finite, fiberwise otherwise).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, prod

from ..diffop import DiffOperator, JetHom, FactorizationError, do_rank_free, factor_through_jets, hom_to_op, op_to_hom
from ..groebner import MonomialOrder, buchberger
from ..jetcore import (
    JetAlgebra,
    JetModule,
    base_change_0,
    base_change_I,
    base_change_II,
    base_change_III,
    cotangent_psi,
    exterior_gamma,
    exterior_gamma_modules,
    graded_piece,
    restriction_map,
    tensor_theta,
)
from ..polycore import Poly, multi_indices, taylor_shift
from ..presentations import (
    INFINITE,
    AlgebraPresentation,
    FPModule,
    ModuleHom,
    RingMap,
    is_torsion_element,
    jacobian_smooth,
    smith_normal_form,
    span_presentation,
)
from ..syntax import format_matrix, parse_matrix
from .core import CheckFailure, Instance, register, require
from .fixtures import (
    additive,
    dims_agree,
    get_module,
    get_operator,
    get_poly,
    get_polys,
    get_ring,
    put_module,
    put_operator,
    put_polys,
    put_ring,
    rand_coeff,
    rand_module,
    rand_operator,
    rand_poly,
    rand_ring,
    rand_zero_dim_relations,
    sample_points,
)


def _order(rng, cfg, cap=2):
    return rng.randint(1, min(cfg.max_order, cap))


def _check_map(cm_hom: ModuleHom, stage: str):
    require(cm_hom.is_well_defined(), f"{stage}:well_defined", "a relation does not map into the target relations")
    require(cm_hom.ring_map.is_surjective(), f"{stage}:ring_surjective", "ring map is not onto")
    require(cm_hom.is_surjective(), f"{stage}:surjective", "a target generator is not in the image")


def _unit(vec_len, j, ring):
    return [ring.one() if k == j else ring.zero() for k in range(vec_len)]


# -- base change ---------------------------------------------------------------------


def _param_ring(rng, cfg) -> AlgebraPresentation:
    a = ("a",)
    if rng.random() < 0.5:
        p = Poly.monomial({"a": rng.randint(1, 2)}, a) + Poly.const(rng.randint(-2, 2), a)
        return AlgebraPresentation(a, [p])
    return AlgebraPresentation(a)


def _relative_ring(rng, cfg, A: AlgebraPresentation, names) -> AlgebraPresentation:
    """A[names] / (relations monic in each new variable, coefficients in A)."""
    vars = A.variables + tuple(names)
    rels = [f.embed(vars) for f in A.relations]
    for v in names:
        if rng.random() < 0.7:
            d = rng.randint(1, cfg.max_deg)
            f = Poly.monomial({v: d}, vars) + rand_poly(rng, vars, d - 1, nterms=2) if d > 1 else Poly.monomial({v: 1}, vars) + rand_poly(rng, A.variables, 1, nterms=2).embed(vars)
            rels.append(f)
    return AlgebraPresentation(vars, rels)


def _gen_base_change(kind):
    def gen(rng, cfg):
        inst = {"kind": kind, "N": str(_order(rng, cfg))}
        if kind == "zero":
            nx = 2 if cfg.max_vars >= 3 and rng.random() < 0.3 else 1
            put_ring(inst, "A", rand_ring(rng, ("x", "y")[:nx], cfg.max_deg))
            put_ring(inst, "A2", rand_ring(rng, ("u",), cfg.max_deg))
            return inst
        A = _param_ring(rng, cfg)
        B = _relative_ring(rng, cfg, A, ("x",))
        put_ring(inst, "B", B)
        put_module(inst, "M", rand_module(rng, B, cfg.max_deg - 1 if cfg.max_deg > 1 else 1, max_gens=2, max_rows=1))
        if kind in ("one", "three"):
            A2 = _relative_ring(rng, cfg, A, ("u",))
            put_ring(inst, "A2", A2)
            if kind == "three":
                put_module(inst, "W", rand_module(rng, A2, 1, max_gens=1, max_rows=1))
        else:
            put_module(inst, "W", rand_module(rng, A, 1, max_gens=2, max_rows=1))
        return inst

    return gen


def _run_base_change(inst: Instance):
    kind, N = inst["kind"], int(inst["N"])
    if kind == "zero":
        A, A2 = get_ring(inst, "A"), get_ring(inst, "A2")
        cm = base_change_0(A, A2, N)
        _check_map(cm.hom, "beta")
        dims_agree(cm.left, cm.right, A.variables + A2.variables, inst, "dimension")
        return
    B = get_ring(inst, "B")
    M = get_module(inst, "M", B)
    params = ("a",)
    if kind == "one":
        A2 = get_ring(inst, "A2")
        cm = base_change_I(M, params, A2, N)
        base_vars = B.variables + ("u",)
    elif kind == "two":
        W = get_module(inst, "W", AlgebraPresentation(params, [f for f in B.relations if set(f.used_vars()) <= {"a"}]))
        cm = base_change_II(M, params, W, N)
        base_vars = B.variables
    else:
        A2 = get_ring(inst, "A2")
        W = get_module(inst, "W", A2)
        cm = base_change_III(M, params, W, N)
        base_vars = B.variables + ("u",)
    _check_map(cm.hom, "alpha" if kind != "one" else "beta")
    dims_agree(cm.left, cm.right, base_vars, inst, "dimension")


def _bc_golden():
    out = []
    # A = Q[x]/(x^2), A' = Q[u]: both sides specialize to the 3-dimensional jet algebra
    out.append({"kind": "zero", "N": "1", "A.vars": "x", "A.rels": "x^2", "A2.vars": "u", "A2.rels": ""})
    # identity base change, M = B
    out.append({"kind": "one", "N": "1", "B.vars": "a,x", "B.rels": "x^2 - a", "M.ngens": "1", "M.matrix": "[]", "A2.vars": "a,u", "A2.rels": "u"})
    # W free: both sides free of equal rank
    out.append({"kind": "two", "N": "2", "B.vars": "a,x", "B.rels": "x^2 - a", "M.ngens": "1", "M.matrix": "[]", "W.ngens": "2", "W.matrix": "[]"})
    out.append({"kind": "three", "N": "1", "B.vars": "a,x", "B.rels": "x^2 - a", "M.ngens": "1", "M.matrix": "[[x]]", "A2.vars": "a,u", "A2.rels": "u^2 - a", "W.ngens": "1", "W.matrix": "[[u - 1]]"})
    return out


for _k in ("zero", "one", "two", "three"):
    register(f"base_change:{_k}", _gen_base_change(_k), [g for g in _bc_golden() if g["kind"] == _k])(_run_base_change)


# -- exterior products -----------------------------------------------------------------


def _gen_exterior(kind):
    def gen(rng, cfg):
        N = _order(rng, cfg, cap=2 if kind != "operator" else 3)
        inst = {"kind": kind, "N": str(N)}
        if kind == "operator":
            A, B = AlgebraPresentation(("x",)), AlgebraPresentation(("y",))
            put_operator(inst, "D", rand_operator(rng, A, rng.randint(0, N), 2))
            put_operator(inst, "E", rand_operator(rng, B, rng.randint(0, N), 2))
            put_polys(inst, "fg", [rand_poly(rng, ("x",), 4), rand_poly(rng, ("y",), 4)])
            return inst
        A = rand_ring(rng, ("x",), cfg.max_deg, zero_dim_bias=0.6)
        B = rand_ring(rng, ("y",), cfg.max_deg, zero_dim_bias=0.6)
        put_ring(inst, "A", A)
        put_ring(inst, "B", B)
        if kind == "module":
            put_module(inst, "M", rand_module(rng, A, 1, max_gens=2, max_rows=1))
            put_module(inst, "W", rand_module(rng, B, 1, max_gens=1, max_rows=1))
        return inst

    return gen


def diagonal_power_inclusion(A: AlgebraPresentation, B: AlgebraPresentation, N: int, degree: int | None = None) -> bool:
    """Every dx/dy-monomial of degree 2N+1 (or ``degree``) lies in (I_A^{N+1} + I_B^{N+1})."""
    AB = A.tensor(B)
    jm = {v: "d" + v for v in AB.variables}
    vars = AB.variables + tuple(jm.values())
    rels = [f.embed(vars) for f in AB.relations]
    for f in AB.relations:
        rels.append((taylor_shift(f, jm, max(f.degree(), 0)) - f).embed(vars))
    dA = ["d" + v for v in A.variables]
    dB = ["d" + v for v in B.variables]
    for I in multi_indices(len(dA), N + 1, exact=True):
        rels.append(Poly.monomial(dict(zip(dA, I)), vars))
    for I in multi_indices(len(dB), N + 1, exact=True):
        rels.append(Poly.monomial(dict(zip(dB, I)), vars))
    ring = AlgebraPresentation(vars, rels)
    dall = dA + dB
    deg = 2 * N + 1 if degree is None else degree
    return all(ring.contains(Poly.monomial(dict(zip(dall, I)), vars)) for I in multi_indices(len(dall), deg, exact=True))


def tensor_operators(D: DiffOperator, E: DiffOperator) -> DiffOperator:
    """D (x) E on the tensor product of the two (disjoint) polynomial rings."""
    ring = D.ring.tensor(E.ring)
    coeffs = {}
    for I, a in D.coeffs.items():
        for J, b in E.coeffs.items():
            coeffs[I + J] = a[0][0].embed(ring.variables) * b[0][0].embed(ring.variables)
    return DiffOperator.scalar(ring, coeffs, D.dvars + E.dvars)


def _run_exterior(inst: Instance):
    kind, N = inst["kind"], int(inst["N"])
    if kind == "operator":
        A, B = AlgebraPresentation(("x",)), AlgebraPresentation(("y",))
        D, E = get_operator(inst, "D", A), get_operator(inst, "E", B)
        f, g = get_polys(inst, "fg", ("x", "y"))
        DE = tensor_operators(D, E)
        lhs = DE.apply([f * g])[0]
        rhs = D.apply([f.embed(("x",))])[0].embed(("x", "y")) * E.apply([g.embed(("y",))])[0].embed(("x", "y"))
        require(lhs == rhs, "pure_tensor", f"{lhs} != {rhs}")
        try:
            H = factor_through_jets(DE.apply, DE.ring, 1, 1, 2 * N)
        except FactorizationError as exc:
            raise CheckFailure("factorization", str(exc))
        require(hom_to_op(H) == DE, "factorization", "recovered operator differs")
        return
    A, B = get_ring(inst, "A"), get_ring(inst, "B")
    require(diagonal_power_inclusion(A, B, N), "inclusion", "a degree-(2N+1) jet monomial is not in the product ideal")
    base_vars = A.variables + B.variables
    if kind == "algebra":
        upper, gamma = exterior_gamma(A, B, N)
        fa, fb = JetAlgebra(A, N), JetAlgebra(B, N)
    else:
        M, W = get_module(inst, "M", A), get_module(inst, "W", B)
        upper, gamma = exterior_gamma_modules(M, W, N)
        fa, fb = JetModule(M, N), JetModule(W, N)
    _check_map(upper.hom, "upper")
    _check_map(gamma.hom, "gamma")
    da, db, dm = fa.dimension(), fb.dimension(), upper.right.dimension()
    if INFINITE not in (da, db):
        require(dm == da * db, "product_dimension", f"{dm} != {da}*{db}")
    else:
        for pt in sample_points(inst, base_vars, 3):
            pa = {k: v for k, v in pt.items() if k in A.variables}
            pb = {k: v for k, v in pt.items() if k in B.variables}
            fm = upper.right.fiber_dimension(pt)
            require(fm == fa.fiber_dimension(pa) * fb.fiber_dimension(pb), "product_dimension", f"at {pt}")


def _ext_golden():
    return [
        {"kind": "algebra", "N": "1", "A.vars": "x", "A.rels": "", "B.vars": "y", "B.rels": ""},
        {"kind": "operator", "N": "1", "D": "d(x)", "D.dvars": "x", "E": "d(y)", "E.dvars": "y", "fg": "x^2, y"},
        {"kind": "module", "N": "1", "A.vars": "x", "A.rels": "", "B.vars": "y", "B.rels": "", "M.ngens": "2", "M.matrix": "[]", "W.ngens": "1", "W.matrix": "[]"},
    ]


for _k in ("algebra", "module", "operator"):
    register(f"exterior:{_k}", _gen_exterior(_k), [g for g in _ext_golden() if g["kind"] == _k])(_run_exterior)


# -- tensor products -------------------------------------------------------------------------


def _gen_tensor(rng, cfg):
    inst = {"N": str(_order(rng, cfg))}
    vars = ("x", "y")[: rng.randint(1, min(2, cfg.max_vars))]
    A = rand_ring(rng, vars, cfg.max_deg, zero_dim_bias=0.6)
    put_ring(inst, "A", A)
    put_module(inst, "M", rand_module(rng, A, 1, max_gens=2, max_rows=1))
    put_module(inst, "W", rand_module(rng, A, 1, max_gens=1, max_rows=1))
    return inst


@register(
    "tensor_products",
    _gen_tensor,
    [
        {"N": "1", "A.vars": "x", "A.rels": "", "M.ngens": "2", "M.matrix": "[]", "W.ngens": "1", "W.matrix": "[[x^2 - 1]]"},
        {"N": "2", "A.vars": "x", "A.rels": "x^3", "M.ngens": "1", "M.matrix": "[]", "W.ngens": "1", "W.matrix": "[]"},
        {"N": "1", "A.vars": "x", "A.rels": "", "M.ngens": "1", "M.matrix": "[[x^2]]", "W.ngens": "1", "W.matrix": "[[x^2]]"},
    ],
)
def _run_tensor(inst):
    N = int(inst["N"])
    A = get_ring(inst, "A")
    M, W = get_module(inst, "M", A), get_module(inst, "W", A)
    cm = tensor_theta(M, W, N)
    _check_map(cm.hom, "theta")
    dims_agree(cm.left, cm.right, A.variables, inst, "dimension")


# -- exact sequences ---------------------------------------------------------------------------


def _dx_part(module: FPModule, jet: JetAlgebra, ngens: int, base_vars):
    vecs = []
    for j in range(ngens):
        for I in jet.dx_indices(1, exact=True):
            v = [jet.zero()] * ngens
            v[j] = jet.dx_monomial(I)
            vecs.append(v)
    return span_presentation(module, vecs, base_vars)


def _gen_exact(kind):
    def gen(rng, cfg):
        inst = {"kind": kind}
        if kind == "jet_bundle":
            inst["N"] = str(rng.randint(1, cfg.max_order))
            vars = ("x", "y")[: rng.randint(1, min(2, cfg.max_vars))]
            A = AlgebraPresentation(vars, rand_zero_dim_relations(rng, vars, cfg.max_deg)) if rng.random() < 0.7 else AlgebraPresentation(vars)
            put_ring(inst, "A", A)
            put_module(inst, "M", rand_module(rng, A, 1, max_gens=2, max_rows=1) if A.relations else FPModule.free(A, rng.randint(1, 2)))
        elif kind in ("closed_I", "closed_II"):
            inst["N"] = str(_order(rng, cfg))
            vars = ("x", "y")[: rng.randint(1, min(2, cfg.max_vars))]
            A = rand_ring(rng, vars, cfg.max_deg, zero_dim_bias=0.3)
            put_ring(inst, "A", A)
            put_polys(inst, "I", rand_zero_dim_relations(rng, vars, cfg.max_deg))
            put_module(inst, "M", rand_module(rng, A, 1, max_gens=2, max_rows=1))
        elif kind == "cotangent_1":
            vars = ("x", "y")[: rng.randint(1, min(2, cfg.max_vars))]
            put_ring(inst, "A", AlgebraPresentation(vars))
            roots = rng.sample(range(-3, 4), rng.randint(1, 2))
            xs = [Poly.var(vars[0], vars)]
            f = prod((xs[0] - r for r in roots), start=Poly.const(1, vars))
            ideal = [f] + [Poly.var(v, vars) - rand_poly(rng, vars[:1], 1, nterms=2) for v in vars[1:]]
            put_polys(inst, "I", ideal)
            if rng.random() < 0.7:
                inst["smooth"] = "1"
                put_module(inst, "M", FPModule.free(AlgebraPresentation(vars), rng.randint(1, 2)))
            else:
                inst["smooth"] = "0"
                put_module(inst, "M", rand_module(rng, AlgebraPresentation(vars), 1, max_gens=2, max_rows=1))
        elif kind == "cotangent_2":
            Bv = ("y",)
            if rng.random() < 0.5:
                roots = rng.sample(range(-3, 4), rng.randint(1, 2))
                yv = Poly.var("y", Bv)
                B = AlgebraPresentation(Bv, [prod((yv - r for r in roots), start=Poly.const(1, Bv))])
            else:
                B = AlgebraPresentation(Bv)
            put_ring(inst, "B", B)
            if rng.random() < 0.7:
                inst["smooth"] = "1"
                put_module(inst, "M", FPModule.free(B, rng.randint(1, 2)))
            else:
                inst["smooth"] = "0"
                put_module(inst, "M", rand_module(rng, B, 1, max_gens=2, max_rows=1))
        else:  # smooth_flat
            inst["N"] = str(_order(rng, cfg))
            a = ("a",)
            p = Poly.var("a", a) - rng.randint(-2, 2)
            q = Poly.var("a", a) - rng.randint(-2, 2)
            if rng.random() < 0.3:
                q = q * (Poly.var("a", a) - rng.randint(-2, 2))
            put_polys(inst, "pq", [p, q])
            inst["rank"] = str(rng.randint(1, 2))
        return inst

    return gen


def _run_exact(inst: Instance):
    kind = inst["kind"]
    if kind == "jet_bundle":
        N = int(inst["N"])
        A = get_ring(inst, "A")
        M = get_module(inst, "M", A)
        top, low = JetModule(M, N), JetModule(M, N - 1)
        piece = graded_piece(top)
        proj = ModuleHom(top.module, low.module, [low.module.generator(j) for j in range(M.ngens)], RingMap(top.jet, low.jet))
        _check_map(proj, "projection")
        for j in range(M.ngens):
            for I in top.jet.dx_indices(N, exact=True):
                require(low.contains(proj.apply(top.generator(j, I))), "composite", f"dx^{I} e_{j} survives")
        additive(top, [piece, low], A.variables, inst, "additivity")
        return
    if kind in ("closed_I", "closed_II"):
        N = int(inst["N"])
        A = get_ring(inst, "A")
        ideal = get_polys(inst, "I", A.variables)
        M0 = get_module(inst, "M", A)
        if kind == "closed_I":
            # F is an O_Y-module: impose the ideal of Y
            M = M0.with_relations([_scaled(M0.ngens, j, f, A) for f in ideal for j in range(M0.ngens)])
            cm = restriction_map(M, ideal, N)
            JX, JY = cm.left, cm.right
            gens = [_scaled(M.ngens, j, JX.jet.p1(f), JX.jet) for f in ideal for j in range(M.ngens)]
            middle = JX.module
        else:
            M = M0
            JX = JetModule(M, N)
            middle = JX.module.with_relations([_scaled(M.ngens, j, JX.jet.p1(f), JX.jet) for f in ideal for j in range(M.ngens)])
            JY = JetModule(M.with_relations([_scaled(M.ngens, j, f, A) for f in ideal for j in range(M.ngens)]).over(A.quotient(ideal)), N)
            gens = [_scaled(M.ngens, j, JX.jet.p2(f), JX.jet) for f in ideal for j in range(M.ngens)]
        right = JY.module
        hom = ModuleHom(middle, right, [right.generator(j) for j in range(M.ngens)], RingMap(JX.jet, JY.jet))
        _check_map(hom, "restriction")
        for g in gens:
            require(right.contains(hom.apply(g)), "composite", "ideal element survives restriction")
        left = span_presentation(middle, gens, JX.jet.variables)
        additive(middle, [left, right], A.variables, inst, "additivity")
        return
    if kind == "cotangent_1":
        A = get_ring(inst, "A")
        ideal = get_polys(inst, "I", A.variables)
        M = get_module(inst, "M", A)
        psi, src, P = cotangent_psi(M, ideal)
        jet = psi.target.ring
        require(psi.is_well_defined(), "psi:well_defined", "psi does not kill I^2 M")
        E = A.quotient(ideal)
        JE = JetModule(M.with_relations([_scaled(M.ngens, j, f, A) for f in ideal for j in range(M.ngens)]).over(E), 1)
        res = ModuleHom(P, JE.module, [JE.module.generator(j) for j in range(M.ngens)], RingMap(jet, JE.jet))
        _check_map(res, "restriction")
        for v in psi.images:
            require(JE.module.contains(res.apply(v)), "composite", "psi image survives")
        mid = _dx_part(P, jet, M.ngens, A.variables)
        right = _dx_part(JE.module, JE.jet, M.ngens, A.variables)
        image = span_presentation(P, psi.images, A.variables)
        additive(mid, [image, right], A.variables, inst, "exact_middle")
        if inst.get("smooth") == "1":
            additive(src, [image], A.variables, inst, "injective")
        return
    if kind == "cotangent_2":
        B = get_ring(inst, "B")
        M = get_module(inst, "M", B)
        X = B.with_variables(("x",))
        MX = M.over(X)
        JB = JetModule(M, 1)
        ringL = JB.jet.tensor(X)
        PL = JB.module.over(ringL)
        PL = FPModule(ringL, PL.ngens, PL.matrix)
        JM = JetModule(MX, 1)
        JR = JetModule(MX, 1, over=B.variables)
        alpha = ModuleHom(PL, JM.module, [JM.module.generator(j) for j in range(M.ngens)], RingMap(ringL, JM.jet))
        beta = ModuleHom(JM.module, JR.module, [JR.module.generator(j) for j in range(M.ngens)], RingMap(JM.jet, JR.jet, {"dy": 0}))
        require(alpha.is_well_defined(), "alpha:well_defined")
        _check_map(beta, "beta")
        dy = [JM.jet.var("dy")]
        for j in range(M.ngens):
            v = _scaled(M.ngens, j, dy[0], JM.jet)
            require(JR.module.contains(beta.apply(v)), "composite", "beta(alpha(dy e_j)) != 0")
        base_vars = X.variables
        left = _span_dx(PL, ringL, ["dy"], M.ngens, base_vars)
        mid = _span_dx(JM.module, JM.jet, ["dy", "dx"], M.ngens, base_vars)
        image = _span_dx(JM.module, JM.jet, ["dy"], M.ngens, base_vars)
        right = _span_dx(JR.module, JR.jet, ["dx"], M.ngens, base_vars)
        additive(mid, [image, right], base_vars, inst, "exact_middle")
        if inst.get("smooth") == "1":
            additive(left, [image], base_vars, inst, "injective")
        return
    # smooth_flat: 0 -> A/(p) --q--> A/(pq) --> A/(q) -> 0 tensored with a free B-module, B = A[x]
    N = int(inst["N"])
    p, q = get_polys(inst, "pq", ("a",))
    r = int(inst["rank"])
    B = AlgebraPresentation(("a", "x"))
    p, q = p.embed(B.variables), q.embed(B.variables)

    def cyc(g):
        return FPModule(B, r, [_scaled(r, j, g, B) for j in range(r)])

    J1, J, J2 = (JetModule(cyc(g), N, over=("a",)) for g in (p, p * q, q))
    qj = J.jet.p2(q)
    inc = ModuleHom(J1.module, J.module, [_scaled(r, j, qj, J.jet) for j in range(r)], RingMap(J1.jet, J.jet))
    proj = ModuleHom(J.module, J2.module, [J2.module.generator(j) for j in range(r)], RingMap(J.jet, J2.jet))
    require(inc.is_well_defined(), "left:well_defined")
    _check_map(proj, "right")
    for v in inc.images:
        require(J2.module.contains(proj.apply(v)), "composite", "q e_j survives")
    image = span_presentation(J.module, inc.images, J.jet.variables)
    additive(J, [image, J2], ("x",), inst, "exact_middle")
    additive(J1, [image], ("x",), inst, "injective")


def _scaled(n, j, f, ring):
    return [f if k == j else ring.zero() for k in range(n)]


def _span_dx(module, jet, dnames, ngens, base_vars):
    vecs = []
    for j in range(ngens):
        for d in dnames:
            vecs.append(_scaled(ngens, j, jet.var(d), jet))
    return span_presentation(module, vecs, base_vars)


def _exact_golden():
    return [
        {"kind": "jet_bundle", "N": "1", "A.vars": "x", "A.rels": "x^2", "M.ngens": "1", "M.matrix": "[]"},
        {"kind": "jet_bundle", "N": "3", "A.vars": "x,y", "A.rels": "", "M.ngens": "1", "M.matrix": "[]"},
        {"kind": "closed_I", "N": "1", "A.vars": "x", "A.rels": "", "I": "0", "M.ngens": "1", "M.matrix": "[[x^2]]"},
        {"kind": "closed_I", "N": "1", "A.vars": "x", "A.rels": "", "I": "x", "M.ngens": "1", "M.matrix": "[]"},
        {"kind": "closed_II", "N": "1", "A.vars": "x", "A.rels": "", "I": "x", "M.ngens": "1", "M.matrix": "[]"},
        {"kind": "cotangent_1", "smooth": "1", "A.vars": "x", "A.rels": "", "I": "x", "M.ngens": "1", "M.matrix": "[]"},
        {"kind": "cotangent_2", "smooth": "1", "B.vars": "y", "B.rels": "", "M.ngens": "1", "M.matrix": "[]"},
        {"kind": "smooth_flat", "N": "1", "pq": "a, a - 1", "rank": "1"},
    ]


for _k in ("jet_bundle", "closed_I", "closed_II", "cotangent_1", "cotangent_2", "smooth_flat"):
    register(f"exact_sequences:{_k}", _gen_exact(_k), [g for g in _exact_golden() if g["kind"] == _k])(_run_exact)


# -- annihilators ---------------------------------------------------------------------------


def _gen_annihilator(kind):
    def gen(rng, cfg):
        N = _order(rng, cfg)
        inst = {"kind": kind, "N": str(N)}
        vars = ("x", "y")[: rng.randint(1, min(2, cfg.max_vars))]
        if kind == "bound":
            A = rand_ring(rng, vars, cfg.max_deg, zero_dim_bias=0.4)
        else:
            A = AlgebraPresentation(vars)
        put_ring(inst, "A", A)
        k = rng.randint(1, 2 if kind == "bound" else (2 if N == 1 else 1))
        put_polys(inst, "I", [rand_poly(rng, vars, cfg.max_deg, nterms=2, min_deg=1) for _ in range(k)])
        if kind == "factor_power":
            J = JetAlgebra(A, N)
            vals = {}
            for I in J.dx_indices():
                vals[I] = rand_poly(rng, vars, 1, nterms=2)
            inst["H"] = "; ".join(f"{','.join(map(str, I))}: {v}" for I, v in vals.items())
        return inst

    return gen


def _products(gens, k):
    for combo in combinations_with_replacement(range(len(gens)), k):
        out = gens[combo[0]]
        for i in combo[1:]:
            out = out * gens[i]
        yield out


def _run_annihilator(inst):
    kind, N = inst["kind"], int(inst["N"])
    A = get_ring(inst, "A")
    ideal = [f for f in get_polys(inst, "I", A.variables) if f.terms]
    if kind == "bound":
        M = FPModule.cyclic(A, ideal)
        JM = JetModule(M, N)
        if not ideal:
            return
        for g in _products(ideal, N + 1):
            require(JM.contains([JM.jet.p1(g)]), "bound", f"p1({g}) does not kill J^{N}(M)")
        if inst.get("golden") == "1":
            require(JM.dimension() == 2, "golden", f"dimension {JM.dimension()} != 2")
            require(not JM.contains([JM.jet.p1(ideal[0])]), "golden", "x already kills J^1(M)")
        return
    J = JetAlgebra(A, N)
    K = (N + 1) * len(ideal)
    Q = J.quotient([J.p1(f) for f in ideal])
    target = FPModule.cyclic(A, ideal)
    values = {}
    for part in filter(None, (s.strip() for s in inst.get("H", "").split(";"))):
        I, v = part.split(":")
        values[(tuple(int(c) for c in I.split(",")), 0)] = [get_poly({"v": v}, "v", A.variables)]
    H = JetHom(J, 1, 1, values, target)
    for g in _products(ideal, K):
        pg = J.p2(g)
        require(Q.contains(pg), "factor_power", f"p2({g}) is not in p1(I) J^{N}")
        for I in J.dx_indices():
            w = J.normal_form(pg * J.dx_monomial(I))
            require(target.contains(H.apply([w])), "hom_kills", f"H(p2({g}) dx^{I}) != 0 in A/I")


register(
    "annihilator:bound",
    _gen_annihilator("bound"),
    [{"kind": "bound", "N": "1", "A.vars": "x", "A.rels": "", "I": "x", "golden": "1"}, {"kind": "bound", "N": "2", "A.vars": "x", "A.rels": "", "I": ""}],
)(_run_annihilator)
register(
    "annihilator:factor_power",
    _gen_annihilator("factor_power"),
    [{"kind": "factor_power", "N": "1", "A.vars": "x", "A.rels": "", "I": "x", "H": "0: 1; 1: x"}],
)(_run_annihilator)


# -- torsion ---------------------------------------------------------------------------------


def _gen_torsion(rng, cfg):
    t = ("t",)
    m = rng.randint(1, 2)
    rows = [[rand_poly(rng, t, 2, nterms=2) for _ in range(m)] for _ in range(rng.randint(1, 2))]
    inst = {"matrix": format_matrix(rows), "ngens": str(m), "order": str(rng.randint(0, min(cfg.max_order, 2)))}
    inst["c0"] = str(rand_coeff(rng))
    inst["B"] = format_matrix([[rand_poly(rng, t, 1, nterms=1) for _ in range(m)] for _ in range(m)])
    inst["A"] = "; ".join(format_matrix([[rand_poly(rng, t, 1, nterms=1) for _ in range(m)] for _ in range(m)]) for _ in range(int(inst["order"])))
    return inst


def torsion_operator(M: FPModule, inst: Instance):
    """A random operator well defined on M = coker, assembled in Smith coordinates."""
    R = M.ring
    t = R.variables[0]
    m = M.ngens
    snf = smith_normal_form(M.matrix, t) if M.matrix else None
    rank = snf.rank if snf else 0
    tors = [i for i in range(rank) if snf.invariants[i].degree() >= 1]
    L = snf.invariants[tors[-1]].embed(R.variables) if tors else R.one()
    c0 = Fraction(inst["c0"])
    Bm = parse_matrix(inst["B"], R.variables)
    As = [parse_matrix(s, R.variables) for s in filter(None, (x.strip() for x in inst["A"].split(";")))]

    def constrained(mat):
        # no entries from torsion coordinates into free coordinates
        return [[mat[i][j] if not (i >= rank and j < rank) else R.zero() for j in range(m)] for i in range(m)]

    coeffs = {(0,): [[(R.one() * c0 if i == j else R.zero()) + L * constrained(Bm)[i][j] for j in range(m)] for i in range(m)]}
    for k, A in enumerate(As, start=1):
        coeffs[(k,)] = [[L ** k * e for e in row] for row in constrained(A)]
    Dc = DiffOperator(R, m, m, coeffs)
    if snf is None:
        return Dc, None, [], L
    V = [[a.embed(R.variables) for a in row] for row in snf.V]
    Vi = [[a.embed(R.variables) for a in row] for row in snf.V_inv]
    # column vectors: coordinates c = V^T v, back via (V^{-1})^T
    P = DiffOperator(R, m, m, {(0,): [[V[j][i] for j in range(m)] for i in range(m)]})
    Q = DiffOperator(R, m, m, {(0,): [[Vi[j][i] for j in range(m)] for i in range(m)]})
    D = Q.compose(Dc).compose(P)
    gens = [Vi[i] for i in tors]
    return D, snf, gens, L


@register(
    "torsion_preservation",
    _gen_torsion,
    [
        {"matrix": "[[t^2, 0]]", "ngens": "2", "order": "1", "c0": "1", "B": "[[0, 0], [0, 0]]", "A": "[[1, 0], [0, 1]]"},
        {"matrix": "[[t^3, 3*t^2], [0, t^3]]", "ngens": "2", "order": "2", "c0": "2", "B": "[[t, 1], [0, 1]]", "A": "[[1, t], [0, 1]]; [[1, 0], [1, 1]]"},
        {"matrix": "[[t - 1]]", "ngens": "1", "order": "0", "c0": "3", "B": "[[t]]", "A": ""},
    ],
)
def _run_torsion(inst):
    R = AlgebraPresentation(("t",))
    rows = parse_matrix(inst["matrix"], R.variables)
    M = FPModule(R, int(inst["ngens"]), rows)
    D, snf, gens, L = torsion_operator(M, inst)
    tt = R.var("t")
    for row in M.matrix:
        for k in range(4):
            require(M.contains(D.apply([a * tt ** k for a in row])), "well_defined", f"D(t^{k} * relation) not in K")
    N = D.order()
    for g in gens:
        img = D.apply(g)
        require(is_torsion_element(M, img, snf), "torsion", f"D({g}) is not torsion")
        require(M.contains([L ** (N + 1) * a for a in img]), "annihilator", "ann^{N+1} does not kill D(torsion)")
    H = op_to_hom(D)
    require(hom_to_op(H) == D, "correspondence", "jet roundtrip changed the operator")


# -- strictness ---------------------------------------------------------------------------------


def _gen_strict(rng, cfg):
    n = rng.randint(1, min(2, cfg.max_vars))
    N = rng.randint(0, cfg.max_order)
    vars = ("x", "y")[:n]
    R = AlgebraPresentation(vars)
    inst = {"n": str(n), "N": str(N), "m1": str(rng.randint(1, 2)), "m2": str(rng.randint(1, 2))}
    put_operator(inst, "D", rand_operator(rng, R, N + 1, 1, exact_order=True))
    return inst


@register("strictness", _gen_strict, [{"n": "1", "N": "0", "m1": "1", "m2": "1", "D": "d(x)", "D.dvars": "x", "artinian": "1"}])
def _run_strict(inst):
    n, N = int(inst["n"]), int(inst["N"])
    m1, m2 = int(inst["m1"]), int(inst["m2"])
    ranks = [do_rank_free(n, k, m1, m2) for k in range(N + 2)]
    require(all(a < b for a, b in zip(ranks, ranks[1:])), "rank_chain", str(ranks))
    require(ranks == [comb(n + k, n) * m1 * m2 for k in range(N + 2)], "rank_formula", str(ranks))
    vars = ("x", "y")[:n]
    R = AlgebraPresentation(vars)
    D = get_operator(inst, "D", R)
    require(D.order() == N + 1, "order", f"operator has order {D.order()}")
    for v in vars:
        P = DiffOperator.partial(R, v, N + 1)
        try:
            factor_through_jets(P.apply, R, 1, 1, N)
        except FactorizationError:
            pass
        else:
            raise CheckFailure("partial_not_in_DO", f"d({v})^{N + 1} factored through J^{N}")
        H = factor_through_jets(P.apply, R, 1, 1, N + 1)
        require(hom_to_op(H) == P, "partial_in_next", "wrong jet hom for the partial")
    try:
        factor_through_jets(D.apply, R, 1, 1, N)
    except FactorizationError:
        pass
    else:
        raise CheckFailure("random_not_in_DO", f"{D} factored through J^{N}")
    if inst.get("artinian") == "1":
        x = Poly.var("x", ("x",))
        A = AlgebraPresentation(("x",), [x ** 2])
        chain = [JetAlgebra(A, k).dimension() for k in range(5)]
        require(chain == [2, 3, 4, 4, 4], "artinian", str(chain))


# -- invariance ---------------------------------------------------------------------------------


def _gen_localization(rng, cfg):
    vars = ("x", "y")[: rng.randint(1, min(2, cfg.max_vars))]
    A = rand_ring(rng, vars, cfg.max_deg, zero_dim_bias=0.0)
    inst = {"kind": "localization", "N": str(_order(rng, cfg))}
    put_ring(inst, "A", A)
    f = rand_poly(rng, vars, 2, nterms=2)
    if f.is_zero():
        f = Poly.const(1, vars)
    inst["f"] = str(f)
    return inst


def _gen_etale(rng, cfg):
    n = rng.randint(1, min(2, cfg.max_vars))
    xs = ("x", "w")[:n]
    vars = xs + ("y", "z")
    inst = {"kind": "etale", "N": str(_order(rng, cfg)), "xs": ",".join(xs)}
    y = Poly.var("y", vars)
    c = rand_coeff(rng)
    g = y ** rng.randint(2, 3) + Poly.const(rng.randint(-2, 2), vars) * y - Poly.var("x", vars) * c
    if n > 1:
        g = g - rand_poly(rng, ("w",), 1, nterms=1).embed(vars)
    inst["g"] = str(g)
    return inst


def localization_map(A: AlgebraPresentation, f: Poly, N: int):
    """J^N(A)_f -> J^N(A_f) with A_f = A[s]/(s f - 1); both realized by Rabinowitsch."""
    Af = A.with_variables(("s",), [Poly.var("s", A.variables + ("s",)) * f.embed(A.variables + ("s",)) - 1])
    JA = JetAlgebra(A, N)
    vars = JA.variables + ("s",)
    left = AlgebraPresentation(vars, [g.embed(vars) for g in JA.relations] + [Poly.var("s", vars) * f.embed(vars) - 1])
    right = JetAlgebra(Af, N)
    return RingMap(left, right), left, right


def _run_invariance(inst):
    N = int(inst["N"])
    if inst["kind"] == "localization":
        A = get_ring(inst, "A")
        f = get_poly(inst, "f", A.variables)
        phi, left, right = localization_map(A, f, N)
        require(phi.is_surjective(), "surjective", "ds is not reached")
        for pt in sample_points(inst, A.variables, 3, avoid=[f]):
            pt = dict(pt)
            fv = f.evaluate(pt)
            pt["s"] = Fraction(1) / fv
            a = left.fiber_dimension(pt)
            b = right.fiber_dimension(pt)
            require(a == b, "fiber_dimension", f"{a} != {b} at {pt}")
            require(a != INFINITE, "fiber_dimension", "infinite fiber")
        return
    xs = tuple(inst["xs"].split(","))
    vars = xs + ("y", "z")
    g = get_poly(inst, "g", vars)
    gy = g.partial_derivative("y")
    B = AlgebraPresentation(vars, [g, Poly.var("z", vars) * gy - 1])
    J = JetAlgebra(B, N)
    order = MonomialOrder.block(("dy", "dz"), tuple(v for v in J.variables if v not in ("dy", "dz")))
    gb = buchberger(J.relations, order)
    for d in ("dy", "dz"):
        r = gb.normal_form(Poly.var(d, order.variables))
        require(r.degree_in(("dy", "dz")) <= 0, "elimination", f"NF({d}) = {order.format(r)} still involves dy, dz")
    rng_pts = sample_points(inst, ("y",) + xs[1:], 3, avoid=[gy.embed(vars)])
    for pt in rng_pts:
        pt = dict(pt)
        rest = g.subs({k: v for k, v in pt.items()})
        # g is linear in x with a nonzero coefficient: solve for x
        cx = rest.coeff({"x": 1})
        c0 = rest.subs({"x": 0}).constant_coeff()
        if cx == 0:
            continue
        pt["x"] = -c0 / cx
        pt["z"] = Fraction(1) / gy.evaluate(pt)
        fd = J.fiber_dimension(pt)
        require(fd == comb(len(xs) + N, len(xs)), "fiber_rank", f"{fd} != C({len(xs)}+{N},{len(xs)}) at {pt}")


register(
    "invariance:localization",
    _gen_localization,
    [
        {"kind": "localization", "N": "1", "A.vars": "x", "A.rels": "", "f": "x"},
        {"kind": "localization", "N": "2", "A.vars": "x", "A.rels": "", "f": "1"},
    ],
)(_run_invariance)
register(
    "invariance:etale",
    _gen_etale,
    [{"kind": "etale", "N": "1", "xs": "x", "g": "y^2 - x"}, {"kind": "etale", "N": "2", "xs": "x", "g": "y^2 - x"}],
)(_run_invariance)


# -- operator closure -----------------------------------------------------------------------------


def _gen_closure(kind):
    def gen(rng, cfg):
        N = _order(rng, cfg)
        inst = {"kind": kind, "N": str(N)}
        if kind == "tensor_id":
            R = AlgebraPresentation(("x",))
            put_operator(inst, "D", rand_operator(rng, R, N, 2))
            put_polys(inst, "fg", [rand_poly(rng, ("x",), 3), rand_poly(rng, ("y",), 2)])
        elif kind == "base_change":
            R = AlgebraPresentation(("a", "x"))
            put_operator(inst, "D", rand_operator(rng, R, N, 1, dvars=("x",)))
            put_polys(inst, "fg", [rand_poly(rng, ("a", "x"), 3), rand_poly(rng, ("a", "y"), 2)])
        elif kind == "direct_sum":
            R = AlgebraPresentation(("x",))
            put_operator(inst, "D", rand_operator(rng, R, N, 2))
            put_operator(inst, "E", rand_operator(rng, R, rng.randint(0, N), 2))
        elif kind == "kernel_cokernel":
            R = AlgebraPresentation(("t",))
            inst["L"] = str(Poly.var("t", ("t",)) - rng.randint(-2, 2) if rng.random() < 0.6 else rand_poly(rng, ("t",), 2, nterms=2, min_deg=1))
            inst["A"] = "; ".join(str(rand_poly(rng, ("t",), 1, nterms=2)) for _ in range(N + 1))
        else:
            inst["N"] = "1"
            d = rng.randint(2, 3)
            y = Poly.var("y", ("x", "y"))
            g = y ** d + rand_poly(rng, ("x", "y"), d - 1, nterms=2)
            inst["g"] = str(g)
        return inst

    return gen


def pushforward_matrix_map(g: Poly, xi):
    """Express a Q-linear map on B = Q[x][y]/(g) in the A-basis 1, y, ..., y^{d-1}."""
    vars = ("x", "y")
    d = g.degree_in(("y",))
    B = AlgebraPresentation(vars, [g])
    A = AlgebraPresentation(("x",))

    def act(vec):
        elem = B.zero()
        for i, c in enumerate(vec):
            elem = elem + c.embed(vars) * Poly.monomial({"y": i}, vars)
        out = B.normal_form(xi(elem))
        groups = out.coefficients_in(("y",))
        res = [A.zero() for _ in range(d)]
        for (k,), c in groups.items():
            res[k] = c.embed(vars).embed(("x",))
        return res

    return act, A, d


def _run_closure(inst):
    kind, N = inst["kind"], int(inst["N"])
    if kind in ("tensor_id", "base_change"):
        if kind == "tensor_id":
            R, full, params = AlgebraPresentation(("x",)), AlgebraPresentation(("x", "y")), ()
        else:
            R, full, params = AlgebraPresentation(("a", "x")), AlgebraPresentation(("a", "x", "y")), ("a", "y")
        D = get_operator(inst, "D", R)
        f, g = get_polys(inst, "fg", full.variables)
        Dt = DiffOperator.scalar(full, {I: c[0][0].embed(full.variables) for I, c in D.coeffs.items()}, D.dvars)
        lhs = Dt.apply([f * g])[0]
        rhs = D.apply([f.embed(R.variables)])[0].embed(full.variables) * g if set(g.used_vars()) <= {"y"} else None
        if rhs is not None:
            require(lhs == rhs, "tensor_identity", f"{lhs} != {rhs}")
        try:
            H = factor_through_jets(Dt.apply, full, 1, 1, max(D.order(), 0), dvars=D.dvars)
        except FactorizationError as exc:
            raise CheckFailure("factorization", str(exc))
        require(hom_to_op(H) == Dt, "factorization", "jet hom does not match")
        return
    if kind == "direct_sum":
        R = AlgebraPresentation(("x",))
        D, E = get_operator(inst, "D", R), get_operator(inst, "E", R)
        S = D.direct_sum(E)
        try:
            H = factor_through_jets(S.apply, R, 2, 2, max(D.order(), E.order()))
        except FactorizationError as exc:
            raise CheckFailure("factorization", str(exc))
        require(hom_to_op(H) == S, "factorization", "jet hom does not match")
        return
    if kind == "kernel_cokernel":
        R = AlgebraPresentation(("t",))
        L = get_poly(inst, "L", R.variables)
        As = [get_poly({"v": s}, "v", R.variables) for s in inst["A"].split(";")]
        D = DiffOperator.scalar(R, {(k,): (L ** k if k else R.one()) * a for k, a in enumerate(As)})
        LF = FPModule(R, 1, [[L]])
        tt = R.var("t")
        for k in range(4):
            require(LF.contains(D.apply([L * tt ** k])), "image_preserved", f"D(L t^{k}) not in L F")
        # cokernel: the jet hom of D kills p2(L) dx^I e modulo L F
        H = op_to_hom(D, N)
        pL = H.jet.p2(L)
        for I in H.jet.dx_indices():
            w = H.jet.normal_form(pL * H.jet.dx_monomial(I))
            require(LF.contains(H.apply([w])), "cokernel_factor", f"H(p2(L) dx^{I}) not in L F")
        # kernel side: L^{-1} D L is again an operator of order <= N
        conj = D.compose(DiffOperator.multiplication(R, L))
        coeffs = {}
        for I, mat in conj.coeffs.items():
            q, r = _divide(mat[0][0], L)
            require(r.is_zero(), "restriction", "coefficient not divisible by L")
            coeffs[I] = q
        Dr = DiffOperator.scalar(R, coeffs)
        try:
            factor_through_jets(Dr.apply, R, 1, 1, N)
        except FactorizationError as exc:
            raise CheckFailure("restriction_factor", str(exc))
        return
    g = get_poly(inst, "g", ("x", "y"))
    gx, gy = g.partial_derivative("x"), g.partial_derivative("y")

    def xi(h):
        return gy * h.partial_derivative("x") - gx * h.partial_derivative("y")

    act, A, d = pushforward_matrix_map(g, xi)
    try:
        factor_through_jets(act, A, d, d, 1, verify_degree=2)
    except FactorizationError as exc:
        raise CheckFailure("pushforward_factor", str(exc))


def _divide(a: Poly, b: Poly):
    from ..presentations import udivmod

    return udivmod(a, b, "t")


def _closure_golden():
    return [
        {"kind": "tensor_id", "N": "1", "D": "d(x)", "D.dvars": "x", "fg": "x^2, y"},
        {"kind": "direct_sum", "N": "1", "D": "d(x)", "D.dvars": "x", "E": "d(x)", "E.dvars": "x"},
        {"kind": "pushforward", "N": "1", "g": "y^2 - x"},
        {"kind": "kernel_cokernel", "N": "1", "L": "t", "A": "1; 1"},
        {"kind": "base_change", "N": "1", "D": "a*d(x)", "D.dvars": "x", "fg": "a*x^2, y"},
    ]


for _k in ("tensor_id", "base_change", "direct_sum", "kernel_cokernel", "pushforward"):
    register(f"operator_closure:{_k}", _gen_closure(_k), [g for g in _closure_golden() if g["kind"] == _k])(_run_closure)


# -- correspondence ---------------------------------------------------------------------------


def _gen_corr(rng, cfg):
    n = rng.randint(1, min(2, cfg.max_vars))
    vars = ("x", "y")[:n]
    R = AlgebraPresentation(vars)
    order = rng.randint(0, cfg.max_order)
    inst = {"n": str(n), "N": str(order + rng.randint(0, 1))}
    put_operator(inst, "D", rand_operator(rng, R, order, 2))
    inst["f"] = str(rand_poly(rng, vars, 4, nterms=3))
    return inst


@register(
    "correspondence",
    _gen_corr,
    [
        {"n": "1", "N": "1", "D": "d(x)", "D.dvars": "x", "f": "x^3"},
        {"n": "1", "N": "2", "D": "d(x)^2 + x*d(x)", "D.dvars": "x", "f": "x^2"},
        {"n": "1", "N": "0", "D": "x^2 + 1", "D.dvars": "x", "f": "x^3 - x"},
    ],
)
def _run_corr(inst):
    n, N = int(inst["n"]), int(inst["N"])
    vars = ("x", "y")[:n]
    R = AlgebraPresentation(vars)
    D = get_operator(inst, "D", R)
    f = get_poly(inst, "f", vars)
    H = op_to_hom(D, N)
    require(hom_to_op(H) == D, "roundtrip_op", "hom_to_op(op_to_hom(D)) != D")
    require(op_to_hom(hom_to_op(H), N) == H, "roundtrip_hom", "op_to_hom(hom_to_op(H)) != H")
    a = D.apply([f])[0]
    b = H.compose_d([f])[0]
    require(a == b, "evaluation", f"{a} != {b}")


# -- smoothness ------------------------------------------------------------------------------------


def _gen_smooth(rng, cfg):
    vars = ("x", "y")
    f = rand_poly(rng, vars, cfg.max_deg, nterms=3, min_deg=1) + rng.randint(-2, 2)
    return {"A.vars": "x,y", "A.rels": str(f), "dim": "1"}


@register(
    "smoothness",
    _gen_smooth,
    [
        {"A.vars": "x,y", "A.rels": "x^2 + y^2 - 1", "dim": "1", "expect": "1"},
        {"A.vars": "x,y", "A.rels": "x*y", "dim": "1", "expect": "0"},
        {"A.vars": "x,y", "A.rels": "y^2 - x^3 - x^2", "dim": "1", "expect": "0"},
        {"A.vars": "x", "A.rels": "", "dim": "1", "expect": "1"},
    ],
)
def _run_smooth(inst):
    A = get_ring(inst, "A")
    dim = int(inst["dim"])
    smooth, witness = jacobian_smooth(A, dim)
    if "expect" in inst:
        require(smooth == (inst["expect"] == "1"), "jacobian", f"expected smooth={inst['expect']}")
    # cross-check: a hypersurface is smooth iff (f, f_x, f_y) is the unit ideal
    if len(A.relations) == 1:
        f = A.relations[0]
        alt = AlgebraPresentation(A.variables, [f] + [f.partial_derivative(v) for v in A.variables])
        require(smooth == alt.is_zero_ring(), "cross_check", "minor ideal and singular locus disagree")


ORACLE_GROUPS = {
    "base_change": ["zero", "one", "two", "three"],
    "exterior": ["algebra", "module", "operator"],
    "tensor_products": [],
    "exact_sequences": ["jet_bundle", "closed_I", "closed_II", "cotangent_1", "cotangent_2", "smooth_flat"],
    "annihilator": ["bound", "factor_power"],
    "torsion_preservation": [],
    "strictness": [],
    "invariance": ["localization", "etale"],
    "operator_closure": ["tensor_id", "base_change", "direct_sum", "kernel_cokernel", "pushforward"],
    "correspondence": [],
    "smoothness": [],
}
