"""Exact jet algebras, jet modules and linear differential operators over Q."""

from .diffop import (
    DiffOperator,
    FactorizationError,
    JetHom,
    do_rank_free,
    factor_through_jets,
    format_operator,
    hom_to_op,
    op_to_hom,
)
from .groebner import INFINITE, GroebnerBasis, MonomialOrder, ResourceError, buchberger, resource_limits
from .jetcore import (
    CanonicalMap,
    GradedPiece,
    JetAlgebra,
    JetModule,
    PreconditionError,
    canonical_map,
    graded_piece,
    jet_algebra,
    jet_module,
    solve_universal_factorization,
    universal_derivation,
)
from .polycore import DomainError, Poly, taylor_shift
from .presentations import (
    AlgebraPresentation,
    FPModule,
    InvariantViolation,
    ModuleHom,
    RingMap,
    is_torsion_element,
    jacobian_smooth,
    smith_normal_form,
    span_presentation,
    torsion_filtration,
)
from .session import Session, parse
from .syntax import ParseError, SemanticError, parse_matrix, parse_operator, parse_poly

__all__ = [name for name in dir() if not name.startswith("_")]
