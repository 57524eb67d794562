"""Minimal free resolutions of monomial ideals over exterior algebras.

Exact computation of linear-quotient orders, graded Betti tables (closed
formula and homology oracle), Poincare series truncations, complexity and
depth, explicit mapping-cone resolutions, and the t-spread strongly
stable toolkit.
"""

from .betti import (
    BettiTable,
    CxDepth,
    NotStableError,
    PoincareTruncation,
    betti_lq,
    betti_stable,
    complexity_and_depth,
    poincare,
    stable_lq_order,
    weak_compositions_count,
)
from .cartan import (
    ResourceLimitError,
    cartan_differential,
    cartan_module_basis,
    oracle_betti,
    stable_cycle_basis,
)
from .exterior import (
    Ambient,
    AmbientMismatchError,
    DivisibilityError,
    Element,
    Monomial,
    ParseError,
    parse_monomial,
    quotient,
    sigma,
    wedge,
)
from .fields import GF2, QQ, FieldError, PrimeField, RationalField, parse_field
from .ideals import (
    ColonByUnitError,
    LQViolation,
    LinearQuotientOrder,
    MonomialIdeal,
    check_linear_quotients,
    colon_by_monomial,
    contains,
    find_lq_order,
    format_ideal,
    ideal_from_support_sets,
    ideal_to_json,
    is_stable,
    is_strongly_stable,
    minimalize,
    parse_ideal,
    reverse_deglex_order,
)
from .linalg import HAVE_SPEEDUPS
from .resolution import (
    DecompositionFunction,
    FreeComplex,
    RegularityResult,
    RegularityWitness,
    ResolutionSymbol,
    betti_from_complex,
    differential_regular,
    is_regular,
    lift_mapping_cone,
    regular_resolution,
    symbol_basis,
    symbol_degree,
    verify_complex,
)
from .tspread import (
    TSpreadError,
    betti_tspread,
    is_tspread,
    is_tspread_ideal,
    is_tspread_strongly_stable,
    lex_lq_order,
    lex_order,
    set_E_formula,
    tspread_closure,
)

__version__ = "0.1.0"

__all__ = [
    "Ambient",
    "AmbientMismatchError",
    "BettiTable",
    "ColonByUnitError",
    "CxDepth",
    "DecompositionFunction",
    "DivisibilityError",
    "Element",
    "FieldError",
    "FreeComplex",
    "GF2",
    "HAVE_SPEEDUPS",
    "LQViolation",
    "LinearQuotientOrder",
    "Monomial",
    "MonomialIdeal",
    "NotStableError",
    "ParseError",
    "PoincareTruncation",
    "PrimeField",
    "QQ",
    "RationalField",
    "RegularityResult",
    "RegularityWitness",
    "ResolutionSymbol",
    "ResourceLimitError",
    "TSpreadError",
    "betti_from_complex",
    "betti_lq",
    "betti_stable",
    "betti_tspread",
    "cartan_differential",
    "cartan_module_basis",
    "check_linear_quotients",
    "colon_by_monomial",
    "complexity_and_depth",
    "contains",
    "differential_regular",
    "find_lq_order",
    "format_ideal",
    "ideal_from_support_sets",
    "ideal_to_json",
    "is_regular",
    "is_stable",
    "is_strongly_stable",
    "is_tspread",
    "is_tspread_ideal",
    "is_tspread_strongly_stable",
    "lex_lq_order",
    "lex_order",
    "lift_mapping_cone",
    "minimalize",
    "oracle_betti",
    "parse_field",
    "parse_ideal",
    "parse_monomial",
    "poincare",
    "quotient",
    "regular_resolution",
    "reverse_deglex_order",
    "set_E_formula",
    "sigma",
    "stable_cycle_basis",
    "stable_lq_order",
    "symbol_basis",
    "symbol_degree",
    "tspread_closure",
    "verify_complex",
    "weak_compositions_count",
    "wedge",
]
