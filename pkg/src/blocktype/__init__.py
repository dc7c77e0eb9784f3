"""Exact computations in the Block-type Lie algebras B(q) and their central
extensions: brackets, the ad-finiteness criterion, automorphisms,
derivations, windowed H^1 and H^2, and an isomorphism search."""

from .cohomology import (CohomReport, LinearFunctional, WindowForm, canonical_cocycle,
                         coboundary_from_functional, cocycle_residuals, normalize_cocycle,
                         solve_h1, solve_h2)
from .core import (AlgebraCfg, BasisIndex, Element, L, Window, ZERO, ad_orbit, ad_pow, bracket,
                   central, jacobi_residual)
from .errors import (BlockTypeError, ElementParseError, InternalError, InvalidElementError,
                     NoMinimalTermError, PreconditionError, WindowTooSmallError)
from .grammar import format_element, parse_element
from .isomorphism import (IsoSearchResult, b1_embedding_check, constrained_iso_search,
                          divisibility_obstruction, virasoro_embedding_check)
from .morphisms import (AutParams, GeneratorAssignment, WindowMap, apply_aut, compose_aut,
                        d0_map, extend_derivation, hom_residuals, inner_derivation,
                        inner_solution, invert_aut, leibniz_residuals)
from .order import (Finiteness, FinitenessVerdict, local_finiteness, local_nilpotency,
                    min_term, precedes)
from .report import ResidualReport

__version__ = "0.1.0"

__all__ = [
    "ad_orbit", "ad_pow", "AlgebraCfg", "apply_aut", "AutParams", "b1_embedding_check",
    "BasisIndex", "BlockTypeError", "bracket", "canonical_cocycle", "central",
    "coboundary_from_functional", "cocycle_residuals", "CohomReport", "compose_aut",
    "constrained_iso_search", "d0_map", "divisibility_obstruction", "Element",
    "ElementParseError", "extend_derivation", "format_element", "Finiteness", "FinitenessVerdict",
    "GeneratorAssignment", "hom_residuals", "inner_derivation", "inner_solution",
    "InternalError", "InvalidElementError", "invert_aut", "IsoSearchResult", "jacobi_residual",
    "L", "leibniz_residuals", "LinearFunctional", "local_finiteness", "local_nilpotency",
    "min_term", "NoMinimalTermError", "normalize_cocycle", "parse_element", "precedes", "PreconditionError", "ResidualReport",
    "solve_h1", "solve_h2", "virasoro_embedding_check", "Window", "WindowForm", "WindowMap",
    "WindowTooSmallError", "ZERO",
]
