"""Neron-Severi lattices of principally polarized abelian varieties.

Start from a symbolic period matrix, compute NS(A) and NS(A)/Z[Theta], evaluate
the forms q_r and search for abelian divisors.
"""
from .criteria import (FAILS, FAILS_UP_TO_BOUND, HOLDS, HOLDS_UP_TO_BOUND, ClassificationReport,
                       Representation, Verdict, classify, elliptic_covers,
                       elliptic_factor_target, jacobian_split_report_dim3, represents,
                       splits_off_elliptic_factor)
from .exterior import DimensionMismatch, Multivector, TwoForm, eta_sign, wedge
from .intersection import (PolarizedContext, degree, effectivity_indicator, intersection_number,
                           mixed_power, natural_sharp, q_form, q_form_expanded, q_polynomial,
                           q_symbolic, q_values)
from .nslattice import (InputFormatError, NotInNS, PeriodMatrix, PeriodMatrixError, PolarizedNS,
                        diagonal_period_matrix, dump_document, family_period_matrix,
                        generic_period_matrix, load_document, ns_basis, reduced_coordinates)
from .scalars import PolyParseError, PolyScalar, Symbol, SymbolTable, SymbolTableMismatch
from .search import (DivisorRecord, SearchQuery, congruence_filter, divisibility_predicate,
                     divisor_multiple, divisor_representative, enumerate_divisors, is_primitive,
                     satisfies_target, xr_closed_form, xr_recursive)

__version__ = "0.1.0"
