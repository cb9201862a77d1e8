"""Exact q-series workbench for eta-quotient dissections and congruences."""

from .series import INF, BeyondValidity, NonUnitLead, Series
from .eta import (FAMILIES, EtaQuotientSpec, NonIntegerConstant,
                  PartitionFamily, QuotientSyntaxError, expand_eta,
                  expand_spec, parse)
from .huffing import MOD3, HuffSpec, OffStride, deflate, extract_progression, huff
from .matrices import (InsufficientRows, MatrixTable, SubmatrixView,
                       ZeroPatternViolation, build_matrix, submatrix,
                       source_quotient, target_quotient, verify_cubic_relation,
                       verify_huff_expansion, verify_rearranged_identity)
from .vectors import (CoeffVector, ValuationCheck, advance, chain,
                      check_valuations, expected_progression, initial_vector,
                      reconstruct, step, valuation_floor)
from .verify import (BudgetExceeded, ClaimReport, CongruenceClaim, ItemReport,
                     NonIntegralOffset, SeriesCache, SuiteReport,
                     identity_suite, matrix_suite, oracle_count, oracle_suite,
                     ring_law_suite, theorem_suite, valuation, vector_suite,
                     verify_claim)

__version__ = "0.1.0"
