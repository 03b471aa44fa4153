"""Maximally recoverable local reconstruction codes over small finite fields."""

from .constructions import construct_h2, construct_h3
from .elliptic import (ProjectivePoint, SingularCurve, TripleFamily, TriSumSet, behrend_set,
                       code_to_triples, curve_phi, matching_collinear_family, matching_trisum_set,
                       phi_inverse, triples_to_code)
from .field import (Field, FieldElement, SubgroupData, discrete_log, field_of_order,
                    make_cubic_extension, make_field, primitive_element, subgroup_with_cosets)
from .fieldsearch import (FieldSearchResult, find_field_h2, find_field_h3, search_field_char2,
                          search_field_prime)
from .lrc import (BoundReport, ErasurePattern, LrcCode, LrcParams, assemble, count_mr_patterns,
                  decode_erasures, encode, enumerate_mr_patterns, generator_matrix,
                  is_correctable, local_repair, lower_bound_q)
from .matrix import (Matrix, block_det_lhs, block_det_rhs, cauchy, cauchy_det_closed_form, det,
                     null_space, rank, solve, vandermonde)
from .verify import VerifyResult, verify_mr

__version__ = "0.1.0"
