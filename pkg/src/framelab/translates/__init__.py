"""Intersections of translates of the frame set and the polynomials ``P_e``."""

from .evaluate import (BatchEvaluation, Membership, MembershipReport, evaluate_batch,
                       intersection_membership, membership, pe_eval)
from .instance import (Case, TranslateInstance, case_of, classify, combined_family,
                       family_from_json, operator_blocks, random_family,
                       random_instance, span_corollary_instance)
from .interpolate import Polynomial, interpolate_pe, monomial_exponents
from .slices import GridSpec, SliceGrid, slice_grid
from .verify import (BiconditionalReport, MeasureEstimate, coefficient_blocks,
                     failure_measure, verify_biconditional, wilson_interval)

__all__ = [
    "BatchEvaluation", "BiconditionalReport", "Case", "GridSpec", "MeasureEstimate",
    "Membership", "MembershipReport", "Polynomial", "SliceGrid", "TranslateInstance",
    "case_of", "classify", "coefficient_blocks", "combined_family", "evaluate_batch",
    "failure_measure", "family_from_json", "interpolate_pe", "intersection_membership",
    "membership", "monomial_exponents", "operator_blocks", "pe_eval", "random_family",
    "random_instance", "slice_grid", "span_corollary_instance", "verify_biconditional",
    "wilson_interval",
]
