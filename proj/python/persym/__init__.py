"""Rank census and closed-form counts for stacked Hankel matrices over GF(2)."""

from ._core import (
    CensusCanceled,
    CensusRefused,
    Shape,
    build_example_matrix,
    census,
    conjecture_count,
    count_double_persym,
    count_full_rank_unstructured,
    count_single_persym,
    count_triple_persym,
    dual_moment_check,
    example_shape,
    extract_parameters,
    invertible_fraction,
    materialize,
    rank,
    rearrange_transpose,
    recursion_count,
    triple_expansion_report,
    verify,
)

__all__ = [
    "CensusCanceled",
    "CensusRefused",
    "Shape",
    "build_example_matrix",
    "census",
    "conjecture_count",
    "count_double_persym",
    "count_full_rank_unstructured",
    "count_single_persym",
    "count_triple_persym",
    "dual_moment_check",
    "example_shape",
    "extract_parameters",
    "invertible_fraction",
    "materialize",
    "rank",
    "rearrange_transpose",
    "recursion_count",
    "triple_expansion_report",
    "verify",
]
