"""Python bindings for the lifescope contract analysis toolkit."""

from ._core import (
    SimilarityError,
    check_erc20,
    compute_metrics,
    extract_functions,
    information_gain,
    keyword_predict,
    lcs_diff,
    porter_stem,
    preprocess,
    render_diff,
    similarity,
    strip_comments,
)

__all__ = [
    "SimilarityError",
    "check_erc20",
    "compute_metrics",
    "extract_functions",
    "information_gain",
    "keyword_predict",
    "lcs_diff",
    "porter_stem",
    "preprocess",
    "render_diff",
    "similarity",
    "strip_comments",
]
