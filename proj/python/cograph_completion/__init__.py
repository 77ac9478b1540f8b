"""Inclusion-minimal cograph completion."""

from ._core import (
    CographError,
    Completion,
    Cotree,
    Graph,
    ParseError,
    build_cotree_naive,
    complete,
    generate_gnm,
    generate_random_cotree,
    generate_random_regular,
    insertion_order,
    is_cograph,
    is_minimal_completion,
    min_step_completion,
    parse_edge_list,
)

__all__ = [
    "CographError",
    "Completion",
    "Cotree",
    "Graph",
    "ParseError",
    "build_cotree_naive",
    "complete",
    "generate_gnm",
    "generate_random_cotree",
    "generate_random_regular",
    "insertion_order",
    "is_cograph",
    "is_minimal_completion",
    "min_step_completion",
    "parse_edge_list",
]
