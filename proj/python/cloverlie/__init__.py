"""Python bindings for the clover restricted Lie algebra library."""

from ._core import (
    CloverError,
    Context,
    Derivation,
    Tuple,
    bracket,
    closure_dimensions,
    context,
    gk_constant,
    growth_sandwich,
    growth_table,
    nil_sampling,
    p_power,
    pivot,
    relation_suite,
    verify_basis,
)

__all__ = [
    "CloverError",
    "Context",
    "Derivation",
    "Tuple",
    "bracket",
    "closure_dimensions",
    "context",
    "gk_constant",
    "growth_sandwich",
    "growth_table",
    "nil_sampling",
    "p_power",
    "pivot",
    "relation_suite",
    "verify_basis",
]
