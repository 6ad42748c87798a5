"""Finite-state optimality engine.

Candidate sets are finite-state automata, ranked violable constraints are
mark-weighted transducers, and the optimal surface forms fall out of a
product-label-prune pipeline.  See the README for the model.
"""

from otfsm._core import (
    EngineError,
    Machine,
    augmented_product,
    compare_mark_lists,
    compile_expr,
    constraint_fill,
    constraint_nointervening,
    constraint_ons,
    derive,
    gen_syllabification,
    load_machine,
    oracle_check,
    precompile,
    product,
)

__all__ = [
    "EngineError",
    "Machine",
    "augmented_product",
    "compare_mark_lists",
    "compile_expr",
    "constraint_fill",
    "constraint_nointervening",
    "constraint_ons",
    "derive",
    "gen_syllabification",
    "load_machine",
    "oracle_check",
    "precompile",
    "product",
]
