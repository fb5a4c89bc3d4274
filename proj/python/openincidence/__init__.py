"""Finite open incidence structures: openness certificates, closures,
free amalgams and completions, predimensions, and the built-in witness
configurations."""

from openincidence._core import (  # noqa: F401
    IncidenceError,
    Structure,
    builtin,
    builtin_text,
    classify_one_step,
    closed_witness_bruteforce,
    count_copies_over,
    delta,
    free_amalgam,
    free_completion,
    gaifman_closure,
    hf_closure,
    intrinsic_closure,
    is_nondegenerate,
    is_valid,
    k_iterate,
    open_over,
    valency,
    validate,
    verify_c6,
    verify_hf_order,
)

__all__ = [
    "IncidenceError",
    "Structure",
    "builtin",
    "builtin_text",
    "classify_one_step",
    "closed_witness_bruteforce",
    "count_copies_over",
    "delta",
    "free_amalgam",
    "free_completion",
    "gaifman_closure",
    "hf_closure",
    "intrinsic_closure",
    "is_nondegenerate",
    "is_valid",
    "k_iterate",
    "open_over",
    "valency",
    "validate",
    "verify_c6",
    "verify_hf_order",
]
