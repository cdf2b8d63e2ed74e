"""Integral points on root stacks P1[sqrt(f)] over Z[1/2q].

Exact decisions via the Brauer pairing on the locally trivial square-class
group, invariants of stacky curves, and a brute-force point-search oracle.
"""

from ._core import (
    beh_group,
    beh_value,
    cross_validate,
    d_of_curve,
    decide,
    epsilon_invariant,
    factorize,
    genus,
    hilbert_symbol,
    is_integral_point,
    is_prime,
    is_simply_connected,
    jacobi,
    legendre,
    pic0_group,
    search,
    squarefree_class,
    transform,
    valuation,
    verify_local,
)

__all__ = [
    "beh_group",
    "beh_value",
    "cross_validate",
    "d_of_curve",
    "decide",
    "epsilon_invariant",
    "factorize",
    "genus",
    "hilbert_symbol",
    "is_integral_point",
    "is_prime",
    "is_simply_connected",
    "jacobi",
    "legendre",
    "pic0_group",
    "search",
    "squarefree_class",
    "transform",
    "valuation",
    "verify_local",
]

__version__ = "0.1.0"
