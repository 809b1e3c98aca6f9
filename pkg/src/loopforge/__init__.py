"""Unbreakable loops: construction, verification and small-order census.

A loop is unbreakable when it has no subloops besides itself and the
trivial one.  The package builds such loops for every order ``n >= 5`` with
multiplication group ``S_n`` (and ``A_n`` for odd ``n >= 7``), and proves
what it builds with permutation-group computations.
"""
from .construct_even import certify_even_generators, construct_even_loop
from .construct_odd import (ALTERNATING, SYMMETRIC, InfeasibleTarget,
                            certify_odd_generators, construct_odd_loop)
from .formats import read_table, write_table
from .loopcore import (CayleyTable, LoopReport, analyze, canonical_form, cyclic_group,
                       is_unbreakable, left_action, multiplication_group, right_action,
                       validate)
from .permgroup import (GroupDescriptor, Parity, Permutation, classify_group,
                        piccard_alternating, piccard_symmetric, sgs_from_generators)
from .search import census, enumerate_loops

__all__ = [
    "ALTERNATING", "SYMMETRIC", "CayleyTable", "GroupDescriptor", "InfeasibleTarget",
    "LoopReport", "Parity", "Permutation", "analyze", "canonical_form", "census",
    "certify_even_generators", "certify_odd_generators", "classify_group",
    "construct_even_loop", "construct_odd_loop", "cyclic_group", "enumerate_loops",
    "is_unbreakable", "left_action", "multiplication_group", "piccard_alternating",
    "piccard_symmetric", "read_table", "right_action", "sgs_from_generators", "validate",
    "write_table",
]
