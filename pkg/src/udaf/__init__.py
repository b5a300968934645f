"""Strong and weak UDAF equivalence of directed graphs.

Exact integer tools for UDAF digraphs: relator matrices, the elementary
move calculus with replayable certificates, dimension-group invariants,
splittings and a bounded certificate search.
"""

from .certificates import (MoveScript, VerificationReport, builtin, parse_script,
                           serialize_script, verify_script)
from .digraph import (Digraph, FiniteWalk, adjacency_matrix, core, digraph_from_adjacency,
                      digraph_from_relator, is_udaf_digraph, is_udaf_relator, relator_matrix,
                      trace_sequence)
from .dimension import (GroupInvariants, Unsupported, check_det_compatible,
                        dimension_group_invariants, sim_d_equivalent, smith_normal_form,
                        weak_udaf_equivalent)
from .moves import IllegalMove, apply_move, invert_move
from .search import SearchBudget, find_certificate

__all__ = [
    "MoveScript", "VerificationReport", "builtin", "parse_script", "serialize_script",
    "verify_script", "Digraph", "FiniteWalk", "adjacency_matrix", "core",
    "digraph_from_adjacency", "digraph_from_relator", "is_udaf_digraph", "is_udaf_relator",
    "relator_matrix", "trace_sequence", "GroupInvariants", "Unsupported",
    "check_det_compatible", "dimension_group_invariants", "sim_d_equivalent",
    "smith_normal_form", "weak_udaf_equivalent", "IllegalMove", "apply_move", "invert_move",
    "SearchBudget", "find_certificate",
]

__version__ = "0.1.0"
