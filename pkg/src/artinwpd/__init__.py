"""Certificates for contracting elements of Artin groups over join-decomposable graphs.

The heavy lifting is in the submodules; the names re-exported here are the
ones most scripts need.
"""

from .coxeter import CoxeterGroup, CoxeterMatrix, dihedral_sweep, tits_reduce
from .defgraph import DefiningGraph, check_hypotheses, join_decompose, parse_graph
from .pipeline import construct, to_document, verify_document

__version__ = "0.1.0"

__all__ = [
    "CoxeterGroup",
    "CoxeterMatrix",
    "DefiningGraph",
    "check_hypotheses",
    "construct",
    "dihedral_sweep",
    "join_decompose",
    "parse_graph",
    "tits_reduce",
    "to_document",
    "verify_document",
]
