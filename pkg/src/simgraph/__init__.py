"""Simultaneous graph recognition toolkit.

Decides whether two graphs sharing a vertex set are simultaneously
chordal, comparability, or permutation graphs; emits machine-checkable
certificates for YES answers and diagnostics or forcing witnesses for
NO answers, all cross-validated against an exhaustive oracle.
"""

from .core import (
    SimGraphError,
    ParseError,
    XInducedMismatch,
    IllegalEdge,
    IllegalForced,
    ForcedNotSupported,
    UnknownVertex,
    NotAnEdge,
    InvalidOrientation,
    CompletionFailure,
    CyclicUnion,
    InconsistentOnX,
    BudgetExceeded,
    InternalInvariantError,
    Graph,
    inverse,
    hat,
    is_transitive,
    find_peo,
    is_peo,
)
from .instance import (
    SharedInstance,
    parse_instance,
    serialize_instance,
    complement_pair,
    union_graph,
    load_fixture,
    fixture_text,
    FIXTURE_NAMES,
)
from . import chordal, comparability, permutation, oracle

__version__ = "0.1.0"

__all__ = [
    "SimGraphError",
    "ParseError",
    "XInducedMismatch",
    "IllegalEdge",
    "IllegalForced",
    "ForcedNotSupported",
    "UnknownVertex",
    "NotAnEdge",
    "InvalidOrientation",
    "CompletionFailure",
    "CyclicUnion",
    "InconsistentOnX",
    "BudgetExceeded",
    "InternalInvariantError",
    "Graph",
    "inverse",
    "hat",
    "is_transitive",
    "find_peo",
    "is_peo",
    "SharedInstance",
    "parse_instance",
    "serialize_instance",
    "complement_pair",
    "union_graph",
    "load_fixture",
    "fixture_text",
    "FIXTURE_NAMES",
    "chordal",
    "comparability",
    "permutation",
    "oracle",
]
