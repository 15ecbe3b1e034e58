"""Exact trivalent graph homology and surgery planning."""

from .errors import (
    DimensionTooSmall,
    Infeasible,
    LoopEdge,
    MalformedPairing,
    NoSolution,
    NotConnected,
    NotTrivalent,
    ResourceLimit,
    TrihomError,
    WrongSize,
)
from .exactla import SparseIntMatrix, left_nullspace, modular_rank, rank, solve_combination
from .homology import (
    ClassBasis,
    DimensionReport,
    certify,
    class_basis,
    dimension,
    express,
    ihx_expand,
    relation_matrix,
)
from .multigraph import (
    DartGraph,
    Isomorphism,
    TadpolePolicy,
    automorphisms,
    canonical_form,
    enumerate_trivalent,
    from_pairing,
)
from .oracle import brute_dimension
from .orientation import (
    ClassStatus,
    Convention,
    GraphClass,
    OrientedLabelling,
    classify,
    h1_action_sign,
    label_change_sign,
    total_sign,
)
from .surgery import SurgeryPlan, VertexType, assign_vertex_types, plan, y_link_report

__version__ = "0.1.0"

__all__ = [
    "ClassBasis",
    "ClassStatus",
    "Convention",
    "DartGraph",
    "DimensionReport",
    "DimensionTooSmall",
    "GraphClass",
    "Infeasible",
    "Isomorphism",
    "LoopEdge",
    "MalformedPairing",
    "NoSolution",
    "NotConnected",
    "NotTrivalent",
    "OrientedLabelling",
    "ResourceLimit",
    "SparseIntMatrix",
    "SurgeryPlan",
    "TadpolePolicy",
    "TrihomError",
    "VertexType",
    "WrongSize",
    "assign_vertex_types",
    "automorphisms",
    "brute_dimension",
    "canonical_form",
    "certify",
    "class_basis",
    "classify",
    "dimension",
    "enumerate_trivalent",
    "express",
    "from_pairing",
    "h1_action_sign",
    "ihx_expand",
    "label_change_sign",
    "left_nullspace",
    "modular_rank",
    "plan",
    "rank",
    "relation_matrix",
    "solve_combination",
    "total_sign",
    "y_link_report",
]
