"""Domain entities package.

Immutable value objects: circuits, OBDDs, weighted bases, scores and
optimization results.
"""

from app.domain.entities.circuit import CircuitBuilder, Literal, NnfCircuit, NnfNode, NodeKind
from app.domain.entities.obdd import FALSE_ID, TRUE_ID, BoolOp, ObddManager
from app.domain.entities.objective import (
    LEXIMAX,
    SUM,
    Aggregator,
    AggregatorKind,
    Family,
    FamilyTag,
    Score,
    WeightedBase,
    WeightedItem,
)
from app.domain.entities.results import ModelGenerator, OptResult, OptStatus

__all__ = [
    "FALSE_ID",
    "LEXIMAX",
    "SUM",
    "TRUE_ID",
    "Aggregator",
    "AggregatorKind",
    "BoolOp",
    "CircuitBuilder",
    "Family",
    "FamilyTag",
    "Literal",
    "ModelGenerator",
    "NnfCircuit",
    "NnfNode",
    "NodeKind",
    "ObddManager",
    "OptResult",
    "OptStatus",
    "Score",
    "WeightedBase",
    "WeightedItem",
]
