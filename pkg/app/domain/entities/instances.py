"""Bundles returned by the instance generators."""

from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.domain.entities.circuit import NnfCircuit
from app.domain.entities.cnf import Cnf
from app.domain.entities.names import NameTable
from app.domain.entities.obdd import ObddManager
from app.domain.entities.objective import SUM, Aggregator, Score, WeightedBase


class ReductionInstance(BaseModel):
    """Constraint circuit, weighted base and aggregator of a generated instance.

    ``threshold`` is the optimal score that certifies a yes-instance when the
    construction defines one.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    circuit: NnfCircuit
    base: WeightedBase
    aggregator: Aggregator = SUM
    names: NameTable = Field(default_factory=NameTable)
    threshold: Optional[Score] = None


class OwaReduction(BaseModel):
    """Linear base and OWA weights with ``g(ω) = f(ω) + offset`` for every ω."""

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    base: WeightedBase
    aggregator: Aggregator
    k: Fraction
    offset: Fraction


class NegativeLiteralElimination(BaseModel):
    """Positive base plus the OBDD chain ``⋀ (¬x ⇔ n_x)`` linking the copies.

    ``renaming`` maps each variable that occurred negatively to its copy
    ``n_x``; ``manager`` holds ``constraint`` under an order interleaving
    ``x`` and ``n_x``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    base: WeightedBase
    manager: ObddManager
    constraint: int
    renaming: dict[int, int] = Field(default_factory=dict)


class PackageDemo(BaseModel):
    """Package dependency example: constraint, request and two preference bases."""

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    cnf: Cnf
    circuit: NnfCircuit
    names: NameTable
    gamma: dict[int, int]
    minimal_change: WeightedBase
    newest: WeightedBase
