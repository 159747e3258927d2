"""Results of the optimizers."""

from enum import Enum
from typing import Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.domain.entities.objective import Score


class ModelGenerator(BaseModel):
    """Partial interpretation attached to a circuit node.

    For leaves and And nodes its extensions are exactly the node's models; for
    Or nodes they contain at least one optimal model of the node.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    node: int = Field(..., ge=0)
    assignment: dict[int, int] = Field(default_factory=dict)

    def extends(self, interpretation: Mapping[int, int]) -> bool:
        """Whether ``interpretation`` is an extension of this generator."""
        return all(interpretation.get(var) == value for var, value in self.assignment.items())


class OptStatus(str, Enum):
    OPTIMAL = "OPTIMAL"
    NO_SOLUTION = "NO_SOLUTION"


class OptResult(BaseModel):
    """Outcome of an optimization call.

    Attributes:
        status: ``OPTIMAL`` or ``NO_SOLUTION``.
        model: Total witness over the problem's variables (optimal only).
        score: ``evaluate_base`` of the witness (optimal only).
        algorithm: Name of the routine that produced the result.
        stats: Integer counters reported by the routine.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    status: OptStatus
    model: Optional[dict[int, int]] = None
    score: Optional[Score] = None
    algorithm: str = ""
    stats: dict[str, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_payload(self) -> "OptResult":
        optimal = self.status is OptStatus.OPTIMAL
        if optimal != (self.model is not None) or optimal != (self.score is not None):
            raise ValueError("model and score are present exactly for optimal results")
        return self

    @classmethod
    def optimal(
        cls,
        model: Mapping[int, int],
        score: Score,
        algorithm: str,
        stats: Optional[Mapping[str, int]] = None,
    ) -> "OptResult":
        return cls(
            status=OptStatus.OPTIMAL,
            model=dict(sorted(model.items())),
            score=score,
            algorithm=algorithm,
            stats=dict(stats or {}),
        )

    @classmethod
    def no_solution(
        cls, algorithm: str, stats: Optional[Mapping[str, int]] = None
    ) -> "OptResult":
        return cls(status=OptStatus.NO_SOLUTION, algorithm=algorithm, stats=dict(stats or {}))

    @property
    def is_optimal(self) -> bool:
        return self.status is OptStatus.OPTIMAL
