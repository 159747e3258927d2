from pydantic import BaseModel, ConfigDict, Field, model_validator


class Cnf(BaseModel):
    """Clause list in DIMACS integer notation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    num_vars: int = Field(..., ge=0)
    clauses: tuple[tuple[int, ...], ...] = ()

    @model_validator(mode="after")
    def _check_literals(self) -> "Cnf":
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} outside 1..{self.num_vars}")
        return self

    def satisfied_by(self, assignment: dict[int, int]) -> bool:
        return all(
            any(assignment[abs(lit)] == (1 if lit > 0 else 0) for lit in clause)
            for clause in self.clauses
        )
