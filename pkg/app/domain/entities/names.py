"""Name ↔ variable side table.

Circuits stay integer-indexed; human-readable names (package names,
hitting-set elements) are kept here and written next to generated files.
"""

import re

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.errors import InconsistentTermError
from app.domain.entities.circuit import Literal

_SIGNED_INT_RE = re.compile(r"^-?\d+$")


class NameTable(BaseModel):
    """Bijection between variable indices and names."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    names: dict[int, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_bijection(self) -> "NameTable":
        if len(set(self.names.values())) != len(self.names):
            raise ValueError("duplicate variable name")
        for var, name in self.names.items():
            if var < 1:
                raise ValueError(f"invalid variable index {var}")
            if not name or any(ch.isspace() for ch in name) or name.startswith("-"):
                raise ValueError(f"invalid variable name {name!r}")
        return self

    @classmethod
    def from_sequence(cls, names: list[str]) -> "NameTable":
        """Names for variables ``1..len(names)`` in order."""
        return cls(names={i + 1: name for i, name in enumerate(names)})

    def __len__(self) -> int:
        return len(self.names)

    def var_of(self, name: str) -> int:
        for var, candidate in self.names.items():
            if candidate == name:
                return var
        raise ValueError(f"unknown variable name {name!r}")

    def name_of(self, var: int) -> str:
        return self.names.get(var, str(var))

    def resolve(self, token: str) -> Literal:
        """Literal for ``B1``, ``-B1``, ``3`` or ``-3``; names win over indices."""
        negative = token.startswith("-")
        body = token[1:] if negative else token
        if body in self.names.values():
            return Literal(var=self.var_of(body), positive=not negative)
        if _SIGNED_INT_RE.match(token):
            return Literal.from_dimacs(int(token))
        raise ValueError(f"unknown variable {body!r}")

    def resolve_term(self, text: str) -> dict[int, int]:
        """Partial interpretation for a whitespace-separated literal list."""
        gamma: dict[int, int] = {}
        for token in text.split():
            lit = self.resolve(token)
            if gamma.get(lit.var, int(lit.positive)) != int(lit.positive):
                raise InconsistentTermError(f"term fixes {lit.var} both ways")
            gamma[lit.var] = int(lit.positive)
        return gamma
