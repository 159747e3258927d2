"""Weighted bases, aggregators and scores.

A weighted base is an ordered multiset of ``(formula, weight)`` items
representing the pseudo-Boolean function ``ω ↦ ⊕ wᵢ·φᵢ(ω)``. All weights and
scores are exact ``Fraction`` values.
"""

import re
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.errors import (
    FormatError,
    IncomparableScoresError,
    InconsistentTermError,
    OwaArityMismatchError,
)
from app.domain.entities.circuit import Assignment, Literal, NnfCircuit

_WEIGHT_RE = re.compile(r"^[+-]?(\d+)(\.\d+|/\d+)?$")


def parse_weight(text: str) -> Fraction:
    """Parse ``3``, ``-1.25`` or ``7/2`` into an exact rational.

    Raises:
        FormatError: If ``text`` is not a decimal or ``a/b`` number.
    """
    text = text.strip()
    if not _WEIGHT_RE.match(text):
        raise FormatError(f"invalid weight {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {text!r}") from None


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not weights")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_weight(value)
    raise ValueError(f"cannot use {value!r} as an exact weight")


class ItemKind(str, Enum):
    TERM = "term"
    CIRCUIT = "circuit"


class WeightedItem(BaseModel):
    """One ``(φᵢ, wᵢ)`` pair.

    ``TERM`` items hold a conjunction of literals (empty = ⊤, one literal =
    a linear item). ``CIRCUIT`` items hold an arbitrary NNF; ``source`` keeps
    the relative path the circuit was read from, if any.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    kind: ItemKind = ItemKind.TERM
    literals: tuple[Literal, ...] = ()
    circuit: Optional[NnfCircuit] = None
    weight: Fraction
    source: Optional[str] = None

    @field_validator("weight", mode="before")
    @classmethod
    def _exact_weight(cls, value: Any) -> Fraction:
        return _to_fraction(value)

    @model_validator(mode="after")
    def _check_formula(self) -> "WeightedItem":
        if self.kind is ItemKind.TERM:
            if self.circuit is not None:
                raise ValueError("term items cannot carry a circuit")
            if len({lit.var for lit in self.literals}) != len(self.literals):
                raise ValueError("term has duplicate or complementary literals")
        elif self.circuit is None or self.literals:
            raise ValueError("circuit items carry exactly a circuit")
        return self

    @classmethod
    def term(cls, literals: Iterable[Literal], weight: Any) -> "WeightedItem":
        """Term item; raises ``InconsistentTermError`` on complementary literals."""
        literals = tuple(literals)
        seen: dict[int, bool] = {}
        for lit in literals:
            if seen.get(lit.var, lit.positive) != lit.positive:
                raise InconsistentTermError(f"term contains both {lit.var} and -{lit.var}")
            seen[lit.var] = lit.positive
        unique = tuple(dict.fromkeys(literals))
        return cls(kind=ItemKind.TERM, literals=unique, weight=weight)

    @classmethod
    def formula(
        cls, circuit: NnfCircuit, weight: Any, source: Optional[str] = None
    ) -> "WeightedItem":
        return cls(kind=ItemKind.CIRCUIT, circuit=circuit, weight=weight, source=source)

    @property
    def is_linear(self) -> bool:
        return self.kind is ItemKind.TERM and len(self.literals) <= 1

    def variables(self) -> frozenset[int]:
        if self.circuit is not None:
            return self.circuit.variables
        return frozenset(lit.var for lit in self.literals)

    def occurring_literals(self) -> set[Literal]:
        if self.circuit is not None:
            return self.circuit.literals()
        return set(self.literals)

    def satisfied_by(self, assignment: Assignment) -> bool:
        if self.circuit is not None:
            return bool(self.circuit.evaluate(assignment))
        return all(lit.satisfied_by(assignment) for lit in self.literals)

    def value(self, assignment: Assignment) -> Fraction:
        """``wᵢ·φᵢ(ω)``."""
        return self.weight if self.satisfied_by(assignment) else Fraction(0)


class Family(str, Enum):
    """Syntactic families of weighted bases, ordered by inclusion."""

    L = "L"
    Q = "Q"
    P = "P"
    G = "G"

    @property
    def rank(self) -> int:
        return "LQPG".index(self.value)


class FamilyTag(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    family: Family
    positive_literals: bool
    nonnegative_weights: bool

    def within(self, family: Family) -> bool:
        return self.family.rank <= family.rank

    def __str__(self) -> str:
        text = self.family.value
        if self.positive_literals:
            text += "^+"
        if self.nonnegative_weights:
            text += "_+"
        return text


class WeightedBase(BaseModel):
    """Ordered multiset of weighted items over variables ``1..num_vars``.

    Example:
        >>> b = WeightedBase(items=(WeightedItem.term([Literal(var=1)], 1),), num_vars=1)
        >>> str(b.classify())
        'L^+_+'
    """

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    items: tuple[WeightedItem, ...] = ()
    num_vars: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_vars(self) -> "WeightedBase":
        for index, item in enumerate(self.items):
            if item.variables() and max(item.variables()) > self.num_vars:
                raise ValueError(f"item {index + 1} uses a variable above {self.num_vars}")
        return self

    @property
    def n(self) -> int:
        return len(self.items)

    def classify(self) -> FamilyTag:
        """Tightest family plus the ⁺ (positive literals) and ₊ (weights ≥ 0) flags."""
        family = Family.L
        for item in self.items:
            if item.kind is ItemKind.CIRCUIT:
                current = Family.G
            elif len(item.literals) <= 1:
                current = Family.L
            elif len(item.literals) == 2:
                current = Family.Q
            else:
                current = Family.P
            if current.rank > family.rank:
                family = current
        return FamilyTag(
            family=family,
            positive_literals=all(
                lit.positive for item in self.items for lit in item.occurring_literals()
            ),
            nonnegative_weights=all(item.weight >= 0 for item in self.items),
        )

    def values(self, assignment: Assignment) -> list[Fraction]:
        return [item.value(assignment) for item in self.items]


class AggregatorKind(str, Enum):
    SUM = "sum"
    LEXIMAX = "leximax"
    OWA = "owa"


class Aggregator(BaseModel):
    """Σ, leximax, or an ordered weighted average with weights ``owa_weights``."""

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    kind: AggregatorKind
    owa_weights: tuple[Fraction, ...] = ()

    @field_validator("owa_weights", mode="before")
    @classmethod
    def _exact_weights(cls, value: Any) -> tuple[Fraction, ...]:
        return tuple(_to_fraction(v) for v in value)

    @model_validator(mode="after")
    def _check_weights(self) -> "Aggregator":
        if self.kind is AggregatorKind.OWA:
            if self.owa_weights and sum(self.owa_weights, Fraction(0)) != 1:
                raise ValueError("OWA weights must sum to 1")
        elif self.owa_weights:
            raise ValueError(f"{self.kind.value} takes no weights")
        return self

    @classmethod
    def owa(cls, weights: Iterable[Any]) -> "Aggregator":
        return cls(kind=AggregatorKind.OWA, owa_weights=tuple(weights))

    @property
    def is_owa(self) -> bool:
        return self.kind is AggregatorKind.OWA

    def __str__(self) -> str:
        return self.kind.value


SUM = Aggregator(kind=AggregatorKind.SUM)
LEXIMAX = Aggregator(kind=AggregatorKind.LEXIMAX)


class ScoreKind(str, Enum):
    SUM = "sum"
    VECTOR = "vector"


class Score(BaseModel):
    """Aggregated value of an interpretation.

    ``SUM`` scores hold a rational (Σ and OWA); ``VECTOR`` scores hold the
    leximax vector sorted in non-increasing order.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    kind: ScoreKind
    value: Fraction = Fraction(0)
    vector: tuple[Fraction, ...] = ()

    @field_validator("value", mode="before")
    @classmethod
    def _exact_value(cls, value: Any) -> Fraction:
        return _to_fraction(value)

    @field_validator("vector", mode="before")
    @classmethod
    def _exact_vector(cls, value: Any) -> tuple[Fraction, ...]:
        return tuple(_to_fraction(v) for v in value)

    @model_validator(mode="after")
    def _check_sorted(self) -> "Score":
        if self.kind is ScoreKind.VECTOR:
            if any(a < b for a, b in zip(self.vector, self.vector[1:])):
                raise ValueError("leximax vectors are sorted non-increasing")
        elif self.vector:
            raise ValueError("sum scores carry no vector")
        return self

    @classmethod
    def of_sum(cls, value: Any) -> "Score":
        return cls(kind=ScoreKind.SUM, value=value)

    @classmethod
    def of_vector(cls, values: Iterable[Any]) -> "Score":
        return cls(
            kind=ScoreKind.VECTOR,
            vector=tuple(sorted((_to_fraction(v) for v in values), reverse=True)),
        )

    def __lt__(self, other: "Score") -> bool:
        return compare_scores(self, other) < 0

    def __le__(self, other: "Score") -> bool:
        return compare_scores(self, other) <= 0

    def __gt__(self, other: "Score") -> bool:
        return compare_scores(self, other) > 0

    def __ge__(self, other: "Score") -> bool:
        return compare_scores(self, other) >= 0

    def __str__(self) -> str:
        if self.kind is ScoreKind.SUM:
            return str(self.value)
        return "(" + ", ".join(str(v) for v in self.vector) + ")"


def compare_scores(a: Score, b: Score) -> int:
    """-1, 0 or 1 as ``a`` is better than, tied with, or worse than ``b``.

    Raises:
        IncomparableScoresError: On different kinds or vector lengths.
    """
    if a.kind is not b.kind:
        raise IncomparableScoresError(f"cannot compare {a.kind.value} with {b.kind.value}")
    if a.kind is ScoreKind.SUM:
        left: Sequence[Fraction] = (a.value,)
        right: Sequence[Fraction] = (b.value,)
    else:
        if len(a.vector) != len(b.vector):
            raise IncomparableScoresError(
                f"vectors of length {len(a.vector)} and {len(b.vector)}"
            )
        left, right = a.vector, b.vector
    for x, y in zip(left, right):
        if x != y:
            return -1 if x < y else 1
    return 0


def aggregate(values: Sequence[Fraction], aggregator: Aggregator) -> Score:
    """Apply ``aggregator`` to the item values ``(w₁·φ₁(ω), …, wₙ·φₙ(ω))``."""
    if aggregator.kind is AggregatorKind.SUM:
        return Score.of_sum(sum(values, Fraction(0)))
    if aggregator.kind is AggregatorKind.LEXIMAX:
        return Score.of_vector(values)
    if len(aggregator.owa_weights) != len(values):
        raise OwaArityMismatchError(
            f"OWA vector has {len(aggregator.owa_weights)} weights for {len(values)} items"
        )
    ordered = sorted(values, reverse=True)
    return Score.of_sum(sum((p * v for p, v in zip(aggregator.owa_weights, ordered)), Fraction(0)))


def evaluate_base(base: WeightedBase, aggregator: Aggregator, assignment: Assignment) -> Score:
    """Score of a total interpretation under ``base`` and ``aggregator``."""
    return aggregate(base.values(assignment), aggregator)
