"""Instance generators following the hardness constructions.

Each generator returns a small, deterministic instance whose optimal score
answers a classic NP-complete question (minimum hitting set, 2-term
satisfaction, CNF satisfiability), or transforms a base while keeping its
optima.
"""

import logging
from enum import Enum
from fractions import Fraction
from typing import Hashable, Iterable, Optional, Sequence

from app.core.errors import (
    BadSetSizeError,
    ClausePolarityViolationError,
    FamilyMismatchError,
    InconsistentTermError,
)
from app.domain.entities.circuit import CircuitBuilder, Literal, NnfCircuit, constant_circuit
from app.domain.entities.instances import (
    NegativeLiteralElimination,
    OwaReduction,
    ReductionInstance,
)
from app.domain.entities.names import NameTable
from app.domain.entities.obdd import TRUE_ID, BoolOp, ObddManager
from app.domain.entities.objective import (
    SUM,
    Aggregator,
    AggregatorKind,
    ItemKind,
    Score,
    WeightedBase,
    WeightedItem,
)
from app.domain.services.circuit_ops import map_literals

logger = logging.getLogger(__name__)


class PosNegFlavor(str, Enum):
    """Weighting used for a positive/negative CNF pair."""

    POSITIVE_LITERALS = "posneg"
    NONNEGATIVE_WEIGHTS = "posneg-weights"


def _members(subset: Iterable[Hashable]) -> list[Hashable]:
    if isinstance(subset, (set, frozenset)):
        return sorted(subset, key=str)
    return list(dict.fromkeys(subset))


def _index_elements(
    sets: Sequence[Iterable[Hashable]], universe: Optional[Iterable[Hashable]]
) -> tuple[dict[Hashable, int], list[tuple[int, int]]]:
    """Variable per element (insertion order) and the distinct pairs of ``sets``."""
    index: dict[Hashable, int] = {}
    for element in _members(universe or ()):
        index.setdefault(element, len(index) + 1)
    pairs: list[tuple[int, int]] = []
    for subset in sets:
        members = _members(subset)
        if len(members) != 2:
            raise BadSetSizeError(f"set {members} does not have exactly two elements")
        for element in members:
            index.setdefault(element, len(index) + 1)
        pair = (index[members[0]], index[members[1]])
        if pair not in pairs and pair[::-1] not in pairs:
            pairs.append(pair)
    return index, pairs


def _names(index: dict[Hashable, int]) -> NameTable:
    return NameTable(names={var: str(element) for element, var in index.items()})


def gen_hitting_set_linear(
    sets: Sequence[Iterable[Hashable]], universe: Optional[Iterable[Hashable]] = None
) -> ReductionInstance:
    """Positive 2-CNF plus unit weights: the optimal Σ is the minimum hitting-set size.

    Duplicate sets are removed, which is all the subsumption a positive
    2-CNF admits, so the circuit is already in prime-implicate form.
    """
    index, pairs = _index_elements(sets, universe)
    builder = CircuitBuilder(len(index))
    clauses = [
        builder.add_or([builder.literal(Literal(var=a)), builder.literal(Literal(var=b))])
        for a, b in pairs
    ]
    circuit = builder.build(builder.add_and(clauses))
    base = WeightedBase(
        items=tuple(WeightedItem.term([Literal(var=v)], 1) for v in range(1, len(index) + 1)),
        num_vars=len(index),
    )
    return ReductionInstance(circuit=circuit, base=base, names=_names(index))


def gen_term_sat_quadratic(
    terms: Sequence[Sequence[Literal]], num_vars: Optional[int] = None
) -> ReductionInstance:
    """Quadratic unit base whose optimal Σ is ``|S| − (max satisfiable terms of S)``.

    Each 2-literal term ``l₁ ∧ l₂`` contributes the three items that are
    true exactly when it is false.
    """
    top = max((lit.var for term in terms for lit in term), default=0)
    items: list[WeightedItem] = []
    for term in terms:
        if len(term) != 2:
            raise BadSetSizeError(f"term {[str(lit) for lit in term]} does not have two literals")
        first, second = term
        if first.var == second.var:
            if first.positive != second.positive:
                raise InconsistentTermError(f"term fixes {first.var} both ways")
            raise BadSetSizeError(f"term repeats the literal {first}")
        items.extend(
            [
                WeightedItem.term([first.complementary(), second], 1),
                WeightedItem.term([first, second.complementary()], 1),
                WeightedItem.term([first.complementary(), second.complementary()], 1),
            ]
        )
    universe = max(top, num_vars or 0)
    return ReductionInstance(
        circuit=constant_circuit(True, universe),
        base=WeightedBase(items=tuple(items), num_vars=universe),
    )


def gen_hitting_set_qplus(
    sets: Sequence[Iterable[Hashable]], universe: Optional[Iterable[Hashable]] = None
) -> ReductionInstance:
    """``{(x_a ∧ x_b, 2)}`` per distinct pair plus ``(x, −1)`` per element.

    A hitting set of size ≤ k exists iff ``|E| + optimal Σ ≤ k``; a variable
    set to 0 selects its element.
    """
    index, pairs = _index_elements(sets, universe)
    items = [WeightedItem.term([Literal(var=a), Literal(var=b)], 2) for a, b in pairs]
    items += [WeightedItem.term([Literal(var=v)], -1) for v in range(1, len(index) + 1)]
    return ReductionInstance(
        circuit=constant_circuit(True, len(index)),
        base=WeightedBase(items=tuple(items), num_vars=len(index)),
        names=_names(index),
    )


def gen_owa_from_quadratic(base: WeightedBase) -> OwaReduction:
    """Linear base and OWA vector reproducing a nonnegative quadratic Σ objective.

    With ``K = max wᵢ + 1`` the item ``(l₁ ∧ l₂, wᵢ)`` at position i becomes
    ``(l₁, n[K(n−i+1)+wᵢ])``, ``(l₂, same)``, ``(∼l₁, nK(n−i+1))`` and
    ``(∼l₂, same)``. The OWA weights alternate 0 and 1/n for the first 2n
    positions, then stay 0.

    Raises:
        FamilyMismatchError: If an item is not a 2-literal term with weight ≥ 0.
    """
    n = base.n
    for item in base.items:
        if item.kind is not ItemKind.TERM or len(item.literals) != 2 or item.weight < 0:
            raise FamilyMismatchError("expected 2-literal terms with nonnegative weights")
    k = max((item.weight for item in base.items), default=Fraction(0)) + 1
    items: list[WeightedItem] = []
    for i, item in enumerate(base.items, start=1):
        first, second = item.literals
        high = n * (k * (n - i + 1) + item.weight)
        low = n * k * (n - i + 1)
        items.extend(
            [
                WeightedItem.term([first], high),
                WeightedItem.term([second], high),
                WeightedItem.term([first.complementary()], low),
                WeightedItem.term([second.complementary()], low),
            ]
        )
    weights = [Fraction(0), Fraction(1, n)] * n + [Fraction(0)] * (2 * n) if n else []
    return OwaReduction(
        base=WeightedBase(items=tuple(items), num_vars=base.num_vars),
        aggregator=Aggregator.owa(weights),
        k=k,
        offset=k * n * (n + 1) / 2,
    )


def _check_polarity(clauses: Sequence[Sequence[Literal]], positive: bool) -> None:
    for clause in clauses:
        for lit in clause:
            if lit.positive != positive:
                kind = "positive" if positive else "negative"
                raise ClausePolarityViolationError(f"literal {lit} in a {kind} clause")


def posneg_threshold(flavor: PosNegFlavor, aggregator: Aggregator) -> Score:
    """Optimal score reached exactly when ``ψ⁺ ∧ ψ⁻`` is satisfiable."""
    if flavor is PosNegFlavor.POSITIVE_LITERALS:
        values = [Fraction(-1), Fraction(0)]
    else:
        values = [Fraction(0), Fraction(0)]
    if aggregator.kind is AggregatorKind.LEXIMAX:
        return Score.of_vector(values)
    return Score.of_sum(sum(values, Fraction(0)))


def gen_posneg_cnf(
    positive_clauses: Sequence[Sequence[Literal]],
    negative_clauses: Sequence[Sequence[Literal]],
    flavor: PosNegFlavor,
    aggregator: Aggregator = SUM,
    num_vars: Optional[int] = None,
) -> ReductionInstance:
    """Two-item general base deciding the satisfiability of ``ψ⁺ ∧ ψ⁻`` under φ = ⊤.

    ``POSITIVE_LITERALS`` yields ``{(ψ⁺, −1), (¬ψ⁻, 1)}``; ``NONNEGATIVE_WEIGHTS``
    yields ``{(¬ψ⁺, 1), (¬ψ⁻, 1)}``.

    Raises:
        ClausePolarityViolationError: On a literal of the wrong sign.
    """
    _check_polarity(positive_clauses, True)
    _check_polarity(negative_clauses, False)
    if aggregator.kind is AggregatorKind.OWA:
        raise FamilyMismatchError("the threshold is defined for Σ and leximax only")
    top = max(
        (lit.var for clause in [*positive_clauses, *negative_clauses] for lit in clause), default=0
    )
    universe = max(top, num_vars or 0)

    def cnf(clauses: Sequence[Sequence[Literal]]) -> NnfCircuit:
        builder = CircuitBuilder(universe)
        return builder.build(
            builder.add_and(builder.add_or(builder.literal(lit) for lit in c) for c in clauses)
        )

    def negated_cnf(clauses: Sequence[Sequence[Literal]]) -> NnfCircuit:
        builder = CircuitBuilder(universe)
        return builder.build(
            builder.add_or(
                builder.add_and(builder.literal(lit.complementary()) for lit in c) for c in clauses
            )
        )

    not_negative = WeightedItem.formula(negated_cnf(negative_clauses), 1)
    if flavor is PosNegFlavor.POSITIVE_LITERALS:
        items = (WeightedItem.formula(cnf(positive_clauses), -1), not_negative)
    else:
        items = (WeightedItem.formula(negated_cnf(positive_clauses), 1), not_negative)
    return ReductionInstance(
        circuit=constant_circuit(True, universe),
        base=WeightedBase(items=items, num_vars=universe),
        aggregator=aggregator,
        threshold=posneg_threshold(flavor, aggregator),
    )


def eliminate_negative_literals(base: WeightedBase) -> NegativeLiteralElimination:
    """Replace every negative literal ``¬x`` by a fresh copy ``n_x``.

    The copies get indices after ``base.num_vars`` and the order interleaves
    ``x, n_x`` so the OBDD of ``⋀ (¬x ⇔ n_x)`` is a chain of linear size.
    """
    negated = sorted(
        {lit.var for item in base.items for lit in item.occurring_literals() if not lit.positive}
    )
    if not negated:
        return NegativeLiteralElimination(
            base=base, manager=ObddManager.with_vars(base.num_vars), constraint=TRUE_ID
        )
    renaming = {var: base.num_vars + i + 1 for i, var in enumerate(negated)}
    order: list[int] = []
    for var in range(1, base.num_vars + 1):
        order.append(var)
        if var in renaming:
            order.append(renaming[var])
    manager = ObddManager(order)
    constraint = TRUE_ID
    for var in reversed(negated):
        negative = manager.literal(Literal(var=var, positive=False))
        link = manager.apply(BoolOp.IFF, negative, manager.var_node(renaming[var]))
        constraint = manager.apply(BoolOp.AND, link, constraint)
    num_vars = base.num_vars + len(negated)

    def positive(lit: Literal) -> Literal:
        return lit if lit.positive else Literal(var=renaming[lit.var])

    items = []
    for item in base.items:
        if item.circuit is not None:
            rewritten = map_literals(item.circuit, positive, num_vars=num_vars)
            items.append(WeightedItem.formula(rewritten, item.weight))
        else:
            items.append(WeightedItem.term([positive(lit) for lit in item.literals], item.weight))
    logger.info("eliminated %s negated variables", len(negated))
    return NegativeLiteralElimination(
        base=WeightedBase(items=tuple(items), num_vars=num_vars),
        manager=manager,
        constraint=constraint,
        renaming=renaming,
    )


def count_unit_entries(score: Score) -> int:
    """Number of entries equal to 1 in a leximax score."""
    return sum(1 for value in score.vector if value == 1)
