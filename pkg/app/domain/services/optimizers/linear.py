"""Optimization of linear objectives over DNNF circuits via model generators.

One bottom-up pass computes a model generator per node: leaves and And nodes
get generators whose extensions are exactly their models, Or nodes keep the
child whose optimal completion scores best. The root generator is then
completed optimally variable by variable.
"""

import logging
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from app.core.errors import AggregatorMismatchError, FamilyMismatchError
from app.domain.entities.circuit import NnfCircuit, NnfNode, NodeKind
from app.domain.entities.objective import (
    Aggregator,
    AggregatorKind,
    Family,
    Score,
    WeightedBase,
    aggregate,
)
from app.domain.entities.results import ModelGenerator, OptResult
from app.domain.services.circuit_ops import require_decomposable

logger = logging.getLogger(__name__)


def require_linear(base: WeightedBase) -> None:
    tag = base.classify()
    if tag.family is not Family.L:
        raise FamilyMismatchError(f"expected a linear base, got family {tag}")


def require_sum_or_leximax(aggregator: Aggregator) -> None:
    if aggregator.kind is AggregatorKind.OWA:
        raise AggregatorMismatchError("only Σ and leximax are supported here")


class LinearObjective:
    """Per-variable view of a linear base.

    For each variable it stores the values the base's items take when the
    variable is 1 and when it is 0, aligned item by item. Empty terms are
    constants and belong to no variable.
    """

    def __init__(self, base: WeightedBase, aggregator: Aggregator, num_vars: int) -> None:
        require_linear(base)
        require_sum_or_leximax(aggregator)
        self.base = base
        self.aggregator = aggregator
        self.num_vars = max(num_vars, base.num_vars)
        self._if_true: dict[int, list[Fraction]] = {}
        self._if_false: dict[int, list[Fraction]] = {}
        for item in base.items:
            if not item.literals:
                continue
            lit = item.literals[0]
            on, off = (item.weight, Fraction(0)) if lit.positive else (Fraction(0), item.weight)
            self._if_true.setdefault(lit.var, []).append(on)
            self._if_false.setdefault(lit.var, []).append(off)

    def prefers_true(self, var: int) -> bool:
        """Whether setting ``var`` to 1 is strictly better than 0."""
        on = self._if_true.get(var)
        if not on:
            return False
        off = self._if_false[var]
        if self.aggregator.kind is AggregatorKind.SUM:
            return sum(on, Fraction(0)) < sum(off, Fraction(0))
        return sorted(on, reverse=True) < sorted(off, reverse=True)

    def complete(self, generator: Mapping[int, int]) -> dict[int, int]:
        """Optimal extension of ``generator`` over ``1..num_vars``."""
        model = dict(generator)
        for var in range(1, self.num_vars + 1):
            if var not in model:
                model[var] = 1 if self.prefers_true(var) else 0
        return model

    def score(self, model: Mapping[int, int]) -> Score:
        return aggregate(self.base.values(model), self.aggregator)


def complete_optimally(
    generator: ModelGenerator | Mapping[int, int],
    base: WeightedBase,
    aggregator: Aggregator,
    num_vars: int = 0,
) -> dict[int, int]:
    """Extend a model generator into an optimal interpretation.

    Free variables take the value whose contribution multiset is smaller
    under the aggregator; ties and variables absent from the base go to 0.
    """
    assignment = generator.assignment if isinstance(generator, ModelGenerator) else generator
    top = max(assignment, default=0)
    return LinearObjective(base, aggregator, max(num_vars, top)).complete(assignment)


def leaf_generator(node_id: int, node: NnfNode) -> Optional[ModelGenerator]:
    if node.kind is NodeKind.TRUE:
        return ModelGenerator(node=node_id)
    if node.kind is NodeKind.FALSE:
        return None
    lit = node.literal
    if lit is None:
        raise ValueError(f"node {node_id} is not a leaf")
    return ModelGenerator(node=node_id, assignment={lit.var: int(lit.positive)})


def and_generator(
    node_id: int, children: Sequence[Optional[ModelGenerator]]
) -> Optional[ModelGenerator]:
    """Union of the children's generators (disjoint on decomposable nodes)."""
    assignment: dict[int, int] = {}
    for child in children:
        if child is None:
            return None
        assignment.update(child.assignment)
    return ModelGenerator(node=node_id, assignment=assignment)


def or_generator(
    node_id: int,
    children: Sequence[Optional[ModelGenerator]],
    base: Optional[WeightedBase] = None,
    aggregator: Optional[Aggregator] = None,
    objective: Optional[LinearObjective] = None,
) -> Optional[ModelGenerator]:
    """Child generator with the best optimal completion (lowest index on ties)."""
    if objective is None:
        if base is None or aggregator is None:
            raise ValueError("or_generator needs a base and an aggregator")
        top = max((max(c.assignment, default=0) for c in children if c), default=0)
        objective = LinearObjective(base, aggregator, top)
    best: Optional[tuple[Score, ModelGenerator]] = None
    for child in children:
        if child is None:
            continue
        score = objective.score(objective.complete(child.assignment))
        if best is None or score < best[0]:
            best = (score, child)
    if best is None:
        return None
    return ModelGenerator(node=node_id, assignment=best[1].assignment)


def opt_dnnf_linear(circuit: NnfCircuit, base: WeightedBase, aggregator: Aggregator) -> OptResult:
    """Optimal model of a DNNF circuit under a linear base (Σ or leximax).

    Raises:
        NotDecomposableError: If the circuit is not DNNF.
        FamilyMismatchError: If the base is not linear.
        AggregatorMismatchError: If the aggregator is OWA.
    """
    require_decomposable(circuit)
    objective = LinearObjective(base, aggregator, circuit.num_vars)
    generators: dict[int, Optional[ModelGenerator]] = {}
    reachable = circuit.reachable()
    for index in reachable:
        node = circuit.nodes[index]
        kids = [generators[c] for c in node.children]
        if node.kind is NodeKind.AND:
            generators[index] = and_generator(index, kids)
        elif node.kind is NodeKind.OR:
            generators[index] = or_generator(index, kids, objective=objective)
        else:
            generators[index] = leaf_generator(index, node)
    stats = {"generators": len(reachable)}
    root = generators[circuit.root]
    if root is None:
        logger.info("dnnf-linear: circuit is inconsistent")
        return OptResult.no_solution("dnnf-linear", stats)
    model = objective.complete(root.assignment)
    score = objective.score(model)
    logger.info("dnnf-linear: optimum %s over %s nodes", score, len(reachable))
    return OptResult.optimal(model, score, "dnnf-linear", stats)
