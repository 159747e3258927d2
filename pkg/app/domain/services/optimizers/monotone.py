"""Optimization over DNF circuits for bases with positive literals and weights ≥ 0.

With such bases every item is monotone and every weight a penalty, so for a
term the cheapest model satisfies the term and sets all other variables to 0.
"""

import logging
from typing import Optional

from app.core.errors import FamilyMismatchError, NotDnfShapeError
from app.domain.entities.circuit import Literal, NnfCircuit, NnfNode, NodeKind
from app.domain.entities.objective import Aggregator, Score, WeightedBase, evaluate_base
from app.domain.entities.results import OptResult
from app.domain.services.optimizers.linear import require_sum_or_leximax

logger = logging.getLogger(__name__)


def _term_of(circuit: NnfCircuit, node: NnfNode) -> Optional[tuple[Literal, ...]]:
    """Literals of a term node; None for the constant ⊥."""
    if node.kind is NodeKind.TRUE:
        return ()
    if node.kind is NodeKind.FALSE:
        return None
    if node.kind is NodeKind.LIT:
        return (node.literal,)  # type: ignore[return-value]
    if node.kind is NodeKind.AND:
        literals: list[Literal] = []
        for child in node.children:
            sub = circuit.nodes[child]
            if sub.kind is NodeKind.FALSE:
                return None
            if sub.kind is NodeKind.LIT:
                literals.append(sub.literal)  # type: ignore[arg-type]
            elif sub.kind is not NodeKind.TRUE:
                raise NotDnfShapeError("term contains a nested gate")
        return tuple(literals)
    raise NotDnfShapeError("nested disjunction")


def dnf_terms(circuit: NnfCircuit) -> list[tuple[Literal, ...]]:
    """Terms of a flat DNF circuit, in child order; ⊥ children are skipped.

    Raises:
        NotDnfShapeError: If the circuit is not an Or of And-of-literals.
    """
    root = circuit.root_node
    children = root.children if root.kind is NodeKind.OR else (circuit.root,)
    terms = []
    for child in children:
        term = _term_of(circuit, circuit.nodes[child])
        if term is not None:
            terms.append(term)
    return terms


def is_dnf_shape(circuit: NnfCircuit) -> bool:
    try:
        dnf_terms(circuit)
    except NotDnfShapeError:
        return False
    return True


def opt_dnf_monotone(circuit: NnfCircuit, base: WeightedBase, aggregator: Aggregator) -> OptResult:
    """Best model among the minimal models ``ω_t`` of the consistent terms ``t``.

    Raises:
        NotDnfShapeError: If the circuit is not a flat DNF.
        FamilyMismatchError: If the base has a negative literal or weight.
        AggregatorMismatchError: If the aggregator is OWA.
    """
    terms = dnf_terms(circuit)
    tag = base.classify()
    if not (tag.positive_literals and tag.nonnegative_weights):
        raise FamilyMismatchError(f"expected positive literals and weights ≥ 0, got {tag}")
    require_sum_or_leximax(aggregator)
    num_vars = max(circuit.num_vars, base.num_vars)
    best: Optional[tuple[Score, dict[int, int]]] = None
    consistent_terms = 0
    for term in terms:
        model = {var: 0 for var in range(1, num_vars + 1)}
        values = {}
        for lit in term:
            if values.setdefault(lit.var, int(lit.positive)) != int(lit.positive):
                break
        else:
            consistent_terms += 1
            model.update(values)
            score = evaluate_base(base, aggregator, model)
            if best is None or score < best[0]:
                best = (score, model)
    stats = {"terms": len(terms), "consistent_terms": consistent_terms}
    if best is None:
        return OptResult.no_solution("dnf-monotone", stats)
    logger.info("dnf-monotone: optimum %s among %s terms", best[0], consistent_terms)
    return OptResult.optimal(best[1], best[0], "dnf-monotone", stats)
