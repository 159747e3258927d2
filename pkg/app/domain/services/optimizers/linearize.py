"""FPT optimization of OBDD items by linearization.

Every item that is not a literal (or ⊤) is replaced by a fresh variable
``n_i`` constrained by ``n_i ⇔ φᵢ``. The constraint ``ψ`` stays an OBDD
since only n bounded conjunctions are performed, so the linear optimizer on
its DNNF translation solves the problem.
"""

import logging
from fractions import Fraction
from typing import Sequence

from app.core.config import N_CAP
from app.core.errors import NExceedsCapError, OrderMismatchError
from app.domain.entities.circuit import Literal
from app.domain.entities.obdd import TRUE_ID, BoolOp, ObddManager, obdd_to_nnf
from app.domain.entities.objective import Aggregator, WeightedBase, WeightedItem, aggregate
from app.domain.entities.results import OptResult
from app.domain.services.optimizers.linear import opt_dnnf_linear, require_sum_or_leximax

logger = logging.getLogger(__name__)


def opt_obdd_linearize(
    manager: ObddManager,
    constraint: int,
    items: Sequence[tuple[int, Fraction | int]],
    aggregator: Aggregator,
    n_cap: int = N_CAP,
) -> OptResult:
    """Optimal model of ``constraint`` under OBDD items ``(φᵢ, wᵢ)``.

    The caller's manager is left untouched; fresh variables live in a copy.
    The witness is projected back onto the manager's variables.

    Raises:
        NExceedsCapError: If there are more than ``n_cap`` items.
        OrderMismatchError: If an id does not belong to ``manager``.
    """
    if len(items) > n_cap:
        raise NExceedsCapError(f"n = {len(items)} exceeds the cap {n_cap}")
    require_sum_or_leximax(aggregator)
    for node_id in [constraint, *(f for f, _ in items)]:
        if node_id not in manager:
            raise OrderMismatchError(f"node {node_id} does not belong to the manager")
    work = manager.copy()
    original_vars = manager.num_vars
    psi = constraint
    linear: list[WeightedItem] = []
    for f, weight in items:
        if f == TRUE_ID:
            linear.append(WeightedItem.term((), weight))
        elif work.is_literal(f):
            linear.append(WeightedItem.term((work.as_literal(f),), weight))
        else:
            fresh = work.add_var()
            psi = work.apply(BoolOp.AND, psi, work.biconditional_with_fresh(fresh, f))
            linear.append(WeightedItem.term((Literal(var=fresh),), weight))
    circuit = obdd_to_nnf(work, psi, num_vars=work.num_vars)
    base = WeightedBase(items=tuple(linear), num_vars=work.num_vars)
    logger.info(
        "obdd-linearize: %s fresh variables, constraint of %s nodes",
        work.num_vars - original_vars,
        work.size(psi),
    )
    result = opt_dnnf_linear(circuit, base, aggregator)
    stats = {"fresh_vars": work.num_vars - original_vars, "constraint_nodes": work.size(psi)}
    if not result.is_optimal:
        return OptResult.no_solution("obdd-linearize", stats)
    assert result.model is not None
    model = {var: result.model[var] for var in range(1, original_vars + 1)}
    values = [
        Fraction(w) if manager.evaluate(f, model) == TRUE_ID else Fraction(0) for f, w in items
    ]
    score = aggregate(values, aggregator)
    if score != result.score:
        raise RuntimeError(f"projected witness scores {score}, expected {result.score}")
    return OptResult.optimal(model, score, "obdd-linearize", stats)
