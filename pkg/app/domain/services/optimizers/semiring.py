"""Min-sum semiring evaluation of smooth DNNF circuits.

An independent way to obtain the optimal Σ score of a linear base: literal
leaves carry the summed weights of the base literals they satisfy, And nodes
add and Or nodes take the minimum. Smoothness makes every branch pay for
every variable.
"""

from fractions import Fraction
from typing import Optional

from app.core.errors import InconsistentCircuitError, NotSmoothError
from app.domain.entities.circuit import Literal, NnfCircuit, NodeKind
from app.domain.entities.objective import WeightedBase
from app.domain.services.circuit_ops import consistent, is_smooth
from app.domain.services.optimizers.linear import require_linear


def semiring_minsum(circuit: NnfCircuit, base: WeightedBase) -> Fraction:
    """Optimal Σ score of ``base`` over the models of ``circuit``.

    Raises:
        NotSmoothError: Unless the circuit is smooth over all its variables.
        InconsistentCircuitError: If the circuit has no model.
        FamilyMismatchError: If the base is not linear.
    """
    require_linear(base)
    universe = range(1, max(circuit.num_vars, base.num_vars) + 1)
    if not is_smooth(circuit, universe):
        raise NotSmoothError("circuit must be smooth and mention every variable")
    if not consistent(circuit):
        raise InconsistentCircuitError("circuit has no model")
    constant = Fraction(0)
    weight_of: dict[Literal, Fraction] = {}
    for item in base.items:
        if not item.literals:
            constant += item.weight
        else:
            lit = item.literals[0]
            weight_of[lit] = weight_of.get(lit, Fraction(0)) + item.weight
    # None stands for +∞
    cost: dict[int, Optional[Fraction]] = {}
    for index in circuit.reachable():
        node = circuit.nodes[index]
        if node.kind is NodeKind.TRUE:
            cost[index] = Fraction(0)
        elif node.kind is NodeKind.FALSE:
            cost[index] = None
        elif node.kind is NodeKind.LIT:
            cost[index] = weight_of.get(node.literal, Fraction(0))  # type: ignore[arg-type]
        elif node.kind is NodeKind.AND:
            parts = [cost[c] for c in node.children]
            if any(p is None for p in parts):
                cost[index] = None
            else:
                cost[index] = sum(parts, Fraction(0))  # type: ignore[arg-type]
        else:
            finite = [cost[c] for c in node.children if cost[c] is not None]
            cost[index] = min(finite) if finite else None  # type: ignore[type-var]
    root = cost[circuit.root]
    assert root is not None
    return root + constant
