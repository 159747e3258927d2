"""Structural queries and transformations of NNF circuits.

Everything here only looks at nodes reachable from the root. Queries that
are linear only on DNNF (consistency, model extraction, smoothing) refuse
non-decomposable input instead of answering wrong.
"""

import logging
from typing import Callable, Iterable, Mapping, Optional

from pydantic import BaseModel, ConfigDict

from app.core.errors import NotDecomposableError
from app.domain.entities.circuit import (
    Assignment,
    CircuitBuilder,
    Literal,
    NnfCircuit,
    NodeKind,
)

logger = logging.getLogger(__name__)


class DecomposabilityReport(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    decomposable: bool
    violating_node: Optional[int] = None


def vars_of(circuit: NnfCircuit, node: int) -> frozenset[int]:
    return circuit.vars_of(node)


def check_decomposable(circuit: NnfCircuit) -> DecomposabilityReport:
    """Check that every And node has pairwise variable-disjoint children."""
    table = circuit.var_table()
    for index in circuit.reachable():
        node = circuit.nodes[index]
        if node.kind is not NodeKind.AND:
            continue
        seen: set[int] = set()
        for child in node.children:
            if seen & table[child]:
                return DecomposabilityReport(decomposable=False, violating_node=index)
            seen |= table[child]
    return DecomposabilityReport(decomposable=True)


def require_decomposable(circuit: NnfCircuit) -> None:
    report = check_decomposable(circuit)
    if not report.decomposable:
        raise NotDecomposableError(report.violating_node)  # type: ignore[arg-type]


def condition(circuit: NnfCircuit, gamma: Mapping[int, int]) -> NnfCircuit:
    """``circuit | gamma`` with constant propagation.

    Literal leaves over ``dom(gamma)`` become constants, which are then
    propagated, so the result never mentions a conditioned variable.
    """
    return map_literals(
        circuit,
        lambda lit: lit if lit.var not in gamma else lit.satisfied_by(gamma),
        hint=lambda var: 0 if var in gamma else var,
    )


def map_literals(
    circuit: NnfCircuit,
    rewrite: Callable[[Literal], Literal | bool],
    num_vars: Optional[int] = None,
    hint: Callable[[int], int] = lambda var: var,
) -> NnfCircuit:
    """Rebuild ``circuit`` replacing each literal leaf by ``rewrite(lit)``.

    ``rewrite`` returns a literal or a Boolean constant. Constants are
    propagated through the gates above them.
    """
    builder = CircuitBuilder(circuit.num_vars if num_vars is None else num_vars)
    mapped: dict[int, int] = {}
    for index in circuit.reachable():
        node = circuit.nodes[index]
        if node.kind is NodeKind.TRUE:
            mapped[index] = builder.true()
        elif node.kind is NodeKind.FALSE:
            mapped[index] = builder.false()
        elif node.kind is NodeKind.LIT:
            replacement = rewrite(node.literal)  # type: ignore[arg-type]
            if isinstance(replacement, bool):
                mapped[index] = builder.true() if replacement else builder.false()
            else:
                mapped[index] = builder.literal(replacement)
        elif node.kind is NodeKind.AND:
            mapped[index] = builder.conjoin(mapped[c] for c in node.children)
        else:
            decision = hint(node.decision_var) if node.decision_var else 0
            mapped[index] = builder.disjoin(
                (mapped[c] for c in node.children), decision_var=decision
            )
    return builder.build(mapped[circuit.root])


class DnnfQueries:
    """Consistency and model extraction on one decomposable circuit.

    The decomposability check runs once at construction; the instance is then
    read-only and can be shared across threads.
    """

    def __init__(self, circuit: NnfCircuit) -> None:
        require_decomposable(circuit)
        self.circuit = circuit
        self._order = circuit.reachable()

    def _satisfiable(self, gamma: Mapping[int, int]) -> dict[int, bool]:
        nodes = self.circuit.nodes
        sat: dict[int, bool] = {}
        for index in self._order:
            node = nodes[index]
            if node.kind is NodeKind.TRUE:
                sat[index] = True
            elif node.kind is NodeKind.FALSE:
                sat[index] = False
            elif node.kind is NodeKind.LIT:
                lit = node.literal
                assert lit is not None
                sat[index] = lit.var not in gamma or lit.satisfied_by(gamma)
            elif node.kind is NodeKind.AND:
                sat[index] = all(sat[c] for c in node.children)
            else:
                sat[index] = any(sat[c] for c in node.children)
        return sat

    def consistent_under(self, gamma: Optional[Mapping[int, int]] = None) -> bool:
        """Whether ``circuit | gamma`` has a model."""
        return self._satisfiable(gamma or {})[self.circuit.root]

    def find_model(self, gamma: Optional[Mapping[int, int]] = None) -> Optional[dict[int, int]]:
        """Deterministic model extending ``gamma``, or None.

        The first satisfiable child is followed at every Or node; variables
        left unconstrained are set to 0. The model covers ``1..num_vars``
        plus ``dom(gamma)``.
        """
        gamma = gamma or {}
        sat = self._satisfiable(gamma)
        if not sat[self.circuit.root]:
            return None
        model = {var: 0 for var in range(1, self.circuit.num_vars + 1)}
        model.update(gamma)
        visited: set[int] = set()
        stack = [self.circuit.root]
        while stack:
            index = stack.pop()
            if index in visited:
                continue
            visited.add(index)
            node = self.circuit.nodes[index]
            if node.kind is NodeKind.LIT:
                lit = node.literal
                if lit.var not in gamma:  # type: ignore[union-attr]
                    model[lit.var] = int(lit.positive)  # type: ignore[union-attr]
            elif node.kind is NodeKind.AND:
                stack.extend(node.children)
            elif node.kind is NodeKind.OR:
                stack.append(next(c for c in node.children if sat[c]))
        return model


def consistent(circuit: NnfCircuit) -> bool:
    """CO query; raises ``NotDecomposableError`` on non-DNNF input."""
    return DnnfQueries(circuit).consistent_under()


def consistent_under(circuit: NnfCircuit, gamma: Mapping[int, int]) -> bool:
    return DnnfQueries(circuit).consistent_under(gamma)


def find_model(
    circuit: NnfCircuit, gamma: Optional[Mapping[int, int]] = None
) -> Optional[dict[int, int]]:
    return DnnfQueries(circuit).find_model(gamma)


def evaluate(circuit: NnfCircuit, assignment: Assignment) -> int:
    return circuit.evaluate(assignment)


def smooth(circuit: NnfCircuit, over: Iterable[int]) -> NnfCircuit:
    """Smoothed DNNF equivalent to ``circuit`` over the variables ``over``.

    Each Or child missing some of its parent's variables, and the root if it
    misses some of ``over``, is conjoined with ``(x ∨ ¬x)`` gadgets.
    """
    require_decomposable(circuit)
    scope = frozenset(over)
    table = circuit.var_table()
    if not table[circuit.root] <= scope:
        raise ValueError("circuit mentions variables outside the smoothing scope")
    builder = CircuitBuilder(max(circuit.num_vars, max(scope, default=0)))
    gadgets: dict[int, int] = {}

    def gadget(var: int) -> int:
        if var not in gadgets:
            gadgets[var] = builder.add_or(
                [
                    builder.literal(Literal(var=var)),
                    builder.literal(Literal(var=var, positive=False)),
                ]
            )
        return gadgets[var]

    def pad(node_id: int, missing: frozenset[int]) -> int:
        if not missing:
            return node_id
        return builder.add_and([node_id, *(gadget(v) for v in sorted(missing))])

    mapped: dict[int, int] = {}
    for index in circuit.reachable():
        node = circuit.nodes[index]
        if node.kind is NodeKind.TRUE:
            mapped[index] = builder.true()
        elif node.kind is NodeKind.FALSE:
            mapped[index] = builder.false()
        elif node.kind is NodeKind.LIT:
            mapped[index] = builder.literal(node.literal)  # type: ignore[arg-type]
        elif node.kind is NodeKind.AND:
            mapped[index] = builder.add_and(mapped[c] for c in node.children)
        else:
            mapped[index] = builder.add_or(
                (pad(mapped[c], table[index] - table[c]) for c in node.children),
                decision_var=node.decision_var,
            )
    root = pad(mapped[circuit.root], scope - table[circuit.root])
    result = builder.build(root)
    logger.debug("smoothed circuit: %s -> %s edges", circuit.size, result.size)
    return result


def is_smooth(circuit: NnfCircuit, over: Iterable[int]) -> bool:
    """Whether every Or node is balanced and the root mentions exactly ``over``."""
    table = circuit.var_table()
    if table[circuit.root] != frozenset(over):
        return False
    for index in circuit.reachable():
        node = circuit.nodes[index]
        if node.kind is NodeKind.OR and any(table[c] != table[index] for c in node.children):
            return False
    return True
