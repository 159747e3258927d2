"""NNF circuit entities.

A circuit is an immutable DAG whose nodes are stored children-before-parents,
so every child id is strictly smaller than the id of its parent and the root
is the last node (the c2d convention). Nodes are built through
``CircuitBuilder`` which hash-conses structurally identical nodes.

Variables are dense integers ``1..num_vars``; names live in a separate
``NameTable``.
"""

from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.errors import InconsistentTermError

# Variable index -> 0/1. Total when it covers 1..num_vars, partial otherwise.
Assignment = Mapping[int, int]


class Literal(BaseModel):
    """A propositional variable or its negation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    var: int = Field(..., ge=1, description="Variable index (1-based)")
    positive: bool = Field(default=True, description="Polarity")

    @classmethod
    def from_dimacs(cls, value: int) -> "Literal":
        """Build a literal from a signed DIMACS integer.

        Example:
            >>> Literal.from_dimacs(-3)
            Literal(var=3, positive=False)
        """
        if value == 0:
            raise ValueError("0 is not a literal")
        return cls(var=abs(value), positive=value > 0)

    def to_dimacs(self) -> int:
        return self.var if self.positive else -self.var

    def complementary(self) -> "Literal":
        return Literal(var=self.var, positive=not self.positive)

    def satisfied_by(self, assignment: Assignment) -> bool:
        return assignment[self.var] == int(self.positive)

    def __str__(self) -> str:
        return str(self.to_dimacs())


def check_term(literals: Iterable[Literal]) -> tuple[Literal, ...]:
    """Return the literals of a consistent term, duplicates removed.

    Raises:
        InconsistentTermError: If the term contains complementary literals.
    """
    seen: dict[int, Literal] = {}
    for literal in literals:
        previous = seen.get(literal.var)
        if previous is None:
            seen[literal.var] = literal
        elif previous.positive != literal.positive:
            raise InconsistentTermError(f"term contains both {literal.var} and -{literal.var}")
    return tuple(seen.values())


def term_assignment(literals: Iterable[Literal]) -> dict[int, int]:
    """Partial interpretation corresponding to a consistent term."""
    return {lit.var: int(lit.positive) for lit in check_term(literals)}


class NodeKind(str, Enum):
    """Labels of NNF nodes."""

    TRUE = "true"
    FALSE = "false"
    LIT = "lit"
    AND = "and"
    OR = "or"


class NnfNode(BaseModel):
    """One node of an NNF circuit.

    Gates always have at least one child: the empty conjunction is stored as
    ``TRUE`` and the empty disjunction as ``FALSE``. ``decision_var`` keeps the
    c2d ``O j`` hint of Or nodes (0 when absent) and is never interpreted.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: NodeKind
    literal: Optional[Literal] = None
    children: tuple[int, ...] = ()
    decision_var: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_shape(self) -> "NnfNode":
        if (self.kind is NodeKind.LIT) != (self.literal is not None):
            raise ValueError("exactly the literal nodes carry a literal")
        if self.kind in (NodeKind.AND, NodeKind.OR):
            if not self.children:
                raise ValueError("0-ary gates are stored as TRUE/FALSE")
        elif self.children:
            raise ValueError(f"{self.kind.value} node cannot have children")
        if self.decision_var and self.kind is not NodeKind.OR:
            raise ValueError("only Or nodes carry a decision hint")
        return self

    @property
    def is_leaf(self) -> bool:
        return self.kind not in (NodeKind.AND, NodeKind.OR)


class NnfCircuit(BaseModel):
    """Immutable NNF DAG.

    Attributes:
        nodes: Nodes indexed by id, children before parents.
        root: Id of the root, always the last node.
        num_vars: Size of the variable universe ``1..num_vars``.

    Example:
        >>> b = CircuitBuilder(num_vars=2)
        >>> c = b.build(b.add_and([b.literal(Literal(var=1)), b.literal(Literal(var=2))]))
        >>> c.size
        2
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    nodes: tuple[NnfNode, ...] = Field(..., min_length=1)
    root: int = Field(..., ge=0)
    num_vars: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_dag(self) -> "NnfCircuit":
        if self.root != len(self.nodes) - 1:
            raise ValueError("root must be the last node")
        for index, node in enumerate(self.nodes):
            for child in node.children:
                if not 0 <= child < index:
                    raise ValueError(f"node {index} references node {child} out of order")
            if node.literal is not None and node.literal.var > self.num_vars:
                raise ValueError(f"node {index} uses variable {node.literal.var} > {self.num_vars}")
            if node.decision_var > self.num_vars:
                raise ValueError(f"node {index} has decision hint out of range")
        return self

    @property
    def size(self) -> int:
        """Number of arcs."""
        return sum(len(node.children) for node in self.nodes)

    @property
    def root_node(self) -> NnfNode:
        return self.nodes[self.root]

    def reachable(self) -> list[int]:
        """Ids reachable from the root, in increasing (topological) order."""
        seen = {self.root}
        stack = [self.root]
        while stack:
            for child in self.nodes[stack.pop()].children:
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return sorted(seen)

    @cached_property
    def var_sets(self) -> tuple[frozenset[int], ...]:
        """Vars(N) for every node, computed once in a bottom-up pass."""
        table: list[frozenset[int]] = []
        for node in self.nodes:
            if node.literal is not None:
                table.append(frozenset((node.literal.var,)))
            elif node.children:
                table.append(frozenset().union(*(table[c] for c in node.children)))
            else:
                table.append(frozenset())
        return tuple(table)

    def var_table(self) -> tuple[frozenset[int], ...]:
        return self.var_sets

    def vars_of(self, node: int) -> frozenset[int]:
        return self.var_sets[node]

    @property
    def variables(self) -> frozenset[int]:
        return self.vars_of(self.root)

    def literals(self) -> set[Literal]:
        """Literal leaves reachable from the root."""
        return {
            self.nodes[i].literal  # type: ignore[misc]
            for i in self.reachable()
            if self.nodes[i].literal is not None
        }

    def evaluate(self, assignment: Assignment) -> int:
        """Truth value of the circuit under a total interpretation."""
        values: dict[int, bool] = {}
        for index in self.reachable():
            node = self.nodes[index]
            if node.kind is NodeKind.TRUE:
                values[index] = True
            elif node.kind is NodeKind.FALSE:
                values[index] = False
            elif node.kind is NodeKind.LIT:
                values[index] = node.literal.satisfied_by(assignment)  # type: ignore[union-attr]
            elif node.kind is NodeKind.AND:
                values[index] = all(values[c] for c in node.children)
            else:
                values[index] = any(values[c] for c in node.children)
        return int(values[self.root])


class CircuitBuilder:
    """Append-only, hash-consing factory for ``NnfCircuit``.

    ``add_and``/``add_or`` keep the requested shape. ``conjoin``/``disjoin``
    propagate constants, drop duplicates and collapse single-child gates.
    """

    def __init__(self, num_vars: int) -> None:
        self.num_vars = num_vars
        self._nodes: list[NnfNode] = []
        self._index: dict[tuple, int] = {}

    def __len__(self) -> int:
        return len(self._nodes)

    def node(self, node_id: int) -> NnfNode:
        return self._nodes[node_id]

    def _add(self, node: NnfNode) -> int:
        key = (node.kind, node.literal, node.children, node.decision_var)
        existing = self._index.get(key)
        if existing is not None:
            return existing
        self._nodes.append(node)
        self._index[key] = len(self._nodes) - 1
        return len(self._nodes) - 1

    def true(self) -> int:
        return self._add(NnfNode(kind=NodeKind.TRUE))

    def false(self) -> int:
        return self._add(NnfNode(kind=NodeKind.FALSE))

    def literal(self, literal: Literal) -> int:
        if literal.var > self.num_vars:
            raise ValueError(f"variable {literal.var} exceeds {self.num_vars}")
        return self._add(NnfNode(kind=NodeKind.LIT, literal=literal))

    def add_and(self, children: Iterable[int]) -> int:
        kids = tuple(children)
        if not kids:
            return self.true()
        return self._add(NnfNode(kind=NodeKind.AND, children=kids))

    def add_or(self, children: Iterable[int], decision_var: int = 0) -> int:
        kids = tuple(children)
        if not kids:
            return self.false()
        return self._add(NnfNode(kind=NodeKind.OR, children=kids, decision_var=decision_var))

    def is_true(self, node_id: int) -> bool:
        return self._nodes[node_id].kind is NodeKind.TRUE

    def is_false(self, node_id: int) -> bool:
        return self._nodes[node_id].kind is NodeKind.FALSE

    def conjoin(self, children: Iterable[int]) -> int:
        kids: list[int] = []
        for child in children:
            if self.is_false(child):
                return self.false()
            if not self.is_true(child) and child not in kids:
                kids.append(child)
        if len(kids) == 1:
            return kids[0]
        return self.add_and(kids)

    def disjoin(self, children: Iterable[int], decision_var: int = 0) -> int:
        kids: list[int] = []
        for child in children:
            if self.is_true(child):
                return self.true()
            if not self.is_false(child) and child not in kids:
                kids.append(child)
        if len(kids) == 1:
            return kids[0]
        return self.add_or(kids, decision_var=decision_var)

    def term(self, literals: Sequence[Literal]) -> int:
        """Conjunction of literals (shape kept, 0 literals is TRUE)."""
        return self.add_and(self.literal(lit) for lit in literals)

    def build(self, root: int) -> NnfCircuit:
        """Freeze the sub-DAG under ``root``, renumbered so the root comes last."""
        seen = {root}
        stack = [root]
        while stack:
            for child in self._nodes[stack.pop()].children:
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        renumber = {old: new for new, old in enumerate(sorted(seen))}
        nodes = []
        for old in sorted(seen):
            node = self._nodes[old]
            if node.children:
                node = node.model_copy(
                    update={"children": tuple(renumber[c] for c in node.children)}
                )
            nodes.append(node)
        return NnfCircuit(nodes=tuple(nodes), root=len(nodes) - 1, num_vars=self.num_vars)


def constant_circuit(value: bool, num_vars: int = 0) -> NnfCircuit:
    """The TRUE or FALSE circuit over ``num_vars`` variables."""
    builder = CircuitBuilder(num_vars)
    return builder.build(builder.true() if value else builder.false())
