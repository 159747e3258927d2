"""Reduced ordered BDDs under a single mutable manager.

Node ids 0 and 1 are the terminals ⊥ and ⊤. Internal nodes are created only
through ``ObddManager.mk`` which enforces reduction (no node with equal
children, no duplicate triple) and the variable order, so two ids of the same
manager denote the same function iff they are equal.
"""

import logging
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.errors import (
    FreshVarOccursError,
    ManagerFrozenError,
    OrderMismatchError,
)
from app.domain.entities.circuit import CircuitBuilder, Literal, NnfCircuit, check_term

logger = logging.getLogger(__name__)

FALSE_ID = 0
TRUE_ID = 1


class BoolOp(str, Enum):
    """Binary connectives supported by ``ObddManager.apply``."""

    AND = "and"
    OR = "or"
    XOR = "xor"
    IFF = "iff"


class ObddNode(BaseModel):
    """Internal node: if ``var`` then ``hi`` else ``lo``."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    var: int = Field(..., ge=1)
    lo: int = Field(..., ge=0)
    hi: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_reduced(self) -> "ObddNode":
        if self.lo == self.hi:
            raise ValueError("redundant node (lo == hi)")
        return self


class ObddManager:
    """Unique table, apply cache and variable order shared by a set of OBDDs."""

    def __init__(self, order: Sequence[int] = ()) -> None:
        order = tuple(order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise OrderMismatchError(f"order must be a permutation of 1..{len(order)}")
        self._order: list[int] = list(order)
        self._level: dict[int, int] = {var: i for i, var in enumerate(order)}
        self._nodes: list[Optional[ObddNode]] = [None, None]
        self._unique: dict[tuple[int, int, int], int] = {}
        self._cache: dict[tuple[BoolOp, int, int], int] = {}
        self._not_cache: dict[int, int] = {}
        self._frozen = False

    @classmethod
    def with_vars(cls, num_vars: int) -> "ObddManager":
        """Manager over ``1..num_vars`` with the natural order."""
        return cls(range(1, num_vars + 1))

    # --- structure -------------------------------------------------------

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(self._order)

    @property
    def num_vars(self) -> int:
        return len(self._order)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, node_id: object) -> bool:
        return isinstance(node_id, int) and 0 <= node_id < len(self._nodes)

    def freeze(self) -> None:
        """Forbid further node creation; queries stay available."""
        self._frozen = True

    def copy(self) -> "ObddManager":
        """Independent manager with the same nodes, ids and order."""
        other = ObddManager(self._order)
        other._nodes = list(self._nodes)
        other._unique = dict(self._unique)
        other._cache = dict(self._cache)
        other._not_cache = dict(self._not_cache)
        return other

    def add_var(self) -> int:
        """Append a fresh variable at the bottom of the order."""
        if self._frozen:
            raise ManagerFrozenError("cannot extend the order of a frozen manager")
        var = len(self._order) + 1
        self._level[var] = len(self._order)
        self._order.append(var)
        return var

    def ensure_var(self, var: int) -> None:
        while self.num_vars < var:
            self.add_var()

    def level(self, var: int) -> int:
        try:
            return self._level[var]
        except KeyError:
            raise OrderMismatchError(f"variable {var} is not in the order") from None

    def is_terminal(self, node_id: int) -> bool:
        return node_id in (FALSE_ID, TRUE_ID)

    def node(self, node_id: int) -> ObddNode:
        node = self._nodes[node_id]
        if node is None:
            raise ValueError(f"{node_id} is a terminal")
        return node

    def nodes(self) -> list[tuple[int, ObddNode]]:
        """Internal nodes in id order."""
        return [(i, n) for i, n in enumerate(self._nodes) if n is not None]

    def is_literal(self, node_id: int) -> bool:
        """Whether ``node_id`` is the OBDD of a single literal."""
        node = self._nodes[node_id]
        return node is not None and {node.lo, node.hi} == {FALSE_ID, TRUE_ID}

    def as_literal(self, node_id: int) -> Literal:
        node = self.node(node_id)
        return Literal(var=node.var, positive=node.hi == TRUE_ID)

    def _check(self, node_id: int) -> None:
        if node_id not in self:
            raise OrderMismatchError(f"node {node_id} does not belong to this manager")

    def _top_level(self, node_id: int) -> int:
        node = self._nodes[node_id]
        return len(self._order) if node is None else self._level[node.var]

    # --- construction ----------------------------------------------------

    def mk(self, var: int, lo: int, hi: int) -> int:
        """Unique node for (var, lo, hi); returns ``lo`` when ``lo == hi``."""
        if lo == hi:
            return lo
        key = (var, lo, hi)
        existing = self._unique.get(key)
        if existing is not None:
            return existing
        if self._frozen:
            raise ManagerFrozenError("manager is frozen")
        level = self.level(var)
        if level >= self._top_level(lo) or level >= self._top_level(hi):
            raise OrderMismatchError(f"variable {var} must precede its children")
        self._nodes.append(ObddNode(var=var, lo=lo, hi=hi))
        self._unique[key] = len(self._nodes) - 1
        return len(self._nodes) - 1

    def var_node(self, var: int) -> int:
        return self.mk(var, FALSE_ID, TRUE_ID)

    def literal(self, literal: Literal) -> int:
        if literal.positive:
            return self.mk(literal.var, FALSE_ID, TRUE_ID)
        return self.mk(literal.var, TRUE_ID, FALSE_ID)

    def build_term(self, literals: Iterable[Literal]) -> int:
        """OBDD of a conjunction of literals, built bottom-up as a chain.

        Raises:
            InconsistentTermError: On complementary literals.
            OrderMismatchError: On a variable missing from the order.
        """
        term = sorted(check_term(literals), key=lambda lit: self.level(lit.var), reverse=True)
        result = TRUE_ID
        for lit in term:
            if lit.positive:
                result = self.mk(lit.var, FALSE_ID, result)
            else:
                result = self.mk(lit.var, result, FALSE_ID)
        return result

    def negate(self, f: int) -> int:
        self._check(f)
        return self._negate(f)

    def _negate(self, f: int) -> int:
        if f == FALSE_ID:
            return TRUE_ID
        if f == TRUE_ID:
            return FALSE_ID
        cached = self._not_cache.get(f)
        if cached is not None:
            return cached
        node = self.node(f)
        result = self.mk(node.var, self._negate(node.lo), self._negate(node.hi))
        self._not_cache[f] = result
        return result

    def apply(self, op: BoolOp, f: int, g: int) -> int:
        """Combine two OBDDs of this manager with a binary connective."""
        self._check(f)
        self._check(g)
        return self._apply(op, f, g)

    def _terminal_case(self, op: BoolOp, f: int, g: int) -> Optional[int]:
        if op is BoolOp.AND:
            if FALSE_ID in (f, g):
                return FALSE_ID
            if f == TRUE_ID or f == g:
                return g
            if g == TRUE_ID:
                return f
        elif op is BoolOp.OR:
            if TRUE_ID in (f, g):
                return TRUE_ID
            if f == FALSE_ID or f == g:
                return g
            if g == FALSE_ID:
                return f
        elif op is BoolOp.XOR:
            if f == g:
                return FALSE_ID
            if f == FALSE_ID:
                return g
            if g == FALSE_ID:
                return f
            if f == TRUE_ID:
                return self._negate(g)
            if g == TRUE_ID:
                return self._negate(f)
        else:
            if f == g:
                return TRUE_ID
            if f == TRUE_ID:
                return g
            if g == TRUE_ID:
                return f
            if f == FALSE_ID:
                return self._negate(g)
            if g == FALSE_ID:
                return self._negate(f)
        return None

    def _cofactors(self, f: int, level: int) -> tuple[int, int]:
        if self._top_level(f) != level:
            return f, f
        node = self.node(f)
        return node.lo, node.hi

    def _apply(self, op: BoolOp, f: int, g: int) -> int:
        terminal = self._terminal_case(op, f, g)
        if terminal is not None:
            return terminal
        if f > g:
            f, g = g, f
        key = (op, f, g)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        level = min(self._top_level(f), self._top_level(g))
        f0, f1 = self._cofactors(f, level)
        g0, g1 = self._cofactors(g, level)
        result = self.mk(self._order[level], self._apply(op, f0, g0), self._apply(op, f1, g1))
        self._cache[key] = result
        return result

    def biconditional_with_fresh(self, fresh: int, f: int) -> int:
        """OBDD of ``fresh ⇔ f``.

        ``fresh`` is appended to the order when the manager does not know it
        yet, which keeps the result linear in the size of ``f``.

        Raises:
            FreshVarOccursError: If ``fresh`` already occurs in ``f``.
        """
        self._check(f)
        if fresh in self.support(f):
            raise FreshVarOccursError(f"variable {fresh} occurs in the OBDD")
        self.ensure_var(fresh)
        return self._apply(BoolOp.IFF, self.var_node(fresh), f)

    # --- queries ---------------------------------------------------------

    def reachable(self, f: int) -> list[int]:
        """Internal nodes reachable from ``f``, in increasing id order."""
        self._check(f)
        seen: set[int] = set()
        stack = [f]
        while stack:
            current = stack.pop()
            if current in seen or self.is_terminal(current):
                continue
            seen.add(current)
            node = self.node(current)
            stack.extend((node.lo, node.hi))
        return sorted(seen)

    def support(self, f: int) -> frozenset[int]:
        return frozenset(self.node(i).var for i in self.reachable(f))

    def size(self, f: int) -> int:
        return len(self.reachable(f))

    def evaluate(self, f: int, assignment: Mapping[int, int]) -> int:
        self._check(f)
        while not self.is_terminal(f):
            node = self.node(f)
            f = node.hi if assignment.get(node.var, 0) else node.lo
        return f

    def count(self, f: int) -> int:
        """Number of models of ``f`` over every variable of the order."""
        memo: dict[int, int] = {FALSE_ID: 0, TRUE_ID: 1}
        for node_id in self.reachable(f):
            node = self.node(node_id)
            level = self._level[node.var]
            memo[node_id] = memo[node.lo] * 2 ** (self._top_level(node.lo) - level - 1) + memo[
                node.hi
            ] * 2 ** (self._top_level(node.hi) - level - 1)
        return memo[f] * 2 ** self._top_level(f)


def obdd_to_nnf(manager: ObddManager, f: int, num_vars: Optional[int] = None) -> NnfCircuit:
    """Decision-DNNF equivalent to ``f``.

    Every internal node becomes ``Or(And(¬v, lo'), And(v, hi'))`` tagged with
    the decision variable ``v``; the output is linear in the OBDD size.
    """
    builder = CircuitBuilder(num_vars if num_vars is not None else manager.num_vars)
    mapped: dict[int, int] = {FALSE_ID: builder.false(), TRUE_ID: builder.true()}
    for node_id in manager.reachable(f):
        node = manager.node(node_id)
        low = builder.conjoin(
            [builder.literal(Literal(var=node.var, positive=False)), mapped[node.lo]]
        )
        high = builder.conjoin([builder.literal(Literal(var=node.var)), mapped[node.hi]])
        mapped[node_id] = builder.disjoin([low, high], decision_var=node.var)
    logger.debug("converted OBDD node %s to NNF with %s nodes", f, len(builder))
    return builder.build(mapped[f])
