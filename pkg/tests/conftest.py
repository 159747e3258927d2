"""Shared pytest fixtures for all tests.

Variables of the small two-package example: A1=1, A2=2, B=3, C=4.
"""

import random
from typing import Callable, Optional

import pytest

from app.domain.entities.circuit import CircuitBuilder, Literal, NnfCircuit
from app.domain.entities.obdd import BoolOp, ObddManager
from app.domain.entities.objective import WeightedBase, WeightedItem
from app.domain.services.generators import gen_package_demo

A1, A2, B, C = 1, 2, 3, 4

# (¬A1 ∨ B) ∧ (¬A1 ∨ ¬A2) ∧ (B ∨ ¬A2) ∧ (¬A2 ∨ C)
SMALL_CNF: tuple[tuple[int, ...], ...] = ((-A1, B), (-A1, -A2), (B, -A2), (-A2, C))

# (A1 ∧ ¬A2 ∧ B) ∨ (¬A2 ∧ ¬A1) ∨ (B ∧ ¬A1 ∧ A2 ∧ C)
SMALL_DNF: tuple[tuple[int, ...], ...] = ((A1, -A2, B), (-A2, -A1), (B, -A1, A2, C))


def _lits(values: tuple[int, ...]) -> list[Literal]:
    return [Literal.from_dimacs(v) for v in values]


@pytest.fixture
def cnf_circuit() -> NnfCircuit:
    """And of four Or clauses; the root And is not decomposable."""
    builder = CircuitBuilder(4)
    clauses = [builder.add_or(builder.literal(lit) for lit in _lits(c)) for c in SMALL_CNF]
    return builder.build(builder.add_and(clauses))


@pytest.fixture
def dnf_circuit() -> NnfCircuit:
    """Or of three And terms: 6 literal leaves, 3 And nodes, 1 Or node."""
    builder = CircuitBuilder(4)
    return builder.build(builder.add_or(builder.term(_lits(t)) for t in SMALL_DNF))


@pytest.fixture
def package_demo():
    return gen_package_demo()


def _random_dnnf(
    rng: random.Random, variables: list[int], builder: CircuitBuilder, depth: int
) -> int:
    if not variables:
        return builder.true() if rng.random() < 0.9 else builder.false()
    if depth == 0 or len(variables) == 1:
        chosen = rng.sample(variables, rng.randint(1, min(2, len(variables))))
        return builder.term([Literal(var=v, positive=rng.random() < 0.5) for v in chosen])
    if rng.random() < 0.5:
        shuffled = variables[:]
        rng.shuffle(shuffled)
        cut = rng.randint(1, len(shuffled) - 1)
        parts = [shuffled[:cut], shuffled[cut:]]
        return builder.add_and(_random_dnnf(rng, part, builder, depth - 1) for part in parts)
    children = []
    for _ in range(rng.randint(2, 3)):
        subset = rng.sample(variables, rng.randint(1, len(variables)))
        children.append(_random_dnnf(rng, subset, builder, depth - 1))
    return builder.add_or(children)


@pytest.fixture
def random_dnnf() -> Callable[..., NnfCircuit]:
    """Factory for random decomposable circuits over ``1..num_vars``."""

    def make(rng: random.Random, num_vars: int, depth: int = 3) -> NnfCircuit:
        builder = CircuitBuilder(num_vars)
        variables = rng.sample(range(1, num_vars + 1), rng.randint(1, num_vars))
        return builder.build(_random_dnnf(rng, variables, builder, depth))

    return make


@pytest.fixture
def random_dnf() -> Callable[..., NnfCircuit]:
    """Factory for random flat DNF circuits (terms may be inconsistent)."""

    def make(rng: random.Random, num_vars: int, terms: int = 4) -> NnfCircuit:
        builder = CircuitBuilder(num_vars)
        nodes = []
        for _ in range(rng.randint(1, terms)):
            size = rng.randint(1, min(3, num_vars))
            literals = [
                Literal(var=rng.randint(1, num_vars), positive=rng.random() < 0.5)
                for _ in range(size)
            ]
            nodes.append(builder.add_and(builder.literal(lit) for lit in literals))
        return builder.build(builder.add_or(nodes))

    return make


@pytest.fixture
def random_linear_base() -> Callable[..., WeightedBase]:
    """Up to two literal items per variable, weights in -3..3, sometimes a ⊤ item."""

    def make(rng: random.Random, num_vars: int) -> WeightedBase:
        items = []
        for var in range(1, num_vars + 1):
            for _ in range(rng.randint(0, 2)):
                lit = Literal(var=var, positive=rng.random() < 0.5)
                items.append(WeightedItem.term([lit], rng.randint(-3, 3)))
        if rng.random() < 0.2:
            items.append(WeightedItem.term([], rng.randint(-3, 3)))
        rng.shuffle(items)
        return WeightedBase(items=tuple(items), num_vars=num_vars)

    return make


@pytest.fixture
def random_term_base() -> Callable[..., WeightedBase]:
    """``n`` term items of 1..max_len literals over distinct variables."""

    def make(
        rng: random.Random,
        num_vars: int,
        n: int,
        max_len: int = 3,
        positive: bool = False,
        nonnegative: bool = False,
    ) -> WeightedBase:
        items = []
        for _ in range(n):
            chosen = rng.sample(range(1, num_vars + 1), rng.randint(1, min(max_len, num_vars)))
            literals = [Literal(var=v, positive=positive or rng.random() < 0.5) for v in chosen]
            weight = rng.randint(0 if nonnegative else -3, 3)
            items.append(WeightedItem.term(literals, weight))
        return WeightedBase(items=tuple(items), num_vars=num_vars)

    return make


@pytest.fixture
def random_obdd() -> Callable[..., int]:
    """Factory adding a random function to an existing manager."""

    def make(rng: random.Random, manager: ObddManager, steps: Optional[int] = None) -> int:
        variables = list(manager.order)

        def literal() -> int:
            return manager.literal(
                Literal(var=rng.choice(variables), positive=rng.random() < 0.5)
            )

        f = literal()
        for _ in range(steps if steps is not None else rng.randint(1, 4)):
            op = rng.choice([BoolOp.AND, BoolOp.OR, BoolOp.XOR, BoolOp.IFF])
            f = manager.apply(op, f, literal())
        return f

    return make


@pytest.fixture
def random_monotone_circuit() -> Callable[..., NnfCircuit]:
    """Factory for random negation-free circuits: And/Or over positive literals."""

    def make(rng: random.Random, num_vars: int, depth: int = 2) -> NnfCircuit:
        builder = CircuitBuilder(num_vars)

        def grow(level: int) -> int:
            if level == 0:
                return builder.literal(Literal(var=rng.randint(1, num_vars)))
            children = [grow(level - 1) for _ in range(rng.randint(1, 3))]
            return builder.add_and(children) if rng.random() < 0.5 else builder.add_or(children)

        return builder.build(grow(rng.randint(1, depth)))

    return make
