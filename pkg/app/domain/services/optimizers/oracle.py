"""Brute-force ground truth.

Interpretations over ``1..N`` are numbered in lexicographic order with
variable 1 as the most significant bit, and evaluated in blocks: every
circuit node becomes a boolean numpy vector over the block, computed bottom-up.
Item values are kept as ``Fraction`` objects so the minimum is exact.
"""

import logging
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from app.core.config import ORACLE_CHUNK, ORACLE_MAX_VARS
from app.core.errors import OwaArityMismatchError, TooManyVarsError
from app.domain.entities.circuit import NnfCircuit, NodeKind
from app.domain.entities.objective import (
    Aggregator,
    AggregatorKind,
    Score,
    WeightedBase,
    WeightedItem,
)
from app.domain.entities.results import OptResult

logger = logging.getLogger(__name__)


def decode_index(index: int, num_vars: int) -> dict[int, int]:
    """Interpretation number ``index`` in lexicographic order."""
    return {var: (index >> (num_vars - var)) & 1 for var in range(1, num_vars + 1)}


def encode_model(model: dict[int, int], num_vars: int) -> int:
    return sum(model.get(var, 0) << (num_vars - var) for var in range(1, num_vars + 1))


def _variable_bits(indices: np.ndarray, num_vars: int, var: int) -> np.ndarray:
    return ((indices >> (num_vars - var)) & 1).astype(bool)


def evaluate_block(circuit: NnfCircuit, indices: np.ndarray, num_vars: int) -> np.ndarray:
    """Truth value of ``circuit`` on each interpretation number in ``indices``."""
    values: dict[int, np.ndarray] = {}
    size = len(indices)
    for index in circuit.reachable():
        node = circuit.nodes[index]
        if node.kind is NodeKind.TRUE:
            values[index] = np.ones(size, dtype=bool)
        elif node.kind is NodeKind.FALSE:
            values[index] = np.zeros(size, dtype=bool)
        elif node.kind is NodeKind.LIT:
            lit = node.literal
            bits = _variable_bits(indices, num_vars, lit.var)  # type: ignore[union-attr]
            values[index] = bits if lit.positive else ~bits  # type: ignore[union-attr]
        elif node.kind is NodeKind.AND:
            values[index] = np.logical_and.reduce([values[c] for c in node.children])
        else:
            values[index] = np.logical_or.reduce([values[c] for c in node.children])
    return values[circuit.root]


def _item_block(item: WeightedItem, indices: np.ndarray, num_vars: int) -> np.ndarray:
    if item.circuit is not None:
        return evaluate_block(item.circuit, indices, num_vars)
    sat = np.ones(len(indices), dtype=bool)
    for lit in item.literals:
        bits = _variable_bits(indices, num_vars, lit.var)
        sat &= bits if lit.positive else ~bits
    return sat


def _universe(circuit: NnfCircuit, base: Optional[WeightedBase] = None) -> int:
    return max(circuit.num_vars, base.num_vars if base is not None else 0)


def _blocks(num_vars: int, chunk: int) -> Iterator[np.ndarray]:
    total = 1 << num_vars
    for start in range(0, total, chunk):
        yield np.arange(start, min(total, start + chunk), dtype=np.int64)


def model_indices(
    circuit: NnfCircuit, num_vars: Optional[int] = None, chunk: int = ORACLE_CHUNK
) -> list[int]:
    """Numbers of all models of ``circuit`` over ``1..num_vars``."""
    universe = circuit.num_vars if num_vars is None else num_vars
    found: list[int] = []
    for indices in _blocks(universe, chunk):
        found.extend(int(i) for i in indices[evaluate_block(circuit, indices, universe)])
    return found


def count_models(
    circuit: NnfCircuit, num_vars: Optional[int] = None, chunk: int = ORACLE_CHUNK
) -> int:
    universe = circuit.num_vars if num_vars is None else num_vars
    return sum(
        int(np.count_nonzero(evaluate_block(circuit, indices, universe)))
        for indices in _blocks(universe, chunk)
    )


def _block_minimum(
    values: np.ndarray, aggregator: Aggregator, n: int
) -> tuple[Score, int]:
    """Best score in a block of candidate columns and the first column reaching it."""
    columns = values.shape[1]
    if n == 0:
        if aggregator.kind is AggregatorKind.LEXIMAX:
            return Score.of_vector(()), 0
        return Score.of_sum(0), 0
    ordered = np.sort(values, axis=0)[::-1]
    if aggregator.kind is AggregatorKind.LEXIMAX:
        candidates = np.arange(columns)
        for row in range(n):
            entries = ordered[row, candidates]
            candidates = candidates[np.asarray(entries == min(entries), dtype=bool)]
        best = int(candidates[0])
        return Score.of_vector(ordered[:, best]), best
    if aggregator.kind is AggregatorKind.SUM:
        totals = values.sum(axis=0)
    else:
        weights = np.array(aggregator.owa_weights, dtype=object).reshape(n, 1)
        totals = (weights * ordered).sum(axis=0)
    lowest = min(totals)
    best = int(np.flatnonzero(np.asarray(totals == lowest, dtype=bool))[0])
    return Score.of_sum(lowest), best


def oracle_enumerate(
    circuit: NnfCircuit,
    base: WeightedBase,
    aggregator: Aggregator,
    max_vars: int = ORACLE_MAX_VARS,
    chunk: int = ORACLE_CHUNK,
) -> OptResult:
    """Exhaustive optimum; the witness is the lexicographically smallest optimal model.

    Supports every family and aggregator.

    Raises:
        TooManyVarsError: Above ``max_vars`` variables.
        OwaArityMismatchError: If the OWA vector does not match ``base.n``.
    """
    universe = _universe(circuit, base)
    if universe > max_vars:
        raise TooManyVarsError(f"{universe} variables exceed the oracle cap {max_vars}")
    if aggregator.kind is AggregatorKind.OWA and len(aggregator.owa_weights) != base.n:
        raise OwaArityMismatchError(
            f"OWA vector has {len(aggregator.owa_weights)} weights for {base.n} items"
        )
    best: Optional[tuple[Score, int]] = None
    feasible = 0
    for indices in _blocks(universe, chunk):
        candidates = indices[evaluate_block(circuit, indices, universe)]
        if not len(candidates):
            continue
        feasible += len(candidates)
        values = np.full((base.n, len(candidates)), Fraction(0), dtype=object)
        for row, item in enumerate(base.items):
            values[row, _item_block(item, candidates, universe)] = item.weight
        score, column = _block_minimum(values, aggregator, base.n)
        if best is None or score < best[0]:
            best = (score, int(candidates[column]))
    stats = {"interpretations": 1 << universe, "models": feasible}
    if best is None:
        return OptResult.no_solution("brute", stats)
    logger.info("brute: optimum %s among %s models", best[0], feasible)
    return OptResult.optimal(decode_index(best[1], universe), best[0], "brute", stats)
