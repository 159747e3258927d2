"""Application service for optimization requests.

Chooses an optimizer from the circuit shape, the base family and the
aggregator, and handles conditioning on a consistent term before solving.
"""

import logging
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import JOBS, N_CAP, ORACLE_MAX_VARS
from app.core.errors import IntractableCombinationError, NnfOptError
from app.domain.entities.circuit import NnfCircuit, NodeKind, constant_circuit
from app.domain.entities.objective import (
    Aggregator,
    Family,
    WeightedBase,
    WeightedItem,
    evaluate_base,
)
from app.domain.entities.obdd import ObddManager
from app.domain.entities.results import OptResult
from app.domain.services.circuit_ops import check_decomposable, condition
from app.domain.services.optimizers import (
    opt_dnf_monotone,
    opt_dnnf_linear,
    opt_fpt_polynomial,
    opt_obdd_linearize,
    oracle_enumerate,
)
from app.domain.services.optimizers.monotone import is_dnf_shape

logger = logging.getLogger(__name__)

OWA_HARDNESS = "OPT[L, 𝓛₊, OWA_W] is NP-hard"
CONSISTENCY_HARDNESS = "If L does not satisfy CO unless P = NP, then OPT[L, F, ⊕] is NP-hard"
GENERAL_HARDNESS = (
    "OPT[L, 𝓖⁺, ⊕] and OPT[L, 𝓖₊, ⊕] are NP-hard under the restriction n ≥ 2 and φ = ⊤"
)
QUADRATIC_HARDNESS = (
    "OPT[L, 𝓠⁺, ⊕] and OPT[L, 𝓠₊, ⊕] are NP-hard … even under the restriction φ = ⊤"
)


class Algorithm(str, Enum):
    AUTO = "auto"
    DNNF_LINEAR = "dnnf-linear"
    DNF_MONOTONE = "dnf-monotone"
    FPT_POLY = "fpt-poly"
    OBDD_LINEARIZE = "obdd-linearize"
    BRUTE = "brute"


class DispatchOptions(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    algorithm: Algorithm = Algorithm.AUTO
    n_cap: int = Field(default=N_CAP, ge=0)
    jobs: int = Field(default=JOBS, ge=1)
    oracle_max_vars: int = Field(default=ORACLE_MAX_VARS, ge=0)


def condition_base(
    base: WeightedBase, gamma: Mapping[int, int], keep_arity: bool = False
) -> WeightedBase:
    """``b | gamma``: each item conditioned on ``gamma``.

    Items falsified by ``gamma`` are dropped, which leaves Σ and leximax
    rankings of the models agreeing with ``gamma`` unchanged. With
    ``keep_arity`` they stay as ⊥ circuit items instead (needed for OWA).
    """
    items: list[WeightedItem] = []
    falsified = WeightedItem.formula(constant_circuit(False), 0)
    for item in base.items:
        if item.circuit is not None:
            reduced = condition(item.circuit, gamma)
            if reduced.root_node.kind is NodeKind.TRUE:
                items.append(WeightedItem.term((), item.weight))
            elif reduced.root_node.kind is NodeKind.FALSE:
                if keep_arity:
                    items.append(falsified.model_copy(update={"weight": item.weight}))
            else:
                items.append(WeightedItem.formula(reduced, item.weight, source=item.source))
            continue
        if any(lit.var in gamma and not lit.satisfied_by(gamma) for lit in item.literals):
            if keep_arity:
                items.append(falsified.model_copy(update={"weight": item.weight}))
            continue
        rest = [lit for lit in item.literals if lit.var not in gamma]
        items.append(WeightedItem.term(rest, item.weight))
    return WeightedBase(items=tuple(items), num_vars=base.num_vars)


class OptimizationService:
    """Use cases around ``OPT[L, F, ⊕]``.

    Example:
        >>> service = OptimizationService(DispatchOptions(algorithm=Algorithm.AUTO))
        >>> result = service.optimize(circuit, base, SUM, gamma={1: 1})
        >>> result.algorithm
        'dnnf-linear'
    """

    def __init__(self, options: Optional[DispatchOptions] = None) -> None:
        self.options = options or DispatchOptions()

    def dispatch(
        self, circuit: NnfCircuit, base: WeightedBase, aggregator: Aggregator
    ) -> OptResult:
        """Run the requested optimizer, or pick one when the algorithm is ``auto``.

        Raises:
            IntractableCombinationError: If ``auto`` finds no applicable routine.
            NnfOptError: If an explicitly requested routine rejects the input.
        """
        chosen = self.options.algorithm
        if chosen is Algorithm.AUTO:
            chosen = self.route(circuit, base, aggregator)
            logger.info("auto dispatch chose %s", chosen.value)
        if chosen is Algorithm.DNNF_LINEAR:
            return opt_dnnf_linear(circuit, base, aggregator)
        if chosen is Algorithm.DNF_MONOTONE:
            return opt_dnf_monotone(circuit, base, aggregator)
        if chosen is Algorithm.FPT_POLY:
            return opt_fpt_polynomial(
                circuit, base, aggregator, n_cap=self.options.n_cap, jobs=self.options.jobs
            )
        if chosen is Algorithm.BRUTE:
            return oracle_enumerate(
                circuit, base, aggregator, max_vars=self.options.oracle_max_vars
            )
        raise NnfOptError(f"{chosen.value} works on OBDD input only")

    def route(self, circuit: NnfCircuit, base: WeightedBase, aggregator: Aggregator) -> Algorithm:
        tag = base.classify()
        decomposable = check_decomposable(circuit).decomposable
        if not aggregator.is_owa:
            if decomposable and tag.family is Family.L:
                return Algorithm.DNNF_LINEAR
            if tag.positive_literals and tag.nonnegative_weights and is_dnf_shape(circuit):
                return Algorithm.DNF_MONOTONE
            if decomposable and tag.family is not Family.G and base.n <= self.options.n_cap:
                return Algorithm.FPT_POLY
        universe = max(circuit.num_vars, base.num_vars)
        if universe <= self.options.oracle_max_vars:
            return Algorithm.BRUTE
        message = f"no tractable routine for {tag} with {aggregator} over {universe} variables"
        if aggregator.is_owa:
            raise IntractableCombinationError(message, OWA_HARDNESS)
        if not decomposable:
            raise IntractableCombinationError(message, CONSISTENCY_HARDNESS)
        if tag.family is Family.G:
            raise IntractableCombinationError(message, GENERAL_HARDNESS)
        raise IntractableCombinationError(message, QUADRATIC_HARDNESS)

    def optimize(
        self,
        circuit: NnfCircuit,
        base: WeightedBase,
        aggregator: Aggregator,
        gamma: Optional[Mapping[int, int]] = None,
    ) -> OptResult:
        """Optimal model of ``circuit ∧ gamma``.

        The conditioned problem is solved, ``gamma`` is written back into the
        witness and the score is recomputed against the original base.
        """
        if not gamma:
            return self.dispatch(circuit, base, aggregator)
        reduced = condition(circuit, gamma)
        reduced_base = condition_base(base, gamma, keep_arity=aggregator.is_owa)
        logger.info(
            "conditioned on %s vars: %s -> %s edges", len(gamma), circuit.size, reduced.size
        )
        result = self.dispatch(reduced, reduced_base, aggregator)
        if not result.is_optimal:
            return result
        assert result.model is not None
        model = {**result.model, **{var: int(value) for var, value in gamma.items()}}
        score = evaluate_base(base, aggregator, model)
        return OptResult.optimal(model, score, result.algorithm, result.stats)

    def optimize_obdd(
        self,
        manager: ObddManager,
        constraint: int,
        items: Sequence[tuple[int, Fraction | int]],
        aggregator: Aggregator,
    ) -> OptResult:
        if self.options.algorithm not in (Algorithm.AUTO, Algorithm.OBDD_LINEARIZE):
            raise NnfOptError(f"{self.options.algorithm.value} does not accept OBDD input")
        return opt_obdd_linearize(manager, constraint, items, aggregator, n_cap=self.options.n_cap)


def dispatch(
    circuit: NnfCircuit,
    base: WeightedBase,
    aggregator: Aggregator,
    options: Optional[DispatchOptions] = None,
) -> OptResult:
    return OptimizationService(options).dispatch(circuit, base, aggregator)
