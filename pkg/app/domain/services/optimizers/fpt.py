"""FPT optimization (parameter n) of term bases over DNNF circuits.

Each sign pattern ``S ⊆ {1..n}`` fixes which items are satisfied. The pattern
``⋀_{i∈S} tᵢ ∧ ⋀_{i∉S} ¬tᵢ`` is distributed into candidate terms and a
candidate is feasible when the circuit conditioned on it is consistent. All
feasible models of a pattern share the same item values, hence the same
score.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional

from app.core.config import JOBS, N_CAP
from app.core.errors import FamilyMismatchError, NExceedsCapError
from app.domain.entities.circuit import Literal, NnfCircuit
from app.domain.entities.objective import (
    Aggregator,
    Family,
    Score,
    WeightedBase,
    aggregate,
)
from app.domain.entities.results import OptResult
from app.domain.services.circuit_ops import DnnfQueries
from app.domain.services.optimizers.linear import require_sum_or_leximax

logger = logging.getLogger(__name__)

# (score, pattern, witness) of the best pattern found by a worker
_Candidate = tuple[Score, int, dict[int, int]]


class _PatternSearch:
    def __init__(
        self, queries: DnnfQueries, base: WeightedBase, aggregator: Aggregator, num_vars: int
    ) -> None:
        self.queries = queries
        self.terms = [item.literals for item in base.items]
        self.weights = [item.weight for item in base.items]
        self.aggregator = aggregator
        self.num_vars = num_vars

    def score(self, pattern: int) -> Score:
        values = [
            w if pattern >> i & 1 else Fraction(0) for i, w in enumerate(self.weights)
        ]
        return aggregate(values, self.aggregator)

    def witness(self, pattern: int) -> Optional[dict[int, int]]:
        """Model of the circuit realising exactly the pattern, or None."""
        fixed: dict[int, int] = {}
        clauses: list[tuple[Literal, ...]] = []
        for i, term in enumerate(self.terms):
            if pattern >> i & 1:
                for lit in term:
                    if fixed.setdefault(lit.var, int(lit.positive)) != int(lit.positive):
                        return None
            else:
                clauses.append(tuple(lit.complementary() for lit in term))
        if not self.queries.consistent_under(fixed):
            return None
        term = self._distribute(clauses, 0, fixed)
        if term is None:
            return None
        model = self.queries.find_model(term)
        if model is None:
            return None
        for var in range(1, self.num_vars + 1):
            model.setdefault(var, 0)
        return model

    def _distribute(
        self, clauses: list[tuple[Literal, ...]], k: int, term: dict[int, int]
    ) -> Optional[dict[int, int]]:
        """First candidate term, in left-to-right literal order, consistent with the circuit."""
        if k == len(clauses):
            return dict(term)
        clause = clauses[k]
        if any(term.get(lit.var) == int(lit.positive) for lit in clause):
            return self._distribute(clauses, k + 1, term)
        for lit in clause:
            if lit.var in term:
                continue
            term[lit.var] = int(lit.positive)
            if self.queries.consistent_under(term):
                found = self._distribute(clauses, k + 1, term)
                if found is not None:
                    del term[lit.var]
                    return found
            del term[lit.var]
        return None

    def explore(self, patterns: range) -> Optional[_Candidate]:
        best: Optional[_Candidate] = None
        for pattern in patterns:
            score = self.score(pattern)
            # a tie never replaces an earlier pattern
            if best is not None and score >= best[0]:
                continue
            model = self.witness(pattern)
            if model is not None:
                best = (score, pattern, model)
        return best


def _split(total: int, parts: int) -> list[range]:
    step = -(-total // parts)
    return [range(start, min(total, start + step)) for start in range(0, total, step)]


def opt_fpt_polynomial(
    circuit: NnfCircuit,
    base: WeightedBase,
    aggregator: Aggregator,
    n_cap: int = N_CAP,
    jobs: int = JOBS,
) -> OptResult:
    """Optimal model of a DNNF circuit under a term base, in O(2ⁿ·poly).

    ``jobs > 1`` splits the pattern range across threads; the result does not
    depend on it.

    Raises:
        FamilyMismatchError: If the base has circuit items.
        NExceedsCapError: If ``base.n > n_cap``.
        NotDecomposableError: If the circuit is not DNNF.
    """
    tag = base.classify()
    if tag.family is Family.G:
        raise FamilyMismatchError("FPT optimization needs term items")
    if base.n > n_cap:
        raise NExceedsCapError(f"n = {base.n} exceeds the cap {n_cap}")
    require_sum_or_leximax(aggregator)
    search = _PatternSearch(
        DnnfQueries(circuit), base, aggregator, max(circuit.num_vars, base.num_vars)
    )
    total = 1 << base.n
    if jobs > 1 and total > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            found = [c for c in pool.map(search.explore, _split(total, jobs)) if c is not None]
    else:
        single = search.explore(range(total))
        found = [single] if single is not None else []
    stats = {"patterns": total}
    if not found:
        return OptResult.no_solution("fpt-poly", stats)
    best = found[0]
    for candidate in found[1:]:
        if candidate[0] < best[0] or (candidate[0] == best[0] and candidate[1] < best[1]):
            best = candidate
    logger.info("fpt-poly: %s patterns, optimum %s (pattern %s)", total, best[0], best[1])
    return OptResult.optimal(best[2], best[0], "fpt-poly", stats)
