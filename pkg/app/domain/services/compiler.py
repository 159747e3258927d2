"""CNF → decision-DNNF compiler plus DNF/MODS builders.

The compiler is a plain exhaustive search: unit propagation, a split into
variable-disjoint components, otherwise a decision on the lowest variable.
Residual formulas are cached by their sorted clause list.
"""

import logging
from typing import Iterable, Mapping, Optional, Sequence

from app.core.config import COMPILE_CACHE_LIMIT
from app.domain.entities.circuit import CircuitBuilder, Literal, NnfCircuit
from app.domain.entities.cnf import Cnf

logger = logging.getLogger(__name__)

Clauses = frozenset[frozenset[int]]


def _assign(clauses: Clauses, lit: int) -> Clauses:
    """Clauses after making ``lit`` true."""
    return frozenset(c - {-lit} for c in clauses if lit not in c)


def _unit_propagate(clauses: Clauses) -> tuple[list[int], Optional[Clauses]]:
    """Implied literals and residual clauses; None residual on conflict."""
    implied: list[int] = []
    while True:
        if frozenset() in clauses:
            return implied, None
        units = [next(iter(c)) for c in clauses if len(c) == 1]
        if not units:
            return implied, clauses
        lit = min(units, key=lambda u: (abs(u), u))
        implied.append(lit)
        clauses = _assign(clauses, lit)


def _components(clauses: Clauses) -> list[Clauses]:
    """Variable-connected components, ordered by their lowest variable."""
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        while parent.setdefault(v, v) != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for clause in clauses:
        first, *rest = (abs(lit) for lit in clause)
        for v in rest:
            parent[find(v)] = find(first)
    groups: dict[int, set[frozenset[int]]] = {}
    for clause in clauses:
        groups.setdefault(find(abs(next(iter(clause)))), set()).add(clause)
    parts = [frozenset(g) for g in groups.values()]
    return sorted(parts, key=lambda part: min(abs(lit) for c in part for lit in c))


def _fingerprint(clauses: Clauses) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(c)) for c in clauses))


class DnnfCompiler:
    """Compiles clause sets over ``1..num_vars`` into one shared DAG."""

    def __init__(self, num_vars: int, cache_limit: int = COMPILE_CACHE_LIMIT) -> None:
        self.num_vars = num_vars
        self.cache_limit = cache_limit
        self._builder = CircuitBuilder(num_vars)
        self._cache: dict[tuple[tuple[int, ...], ...], int] = {}
        self.decisions = 0
        self.cache_hits = 0

    def _literal(self, lit: int) -> int:
        return self._builder.literal(Literal.from_dimacs(lit))

    def compile(self, clauses: Iterable[Iterable[int]]) -> NnfCircuit:
        normalized = set()
        for clause in clauses:
            lits = frozenset(clause)
            if not any(-lit in lits for lit in lits):
                normalized.add(lits)
        root = self._compile(frozenset(normalized))
        circuit = self._builder.build(root)
        logger.info(
            "compiled %s clauses: %s nodes, %s edges, %s decisions, %s cache hits",
            len(normalized),
            len(circuit.nodes),
            circuit.size,
            self.decisions,
            self.cache_hits,
        )
        return circuit

    def _compile(self, clauses: Clauses) -> int:
        builder = self._builder
        implied, residual = _unit_propagate(clauses)
        if residual is None:
            return builder.false()
        units = [self._literal(lit) for lit in sorted(implied, key=abs)]
        if not residual:
            return builder.conjoin(units)
        key = _fingerprint(residual)
        body = self._cache.get(key)
        if body is not None:
            self.cache_hits += 1
        else:
            parts = _components(residual)
            if len(parts) > 1:
                body = builder.conjoin(self._compile(part) for part in parts)
            else:
                body = self._decide(residual)
            if len(self._cache) < self.cache_limit:
                self._cache[key] = body
        return builder.conjoin([*units, body])

    def _decide(self, clauses: Clauses) -> int:
        builder = self._builder
        var = min(abs(lit) for clause in clauses for lit in clause)
        self.decisions += 1
        low = builder.conjoin([self._literal(-var), self._compile(_assign(clauses, -var))])
        high = builder.conjoin([self._literal(var), self._compile(_assign(clauses, var))])
        return builder.disjoin([low, high], decision_var=var)


def compile_cnf_to_dnnf(
    clauses: Iterable[Iterable[int]], num_vars: int, cache_limit: int = COMPILE_CACHE_LIMIT
) -> NnfCircuit:
    """Decomposable circuit with exactly the models of the CNF (⊥ if unsatisfiable)."""
    return DnnfCompiler(num_vars, cache_limit).compile(clauses)


def compile_cnf(cnf: Cnf, cache_limit: int = COMPILE_CACHE_LIMIT) -> NnfCircuit:
    return compile_cnf_to_dnnf(cnf.clauses, cnf.num_vars, cache_limit)


def build_dnf(terms: Sequence[Sequence[Literal]], num_vars: int) -> NnfCircuit:
    """Flat Or of And-of-literals; inconsistent terms are dropped.

    Literal leaves are shared between terms and the shape is kept as given,
    so an empty term list yields ⊥ and an empty term yields a ⊤ child.
    """
    builder = CircuitBuilder(num_vars)
    children = []
    for term in terms:
        polarity: dict[int, bool] = {}
        if any(polarity.setdefault(lit.var, lit.positive) != lit.positive for lit in term):
            continue
        children.append(builder.term(list(dict.fromkeys(term))))
    return builder.build(builder.add_or(children))


def build_mods(models: Sequence[Mapping[int, int]], num_vars: int) -> NnfCircuit:
    """Explicit model list as a DNF of full terms over ``1..num_vars``."""
    terms = [
        [Literal(var=var, positive=bool(model[var])) for var in range(1, num_vars + 1)]
        for model in models
    ]
    return build_dnf(terms, num_vars)
