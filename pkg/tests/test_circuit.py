"""Tests for NNF circuit entities and circuit operations."""

import itertools
import random

import pytest
from pydantic import ValidationError

from app.core.errors import InconsistentTermError, NotDecomposableError
from app.domain.entities.circuit import (
    CircuitBuilder,
    Literal,
    NnfCircuit,
    NnfNode,
    NodeKind,
    check_term,
    constant_circuit,
)
from app.domain.services.circuit_ops import (
    check_decomposable,
    condition,
    consistent,
    consistent_under,
    evaluate,
    find_model,
    is_smooth,
    smooth,
    vars_of,
)
from app.domain.services.optimizers.oracle import count_models, model_indices

A1, A2, B, C = 1, 2, 3, 4


def assignments(num_vars):
    for bits in itertools.product((0, 1), repeat=num_vars):
        yield {var: bit for var, bit in enumerate(bits, start=1)}


class TestLiteral:
    """Test cases for Literal and terms."""

    def test_from_dimacs_keeps_sign(self):
        """Test that signed integers map to polarity."""
        assert Literal.from_dimacs(-3) == Literal(var=3, positive=False)
        assert Literal.from_dimacs(2).to_dimacs() == 2

    def test_zero_is_rejected(self):
        """Test that 0 is not a literal."""
        with pytest.raises(ValueError):
            Literal.from_dimacs(0)

    def test_complementary_flips_polarity(self):
        """Test complementary literal."""
        assert Literal(var=1).complementary() == Literal(var=1, positive=False)

    def test_check_term_rejects_complementary_pair(self):
        """Test that x ∧ ¬x is not a term."""
        with pytest.raises(InconsistentTermError):
            check_term([Literal(var=1), Literal(var=1, positive=False)])

    def test_check_term_merges_duplicates(self):
        """Test that repeated literals collapse."""
        assert check_term([Literal(var=2), Literal(var=2)]) == (Literal(var=2),)


class TestCircuitBuilder:
    """Test cases for the hash-consing builder."""

    def test_identical_nodes_are_shared(self):
        """Test hash-consing of leaves and gates."""
        builder = CircuitBuilder(2)
        x = builder.literal(Literal(var=1))
        assert builder.literal(Literal(var=1)) == x
        assert builder.add_and([x]) == builder.add_and([x])

    def test_conjoin_propagates_constants(self):
        """Test that ⊥ absorbs a conjunction and ⊤ disappears from it."""
        builder = CircuitBuilder(2)
        x = builder.literal(Literal(var=1))
        assert builder.is_false(builder.conjoin([x, builder.false()]))
        assert builder.conjoin([x, builder.true()]) == x
        assert builder.is_true(builder.conjoin([]))

    def test_disjoin_propagates_constants(self):
        """Test that ⊤ absorbs a disjunction and ⊥ disappears from it."""
        builder = CircuitBuilder(2)
        x = builder.literal(Literal(var=1))
        assert builder.is_true(builder.disjoin([x, builder.true()]))
        assert builder.disjoin([builder.false(), x]) == x
        assert builder.is_false(builder.disjoin([]))

    def test_build_drops_unreachable_nodes(self):
        """Test that build keeps the sub-DAG under the root only."""
        builder = CircuitBuilder(3)
        builder.literal(Literal(var=3))
        x = builder.literal(Literal(var=1))
        y = builder.literal(Literal(var=2))
        circuit = builder.build(builder.add_and([x, y]))

        assert len(circuit.nodes) == 3
        assert circuit.root == 2
        assert circuit.variables == frozenset({1, 2})

    def test_literal_above_num_vars_is_rejected(self):
        """Test the variable range check."""
        with pytest.raises(ValueError):
            CircuitBuilder(1).literal(Literal(var=2))


class TestNnfCircuitValidation:
    """Test cases for NnfCircuit invariants."""

    def test_root_must_be_last(self):
        """Test that the root is the last node."""
        with pytest.raises(ValidationError):
            NnfCircuit(
                nodes=(NnfNode(kind=NodeKind.TRUE), NnfNode(kind=NodeKind.FALSE)),
                root=0,
                num_vars=0,
            )

    def test_children_must_come_first(self):
        """Test that forward references are rejected."""
        with pytest.raises(ValidationError):
            NnfCircuit(
                nodes=(NnfNode(kind=NodeKind.AND, children=(1,)), NnfNode(kind=NodeKind.TRUE)),
                root=1,
                num_vars=0,
            )

    def test_empty_gate_is_rejected(self):
        """Test that 0-ary gates must be stored as constants."""
        with pytest.raises(ValidationError):
            NnfNode(kind=NodeKind.OR, children=())

    def test_decision_hint_only_on_or(self):
        """Test that And nodes carry no decision variable."""
        with pytest.raises(ValidationError):
            NnfNode(kind=NodeKind.AND, children=(0,), decision_var=1)


class TestStructure:
    """Test cases for Vars(N), size and decomposability."""

    def test_vars_of_cnf_root(self, cnf_circuit):
        """Test Vars of the CNF root."""
        assert vars_of(cnf_circuit, cnf_circuit.root) == frozenset({A1, A2, B, C})

    def test_vars_of_leaf_and_constant(self):
        """Test Vars of a literal and of ⊤."""
        builder = CircuitBuilder(3)
        circuit = builder.build(builder.literal(Literal(var=3)))
        assert vars_of(circuit, circuit.root) == frozenset({3})
        assert constant_circuit(True).variables == frozenset()

    def test_var_sets_are_computed_once(self, dnf_circuit):
        """Test that the per-node table is cached and ignored by equality."""
        table = dnf_circuit.var_sets
        assert dnf_circuit.var_sets is table
        assert dnf_circuit.var_table() is table
        assert len(table) == len(dnf_circuit.nodes)
        assert dnf_circuit.variables == frozenset({A1, A2, B, C})
        assert dnf_circuit == NnfCircuit(
            nodes=dnf_circuit.nodes, root=dnf_circuit.root, num_vars=dnf_circuit.num_vars
        )

    def test_dnf_shape(self, dnf_circuit):
        """Test node kinds of the DNF circuit."""
        kinds = [node.kind for node in dnf_circuit.nodes]
        assert len(dnf_circuit.nodes) == 10
        assert kinds.count(NodeKind.LIT) == 6
        assert kinds.count(NodeKind.AND) == 3
        assert kinds.count(NodeKind.OR) == 1
        assert dnf_circuit.size == 12

    def test_dnf_is_decomposable(self, dnf_circuit):
        """Test that the DNF circuit is DNNF."""
        assert check_decomposable(dnf_circuit).decomposable

    def test_cnf_root_violates_decomposability(self, cnf_circuit):
        """Test that the CNF root And is reported."""
        report = check_decomposable(cnf_circuit)
        assert report.decomposable is False
        assert report.violating_node == cnf_circuit.root

    def test_circuit_without_and_is_decomposable(self):
        """Test the vacuous case."""
        builder = CircuitBuilder(2)
        circuit = builder.build(
            builder.add_or([builder.literal(Literal(var=1)), builder.literal(Literal(var=2))])
        )
        assert check_decomposable(circuit).decomposable


class TestEvaluation:
    """Test cases for evaluation and model sets."""

    def test_evaluate_cnf(self, cnf_circuit):
        """Test evaluation of the four clauses."""
        assert evaluate(cnf_circuit, {A1: 1, A2: 0, B: 1, C: 0}) == 1
        assert evaluate(cnf_circuit, {A1: 1, A2: 1, B: 1, C: 1}) == 0

    def test_evaluate_false_and_negative_literal(self):
        """Test ⊥ and ¬x."""
        assert evaluate(constant_circuit(False, 1), {1: 1}) == 0
        builder = CircuitBuilder(1)
        circuit = builder.build(builder.literal(Literal(var=1, positive=False)))
        assert evaluate(circuit, {1: 1}) == 0

    def test_cnf_and_dnf_have_the_same_seven_models(self, cnf_circuit, dnf_circuit):
        """Test that both formulas agree on all 16 interpretations."""
        assert count_models(dnf_circuit) == 7
        assert model_indices(cnf_circuit) == model_indices(dnf_circuit)


class TestConditioning:
    """Test cases for condition()."""

    def test_condition_on_a1(self, cnf_circuit):
        """Test that φ | A1 is B ∧ ¬A2."""
        conditioned = condition(cnf_circuit, {A1: 1})

        assert A1 not in conditioned.variables
        for omega in assignments(4):
            if omega[A1] == 1:
                expected = int(omega[B] == 1 and omega[A2] == 0)
                assert evaluate(conditioned, omega) == expected

    def test_condition_on_empty_term_keeps_models(self, dnf_circuit):
        """Test conditioning on ∅."""
        assert model_indices(condition(dnf_circuit, {})) == model_indices(dnf_circuit)

    def test_condition_true_circuit(self):
        """Test that ⊤ | γ = ⊤."""
        conditioned = condition(constant_circuit(True, 2), {1: 0, 2: 1})
        assert conditioned.root_node.kind is NodeKind.TRUE

    def test_false_child_falsifies_and(self):
        """Test constant propagation through an And."""
        builder = CircuitBuilder(2)
        circuit = builder.build(
            builder.add_and([builder.literal(Literal(var=1)), builder.literal(Literal(var=2))])
        )
        assert condition(circuit, {1: 0}).root_node.kind is NodeKind.FALSE

    def test_decision_hint_cleared_when_conditioned_away(self):
        """Test that an Or keeps its hint unless the hinted variable is fixed."""
        builder = CircuitBuilder(3)
        x, not_x = builder.literal(Literal(var=1)), builder.literal(Literal(var=1, positive=False))
        y, z = builder.literal(Literal(var=2)), builder.literal(Literal(var=3))
        low, high = builder.add_and([not_x, y]), builder.add_and([x, z])
        circuit = builder.build(builder.add_or([low, high], decision_var=1))

        assert condition(circuit, {2: 1}).root_node.decision_var == 1
        assert condition(circuit, {1: 1}).root_node.kind is NodeKind.LIT

    def test_condition_preserves_truth_on_random_circuits(self, random_dnnf):
        """Test evaluate(c, ω) = evaluate(c | γ, ω) for ω agreeing with γ."""
        rng = random.Random(7)
        for _ in range(40):
            circuit = random_dnnf(rng, 6)
            fixed = rng.sample(range(1, 7), rng.randint(0, 3))
            gamma = {var: rng.randint(0, 1) for var in fixed}
            conditioned = condition(circuit, gamma)

            assert not (conditioned.variables & set(gamma))
            assert check_decomposable(conditioned).decomposable
            for omega in assignments(6):
                if all(omega[v] == val for v, val in gamma.items()):
                    assert evaluate(conditioned, omega) == evaluate(circuit, omega)


class TestConsistency:
    """Test cases for CO and model extraction."""

    def test_dnf_is_consistent(self, dnf_circuit):
        """Test CO on the DNF circuit."""
        assert consistent(dnf_circuit)

    def test_false_is_inconsistent(self):
        """Test CO on ⊥."""
        assert not consistent(constant_circuit(False))

    def test_and_with_false_child_is_inconsistent(self):
        """Test a shape-kept And over ⊥."""
        builder = CircuitBuilder(1)
        circuit = builder.build(builder.add_and([builder.literal(Literal(var=1)), builder.false()]))
        assert not consistent(circuit)

    def test_non_dnnf_is_refused(self, cnf_circuit):
        """Test that CO refuses non-decomposable input."""
        with pytest.raises(NotDecomposableError) as exc_info:
            consistent(cnf_circuit)
        assert exc_info.value.node == cnf_circuit.root

    def test_consistent_under_matches_conditioning(self, random_dnnf):
        """Test the fused query against condition + consistent."""
        rng = random.Random(11)
        for _ in range(40):
            circuit = random_dnnf(rng, 5)
            gamma = {var: rng.randint(0, 1) for var in rng.sample(range(1, 6), 2)}
            assert consistent_under(circuit, gamma) == consistent(condition(circuit, gamma))

    def test_find_model_follows_first_consistent_child(self, dnf_circuit):
        """Test deterministic model extraction."""
        assert find_model(dnf_circuit) == {A1: 1, A2: 0, B: 1, C: 0}
        assert find_model(dnf_circuit, {A1: 0}) == {A1: 0, A2: 0, B: 0, C: 0}

    def test_find_model_returns_none_when_inconsistent(self, dnf_circuit):
        """Test that no model is returned under a contradicting term."""
        assert find_model(dnf_circuit, {A1: 1, B: 0}) is None


class TestSmoothing:
    """Test cases for smooth() and is_smooth()."""

    def test_literal_gets_gadget(self):
        """Test that x over {x, y} becomes x ∧ (y ∨ ¬y)."""
        builder = CircuitBuilder(2)
        circuit = builder.build(builder.literal(Literal(var=1)))
        smoothed = smooth(circuit, {1, 2})

        assert is_smooth(smoothed, {1, 2})
        assert model_indices(smoothed) == model_indices(circuit, num_vars=2)

    def test_dnf_smoothing_keeps_models(self, dnf_circuit):
        """Test that smoothing keeps the 7 models."""
        smoothed = smooth(dnf_circuit, {A1, A2, B, C})

        assert not is_smooth(dnf_circuit, {A1, A2, B, C})
        assert is_smooth(smoothed, {A1, A2, B, C})
        assert model_indices(smoothed) == model_indices(dnf_circuit)

    def test_smooth_refuses_non_dnnf(self, cnf_circuit):
        """Test the DNNF precondition."""
        with pytest.raises(NotDecomposableError):
            smooth(cnf_circuit, {A1, A2, B, C})

    def test_smooth_random_circuits(self, random_dnnf):
        """Test model equivalence on random DNNF circuits."""
        rng = random.Random(3)
        for _ in range(30):
            circuit = random_dnnf(rng, 6)
            smoothed = smooth(circuit, range(1, 7))
            assert is_smooth(smoothed, range(1, 7))
            assert check_decomposable(smoothed).decomposable
            assert model_indices(smoothed) == model_indices(circuit)
