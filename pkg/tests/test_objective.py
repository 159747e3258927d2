"""Tests for weights, weighted bases, aggregators and scores."""

import itertools
from fractions import Fraction

import pytest

from app.core.errors import (
    FormatError,
    IncomparableScoresError,
    InconsistentTermError,
    OwaArityMismatchError,
)
from app.domain.entities.circuit import CircuitBuilder, Literal
from app.domain.entities.objective import (
    LEXIMAX,
    SUM,
    Aggregator,
    Family,
    Score,
    WeightedBase,
    WeightedItem,
    aggregate,
    compare_scores,
    evaluate_base,
    parse_weight,
)

A1, A2, B1, C1 = 1, 2, 3, 4


def pos(var):
    return Literal(var=var)


def neg(var):
    return Literal(var=var, positive=False)


class TestParseWeight:
    """Test cases for exact weight parsing."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("3", Fraction(3)),
            ("+2", Fraction(2)),
            ("-1.25", Fraction(-5, 4)),
            ("7/2", Fraction(7, 2)),
            (" 0 ", Fraction(0)),
        ],
    )
    def test_valid_weights(self, text, expected):
        """Test decimal and rational notations."""
        assert parse_weight(text) == expected

    @pytest.mark.parametrize("text", ["1e3", "abc", ".5", "1/0", "", "2/-3"])
    def test_invalid_weights(self, text):
        """Test that malformed weights raise FormatError."""
        with pytest.raises(FormatError):
            parse_weight(text)


class TestWeightedItem:
    """Test cases for term and circuit items."""

    def test_duplicate_literals_collapse(self):
        """Test that x ∧ x is stored as x."""
        item = WeightedItem.term([pos(1), pos(1)], 2)
        assert item.literals == (pos(1),)
        assert item.is_linear

    def test_complementary_literals_rejected(self):
        """Test InconsistentTerm on x ∧ ¬x."""
        with pytest.raises(InconsistentTermError):
            WeightedItem.term([pos(1), neg(1)], 1)

    def test_string_weights_are_exact(self):
        """Test that weights given as text become Fractions."""
        assert WeightedItem.term([], "1/3").weight == Fraction(1, 3)

    def test_value_of_empty_term(self):
        """Test that ⊤ items always contribute their weight."""
        item = WeightedItem.term([], -2)
        assert item.value({}) == -2

    def test_circuit_item(self):
        """Test an item holding a circuit."""
        builder = CircuitBuilder(2)
        circuit = builder.build(builder.add_or([builder.literal(pos(1)), builder.literal(neg(2))]))
        item = WeightedItem.formula(circuit, 5)

        assert not item.is_linear
        assert item.value({1: 0, 2: 0}) == 5
        assert item.value({1: 0, 2: 1}) == 0
        assert item.occurring_literals() == {pos(1), neg(2)}


class TestClassify:
    """Test cases for WeightedBase.classify."""

    def test_empty_base_is_linear_positive_nonnegative(self):
        """Test the tag of the empty base."""
        assert str(WeightedBase(num_vars=0).classify()) == "L^+_+"

    def test_quadratic_with_negative_literal(self):
        """Test that a 2-literal term with ¬x is in Q without the ⁺ flag."""
        base = WeightedBase(
            items=(WeightedItem.term([pos(1)], 1), WeightedItem.term([pos(1), neg(2)], 3)),
            num_vars=2,
        )
        tag = base.classify()
        assert tag.family is Family.Q
        assert str(tag) == "Q_+"

    def test_polynomial_with_negative_weight(self):
        """Test that a 3-literal term puts the base in P."""
        base = WeightedBase(items=(WeightedItem.term([pos(1), pos(2), pos(3)], -1),), num_vars=3)
        assert str(base.classify()) == "P^+"
        assert base.classify().within(Family.G)
        assert not base.classify().within(Family.Q)

    def test_circuit_items_are_general(self):
        """Test that any circuit item puts the base in G."""
        builder = CircuitBuilder(1)
        circuit = builder.build(builder.literal(pos(1)))
        base = WeightedBase(items=(WeightedItem.formula(circuit, 1),), num_vars=1)
        assert str(base.classify()) == "G^+_+"

    def test_variable_out_of_range(self):
        """Test that items above num_vars are rejected."""
        with pytest.raises(ValueError):
            WeightedBase(items=(WeightedItem.term([pos(3)], 1),), num_vars=2)


class TestAggregators:
    """Test cases for Σ, leximax and OWA."""

    def test_leximax_example(self):
        """Test the two-package leximax comparison."""
        base = WeightedBase(
            items=(
                WeightedItem.term([pos(A2), pos(C1)], 2),
                WeightedItem.term([pos(B1), neg(C1)], 1),
            ),
            num_vars=4,
        )
        omega = {A1: 1, A2: 0, B1: 1, C1: 0}
        omega_prime = {A1: 0, A2: 1, B1: 1, C1: 1}

        first = evaluate_base(base, LEXIMAX, omega)
        second = evaluate_base(base, LEXIMAX, omega_prime)

        assert str(first) == "(1, 0)"
        assert str(second) == "(2, 0)"
        assert first < second
        assert evaluate_base(base, SUM, omega) == Score.of_sum(1)

    def test_owa_sorts_before_weighting(self):
        """Test that OWA weights apply to the values in non-increasing order."""
        owa = Aggregator.owa(["3/4", "1/4"])
        assert aggregate([Fraction(1), Fraction(3)], owa) == Score.of_sum(Fraction(5, 2))

    def test_owa_arity_mismatch(self):
        """Test OwaArityMismatch."""
        with pytest.raises(OwaArityMismatchError):
            aggregate([Fraction(1)], Aggregator.owa([Fraction(1, 2), Fraction(1, 2)]))

    def test_owa_weights_must_sum_to_one(self):
        """Test the OWA weight validation."""
        with pytest.raises(ValueError):
            Aggregator.owa([1, 1])

    def test_sum_takes_no_weights(self):
        """Test that only OWA carries weights."""
        with pytest.raises(ValueError):
            Aggregator(kind="sum", owa_weights=(1,))


class TestScores:
    """Test cases for score comparison."""

    def test_smaller_is_better(self):
        """Test the direction of compare_scores."""
        assert compare_scores(Score.of_sum(1), Score.of_sum(2)) == -1
        assert compare_scores(Score.of_sum(2), Score.of_sum(2)) == 0
        assert compare_scores(Score.of_vector([3, 0]), Score.of_vector([2, 2])) == 1

    def test_vector_is_sorted(self):
        """Test that of_vector sorts in non-increasing order."""
        assert Score.of_vector([0, 2, 1]).vector == (2, 1, 0)

    def test_unsorted_vector_rejected(self):
        """Test that a raw unsorted vector does not validate."""
        with pytest.raises(ValueError):
            Score(kind="vector", vector=(0, 1))

    def test_incomparable_kinds(self):
        """Test sum against vector."""
        with pytest.raises(IncomparableScoresError):
            compare_scores(Score.of_sum(0), Score.of_vector([0]))

    def test_incomparable_lengths(self):
        """Test vectors of different lengths."""
        with pytest.raises(IncomparableScoresError):
            compare_scores(Score.of_vector([1]), Score.of_vector([1, 0]))

    def test_leximax_is_union_compatible(self):
        """Test that adding the same values on both sides keeps the order."""
        values = range(-2, 3)
        multisets = {
            size: list(itertools.combinations_with_replacement(values, size)) for size in range(5)
        }
        scores: dict[tuple[int, ...], Score] = {}

        def score(items: tuple[int, ...]) -> Score:
            key = tuple(sorted(items))
            if key not in scores:
                scores[key] = Score.of_vector(key)
            return scores[key]

        for size in range(1, 5):
            for a, b in itertools.product(multisets[size], repeat=2):
                before = compare_scores(score(a), score(b))
                for extra in itertools.chain.from_iterable(multisets.values()):
                    assert compare_scores(score(a + extra), score(b + extra)) == before
