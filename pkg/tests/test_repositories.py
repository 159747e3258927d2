"""Tests for the text formats and their file repositories."""

from fractions import Fraction

import pytest

from app.core.errors import FormatError
from app.domain.entities.circuit import Literal, NodeKind
from app.domain.entities.cnf import Cnf
from app.domain.entities.names import NameTable
from app.domain.entities.obdd import BoolOp, ObddManager
from app.domain.entities.objective import (
    SUM,
    AggregatorKind,
    WeightedBase,
    WeightedItem,
)
from app.persistence.repositories import (
    DimacsFileRepository,
    NameTableFileRepository,
    NnfFileRepository,
    ObddDocument,
    ObddFileRepository,
    WeightedBaseDocument,
    WeightedBaseFileRepository,
    parse_base,
    parse_dimacs,
    parse_names,
    parse_nnf,
    parse_obdd,
    serialize_base,
    serialize_dimacs,
    serialize_names,
    serialize_nnf,
    serialize_obdd,
)


class TestNnfFormat:
    """Test cases for the c2d NNF format."""

    def test_serialize_small_dnf(self, dnf_circuit):
        """Test the header and that parsing gives the circuit back."""
        text = serialize_nnf(dnf_circuit)
        assert text.splitlines()[0] == "nnf 10 12 4"
        assert parse_nnf(text) == dnf_circuit

    def test_true_circuit(self):
        """Test that 'A 0' is ⊤."""
        circuit = parse_nnf("nnf 1 0 0\nA 0\n")
        assert circuit.root_node.kind is NodeKind.TRUE

    def test_false_circuit(self):
        """Test that 'O 0 0' is ⊥."""
        assert parse_nnf("nnf 1 0 2\nO 0 0\n").root_node.kind is NodeKind.FALSE

    def test_single_literal_without_newline(self):
        """Test a one-line body with no trailing newline."""
        circuit = parse_nnf("nnf 1 0 1\nL 1")
        assert circuit.root_node.literal == Literal(var=1)

    def test_decision_hint_and_comments(self):
        """Test an Or node with a decision variable after comment lines."""
        circuit = parse_nnf("c compiled\nnnf 3 2 1\nL -1\nc mid\nL 1\nO 1 2 0 1\n")
        assert circuit.root_node.decision_var == 1
        assert circuit.evaluate({1: 0}) == 1

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "cnf 1 0 0\nA 0\n",
            "nnf 2 1 1\nA 1 1\nL 1\n",
            "nnf 1 0 1\nL 2\n",
            "nnf 1 0 1\nL 0\n",
            "nnf 2 5 1\nL 1\nA 1 0\n",
            "nnf 3 0 1\nL 1\n",
            "nnf 1 0 1\nL 1\nL -1\n",
            "nnf 1 0 1\nX 1\n",
            "nnf 2 2 1\nL 1\nA 2 0\n",
            "nnf 2 1 1\nL 1\nO 3 1 0\n",
        ],
    )
    def test_malformed(self, text):
        """Test that malformed files raise FormatError."""
        with pytest.raises(FormatError):
            parse_nnf(text)

    def test_error_reports_line(self):
        """Test that the offending line number is kept."""
        with pytest.raises(FormatError) as excinfo:
            parse_nnf("nnf 2 1 1\nL 1\nA 1 7\n")
        assert excinfo.value.line == 3

    def test_file_repository(self, tmp_path, cnf_circuit):
        """Test save and load through the repository."""
        repo = NnfFileRepository()
        path = repo.save(cnf_circuit, tmp_path / "nested" / "cnf.nnf")
        assert repo.load(path) == cnf_circuit


class TestObddFormat:
    """Test cases for the OBDD store format."""

    def test_store_is_reproduced(self):
        """Test that a parsed store serializes to the same text."""
        manager = ObddManager([2, 1, 3])
        f = manager.apply(BoolOp.XOR, manager.var_node(1), manager.var_node(3))
        text = serialize_obdd(manager, f)

        document = parse_obdd(text)
        assert document.manager.order == (2, 1, 3)
        assert serialize_obdd(document.manager, document.root) == text
        assert document.manager.count(document.root) == manager.count(f)

    def test_terminal_root(self):
        """Test a store without internal nodes."""
        document = parse_obdd("obdd 2 0\norder 1 2\nroot 1\n")
        assert document.root == 1
        assert len(document.manager) == 2

    @pytest.mark.parametrize(
        "text",
        [
            "obdd 1 0\norder 1\n",
            "obdd 1 0\norder 2\nroot 0\n",
            "obdd 2 0\norder 1\nroot 0\n",
            "obdd 1 1\norder 1\n2 1 0 0\nroot 2\n",
            "obdd 1 2\norder 1\n2 1 0 1\n3 1 0 1\nroot 3\n",
            "obdd 2 2\norder 1 2\n2 1 0 1\n3 2 0 2\nroot 3\n",
            "obdd 1 1\norder 1\n3 1 0 1\nroot 3\n",
            "obdd 1 1\norder 1\n2 1 0 5\nroot 2\n",
            "obdd 1 1\norder 1\n2 1 0 1\nroot 9\n",
            "bdd 1 1\norder 1\n2 1 0 1\nroot 2\n",
        ],
    )
    def test_malformed(self, text):
        """Test reduction, order and reference violations."""
        with pytest.raises(FormatError):
            parse_obdd(text)

    def test_file_repository(self, tmp_path):
        """Test save and load through the repository."""
        manager = ObddManager.with_vars(2)
        root = manager.apply(BoolOp.OR, manager.var_node(1), manager.var_node(2))
        repo = ObddFileRepository()
        path = repo.save(ObddDocument(manager=manager, root=root), tmp_path / "f.obdd")

        loaded = repo.load(path)
        assert loaded.root == root
        assert loaded.manager.count(loaded.root) == 3


class TestWeightedBaseFormat:
    """Test cases for the weighted-base format."""

    def test_term_items(self):
        """Test literal, term and ⊤ items."""
        document = parse_base("c prefs\nwb 3 3 leximax\n1 t 1 -2 0\n-1/2 t 0\n2.5 t 3 0\n")
        items = document.base.items

        assert document.aggregator.kind is AggregatorKind.LEXIMAX
        assert items[0].literals == (Literal(var=1), Literal(var=2, positive=False))
        assert items[1].literals == () and items[1].weight == Fraction(-1, 2)
        assert items[2].weight == Fraction(5, 2)
        assert str(document.base.classify()) == "Q"

    def test_owa_line(self):
        """Test the OWA weight line."""
        document = parse_base("wb 2 1 owa\nowa 1/4 3/4\n1 t 1 0\n2 t -1 0\n")
        assert document.aggregator.owa_weights == (Fraction(1, 4), Fraction(3, 4))

    def test_serialize(self):
        """Test the canonical text of a term base."""
        base = WeightedBase(
            items=(
                WeightedItem.term([Literal(var=2, positive=False)], 3),
                WeightedItem.term([], -1),
            ),
            num_vars=2,
        )
        assert serialize_base(base, SUM) == "wb 2 2 sum\n3 t -2 0\n-1 t 0\n"

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "wb 1 1\n1 t 1 0\n",
            "wb 1 1 max\n1 t 1 0\n",
            "wb 1 1 owa\n1 t 1 0\n",
            "wb 2 1 owa\nowa 1\n1 t 1 0\n1 t 1 0\n",
            "wb 1 1 owa\nowa 1/2\n1 t 1 0\n",
            "wb 2 1 sum\n1 t 1 0\n",
            "wb 1 1 sum\n1 t 2 0\n",
            "wb 1 1 sum\n1 t 1\n",
            "wb 1 1 sum\n1 t 1 -1 0\n",
            "wb 1 1 sum\nx t 1 0\n",
            "wb 1 1 sum\n1 q 1 0\n",
            "wb 1 1 sum\n1 f item.nnf\n",
        ],
    )
    def test_malformed(self, text):
        """Test header, OWA line, count, literal and item errors."""
        with pytest.raises(FormatError):
            parse_base(text)

    def test_circuit_items_live_next_to_the_base(self, tmp_path, dnf_circuit):
        """Test that saving writes the item circuits and loading resolves them."""
        base = WeightedBase(
            items=(WeightedItem.term([Literal(var=1)], 1), WeightedItem.formula(dnf_circuit, -2)),
            num_vars=4,
        )
        repo = WeightedBaseFileRepository()
        path = repo.save(WeightedBaseDocument(base=base, aggregator=SUM), tmp_path / "prefs.wb")

        assert (tmp_path / "prefs.item2.nnf").exists()
        assert path.read_text().splitlines()[2] == "-2 f prefs.item2.nnf"
        loaded = repo.load(path)
        assert loaded.base.items[1].circuit == dnf_circuit
        assert loaded.base.items[1].source == "prefs.item2.nnf"

    def test_missing_circuit_file(self, tmp_path):
        """Test that an unreadable item path surfaces as OSError."""
        path = tmp_path / "b.wb"
        path.write_text("wb 1 1 sum\n1 f missing.nnf\n")
        with pytest.raises(OSError):
            WeightedBaseFileRepository().load(path)


class TestDimacsFormat:
    """Test cases for the DIMACS CNF format."""

    def test_multiline_clause_and_terminator(self):
        """Test comments, clauses spanning lines and the % end marker."""
        cnf = parse_dimacs("c example\np cnf 3 2\n1 -2\n 0 3 0\n%\n0\n")
        assert cnf == Cnf(num_vars=3, clauses=((1, -2), (3,)))

    def test_serialize(self):
        """Test the canonical text."""
        cnf = Cnf(num_vars=2, clauses=((1, -2), (2,)))
        assert serialize_dimacs(cnf) == "p cnf 2 2\n1 -2 0\n2 0\n"

    @pytest.mark.parametrize(
        "text",
        [
            "1 2 0\n",
            "p cnf 2 1\n1 3 0\n",
            "p cnf 2 2\n1 2 0\n",
            "p cnf 2 1\n1 2\n",
            "p cnf 2 1\np cnf 2 1\n1 0\n",
            "p dnf 2 1\n1 0\n",
            "p cnf 2 1\n1 x 0\n",
        ],
    )
    def test_malformed(self, text):
        """Test header, range, count and termination errors."""
        with pytest.raises(FormatError):
            parse_dimacs(text)

    def test_file_repository(self, tmp_path):
        """Test save and load through the repository."""
        repo = DimacsFileRepository()
        cnf = Cnf(num_vars=4, clauses=((-1, 3), (-2, 4)))
        assert repo.load(repo.save(cnf, tmp_path / "deps.cnf")) == cnf


class TestNameTableFormat:
    """Test cases for the sidecar name tables."""

    def test_parse_and_serialize(self):
        """Test that serialization sorts by variable."""
        table = parse_names("2 B1\n1 A\n")
        assert table.var_of("B1") == 2
        assert serialize_names(table) == "1 A\n2 B1\n"

    @pytest.mark.parametrize("text", ["1 A\n1 B\n", "1\n", "0 A\n", "1 A\n2 A\n", "x A\n"])
    def test_malformed(self, text):
        """Test duplicate, missing and invalid entries."""
        with pytest.raises(FormatError):
            parse_names(text)

    def test_file_repository(self, tmp_path):
        """Test save and load through the repository."""
        repo = NameTableFileRepository()
        table = NameTable.from_sequence(["A", "B"])
        assert repo.load(repo.save(table, tmp_path / "x.names")) == table
