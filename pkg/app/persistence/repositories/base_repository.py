"""Weighted-base format.

::

    wb <n> <numvars> <sum|leximax|owa>
    owa p1 .. pn                 only for owa
    <weight> t <lit> .. <lit> 0  term item (no literal = ⊤)
    <weight> f <relative-path>   circuit item stored as a c2d NNF file
"""

from pathlib import Path
from typing import Callable, Optional

from pydantic import BaseModel, ConfigDict, ValidationError

from app.core.errors import FormatError, NnfOptError
from app.domain.entities.circuit import Literal, NnfCircuit
from app.domain.entities.objective import (
    Aggregator,
    AggregatorKind,
    WeightedBase,
    WeightedItem,
    parse_weight,
)
from app.persistence.repositories.nnf_repository import NnfFileRepository
from app.persistence.repositories.text_repository import TextRepository, content_lines, parse_int


class WeightedBaseDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    base: WeightedBase
    aggregator: Aggregator


def _parse_aggregator(name: str, line: int) -> AggregatorKind:
    try:
        return AggregatorKind(name)
    except ValueError:
        raise FormatError(f"unknown aggregator {name!r}", line) from None


def _parse_item(
    tokens: list[str],
    num_vars: int,
    line: int,
    load_circuit: Optional[Callable[[str], NnfCircuit]],
) -> WeightedItem:
    if len(tokens) < 2:
        raise FormatError("expected '<weight> t ... 0' or '<weight> f <path>'", line)
    try:
        weight = parse_weight(tokens[0])
    except FormatError as exc:
        raise FormatError(str(exc), line) from exc
    if tokens[1] == "t":
        if tokens[-1] != "0":
            raise FormatError("term must end with 0", line)
        literals = []
        for token in tokens[2:-1]:
            value = parse_int(token, line)
            if value == 0 or abs(value) > num_vars:
                raise FormatError(f"literal {value} outside 1..{num_vars}", line)
            literals.append(Literal.from_dimacs(value))
        try:
            return WeightedItem.term(literals, weight)
        except NnfOptError as exc:
            raise FormatError(str(exc), line) from exc
    if tokens[1] == "f":
        if len(tokens) < 3:
            raise FormatError("circuit item needs a path", line)
        if load_circuit is None:
            raise FormatError("circuit items can only be read from a file", line)
        source = " ".join(tokens[2:])
        return WeightedItem.formula(load_circuit(source), weight, source=source)
    raise FormatError(f"unknown item kind {tokens[1]!r}", line)


def parse_base(
    text: str, load_circuit: Optional[Callable[[str], NnfCircuit]] = None
) -> WeightedBaseDocument:
    """Parse a weighted-base file.

    ``load_circuit`` resolves the relative path of ``f`` items.

    Raises:
        FormatError: On malformed lines, a missing or mismatched OWA line, or
            a wrong item count.
    """
    lines = list(content_lines(text))
    if not lines:
        raise FormatError("empty weighted-base file")
    number, header = lines[0]
    if header[0] != "wb" or len(header) != 4:
        raise FormatError("expected header 'wb <n> <numvars> <agg>'", number)
    n = parse_int(header[1], number, minimum=0)
    num_vars = parse_int(header[2], number, minimum=0)
    kind = _parse_aggregator(header[3], number)
    body = lines[1:]
    owa_weights: list = []
    if kind is AggregatorKind.OWA:
        if not body or body[0][1][0] != "owa":
            raise FormatError("owa aggregator needs an 'owa p1 ... pn' line", number)
        number, tokens = body[0]
        try:
            owa_weights = [parse_weight(t) for t in tokens[1:]]
        except FormatError as exc:
            raise FormatError(str(exc), number) from exc
        if len(owa_weights) != n:
            raise FormatError(f"owa line has {len(owa_weights)} weights for {n} items", number)
        body = body[1:]
    if len(body) != n:
        raise FormatError(f"header announces {n} items, found {len(body)}")
    items = [_parse_item(tokens, num_vars, number, load_circuit) for number, tokens in body]
    try:
        return WeightedBaseDocument(
            base=WeightedBase(items=tuple(items), num_vars=num_vars),
            aggregator=Aggregator(kind=kind, owa_weights=tuple(owa_weights)),
        )
    except ValidationError as exc:
        raise FormatError(str(exc)) from exc


def circuit_item_paths(base: WeightedBase, stem: str) -> dict[int, str]:
    """Relative file name for each circuit item (keeps ``source`` when known)."""
    return {
        index: item.source or f"{stem}.item{index + 1}.nnf"
        for index, item in enumerate(base.items)
        if item.circuit is not None
    }


def serialize_base(base: WeightedBase, aggregator: Aggregator, stem: str = "base") -> str:
    lines = [f"wb {base.n} {base.num_vars} {aggregator.kind.value}"]
    if aggregator.kind is AggregatorKind.OWA:
        lines.append(" ".join(["owa", *(str(p) for p in aggregator.owa_weights)]))
    paths = circuit_item_paths(base, stem)
    for index, item in enumerate(base.items):
        if item.circuit is not None:
            lines.append(f"{item.weight} f {paths[index]}")
        else:
            lits = " ".join(str(lit) for lit in item.literals)
            lines.append(f"{item.weight} t {lits} 0" if lits else f"{item.weight} t 0")
    return "\n".join(lines) + "\n"


class WeightedBaseFileRepository(TextRepository[WeightedBaseDocument]):
    """Weighted bases on disk; circuit items live in NNF files next to the base."""

    def __init__(self, circuits: Optional[NnfFileRepository] = None) -> None:
        self.circuits = circuits or NnfFileRepository()

    def _from_text(self, text: str, path: Path) -> WeightedBaseDocument:
        return parse_base(text, lambda rel: self.circuits.load(path.parent / rel))

    def _to_text(self, value: WeightedBaseDocument, path: Path) -> str:
        return serialize_base(value.base, value.aggregator, stem=path.stem)

    def save(self, value: WeightedBaseDocument, path: str | Path) -> Path:
        path = super().save(value, path)
        for index, rel in circuit_item_paths(value.base, path.stem).items():
            circuit = value.base.items[index].circuit
            assert circuit is not None
            self.circuits.save(circuit, path.parent / rel)
        return path
