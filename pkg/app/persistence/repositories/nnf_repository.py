"""c2d NNF format.

::

    nnf V E N
    L l            literal (signed DIMACS integer)
    A c i1 .. ic   And node; ``A 0`` is ⊤
    O j c i1 .. ic Or node with decision hint j; ``O 0 0`` is ⊥

The root is the last node line.
"""

from pathlib import Path

from pydantic import ValidationError

from app.core.errors import FormatError
from app.domain.entities.circuit import Literal, NnfCircuit, NnfNode, NodeKind
from app.persistence.repositories.text_repository import TextRepository, content_lines, parse_int


def _children(tokens: list[str], index: int, line: int) -> tuple[int, ...]:
    children = tuple(parse_int(t, line, minimum=0) for t in tokens)
    for child in children:
        if child >= index:
            raise FormatError(f"node {index} references node {child} before its definition", line)
    return children


def _parse_node(tokens: list[str], index: int, num_vars: int, line: int) -> NnfNode:
    label = tokens[0]
    if label == "L":
        if len(tokens) != 2:
            raise FormatError("expected 'L lit'", line)
        value = parse_int(tokens[1], line)
        if value == 0 or abs(value) > num_vars:
            raise FormatError(f"literal {value} outside 1..{num_vars}", line)
        return NnfNode(kind=NodeKind.LIT, literal=Literal.from_dimacs(value))
    if label == "A":
        if len(tokens) < 2:
            raise FormatError("expected 'A c ids'", line)
        count = parse_int(tokens[1], line, minimum=0)
        if len(tokens) != 2 + count:
            raise FormatError(f"And node announces {count} children", line)
        if count == 0:
            return NnfNode(kind=NodeKind.TRUE)
        return NnfNode(kind=NodeKind.AND, children=_children(tokens[2:], index, line))
    if label == "O":
        if len(tokens) < 3:
            raise FormatError("expected 'O j c ids'", line)
        decision = parse_int(tokens[1], line, minimum=0)
        count = parse_int(tokens[2], line, minimum=0)
        if decision > num_vars:
            raise FormatError(f"decision variable {decision} outside 1..{num_vars}", line)
        if len(tokens) != 3 + count:
            raise FormatError(f"Or node announces {count} children", line)
        if count == 0:
            return NnfNode(kind=NodeKind.FALSE)
        return NnfNode(
            kind=NodeKind.OR, children=_children(tokens[3:], index, line), decision_var=decision
        )
    raise FormatError(f"unknown node label {label!r}", line)


def parse_nnf(text: str) -> NnfCircuit:
    """Parse a c2d NNF file; node i is the i-th node line.

    Raises:
        FormatError: On a malformed header or node line, a forward reference,
            a variable out of range or a count mismatch.
    """
    lines = content_lines(text)
    header = next(lines, None)
    if header is None:
        raise FormatError("empty NNF file")
    number, tokens = header
    if tokens[0] != "nnf" or len(tokens) != 4:
        raise FormatError("expected header 'nnf V E N'", number)
    num_nodes, num_edges, num_vars = (parse_int(t, number, minimum=0) for t in tokens[1:])
    nodes: list[NnfNode] = []
    for number, tokens in lines:
        if len(nodes) == num_nodes:
            raise FormatError(f"more than {num_nodes} node lines", number)
        nodes.append(_parse_node(tokens, len(nodes), num_vars, number))
    if len(nodes) != num_nodes:
        raise FormatError(f"header announces {num_nodes} nodes, found {len(nodes)}")
    if not nodes:
        raise FormatError("circuit has no nodes")
    edges = sum(len(node.children) for node in nodes)
    if edges != num_edges:
        raise FormatError(f"header announces {num_edges} edges, found {edges}")
    try:
        return NnfCircuit(nodes=tuple(nodes), root=len(nodes) - 1, num_vars=num_vars)
    except ValidationError as exc:
        raise FormatError(str(exc)) from exc


def _node_line(node: NnfNode) -> str:
    if node.kind is NodeKind.TRUE:
        return "A 0"
    if node.kind is NodeKind.FALSE:
        return "O 0 0"
    if node.kind is NodeKind.LIT:
        return f"L {node.literal}"
    ids = " ".join(str(c) for c in node.children)
    if node.kind is NodeKind.AND:
        return f"A {len(node.children)} {ids}"
    return f"O {node.decision_var} {len(node.children)} {ids}"


def serialize_nnf(circuit: NnfCircuit) -> str:
    lines = [f"nnf {len(circuit.nodes)} {circuit.size} {circuit.num_vars}"]
    lines.extend(_node_line(node) for node in circuit.nodes)
    return "\n".join(lines) + "\n"


class NnfFileRepository(TextRepository[NnfCircuit]):
    def _from_text(self, text: str, path: Path) -> NnfCircuit:
        return parse_nnf(text)

    def _to_text(self, value: NnfCircuit, path: Path) -> str:
        return serialize_nnf(value)
