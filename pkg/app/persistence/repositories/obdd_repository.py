"""OBDD store format.

::

    obdd <numvars> <numnodes>
    order v1 .. vk
    <id> <var> <lo> <hi>      ids from 2, consecutive
    root <id>
"""

from pathlib import Path

from pydantic import BaseModel, ConfigDict

from app.core.errors import FormatError, NnfOptError
from app.domain.entities.obdd import ObddManager
from app.persistence.repositories.text_repository import TextRepository, content_lines, parse_int


class ObddDocument(BaseModel):
    """A manager's whole node store plus the designated root."""

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    manager: ObddManager
    root: int


def parse_obdd(text: str) -> ObddDocument:
    """Rebuild a manager whose store is identical to the file's.

    Raises:
        FormatError: On malformed lines, order violations, non-reduced or
            duplicate nodes, forward references or non-consecutive ids.
    """
    lines = list(content_lines(text))
    if len(lines) < 3:
        raise FormatError("OBDD file needs a header, an order and a root line")
    number, header = lines[0]
    if header[0] != "obdd" or len(header) != 3:
        raise FormatError("expected header 'obdd <numvars> <numnodes>'", number)
    num_vars = parse_int(header[1], number, minimum=0)
    num_nodes = parse_int(header[2], number, minimum=0)
    number, order_tokens = lines[1]
    if order_tokens[0] != "order":
        raise FormatError("expected 'order v1 ... vk'", number)
    order = [parse_int(t, number, minimum=1) for t in order_tokens[1:]]
    if len(order) != num_vars:
        raise FormatError(f"order lists {len(order)} variables, header {num_vars}", number)
    try:
        manager = ObddManager(order)
    except NnfOptError as exc:
        raise FormatError(str(exc), number) from exc
    node_lines = lines[2:-1]
    if len(node_lines) != num_nodes:
        raise FormatError(f"header announces {num_nodes} nodes, found {len(node_lines)}")
    for number, tokens in node_lines:
        if len(tokens) != 4:
            raise FormatError("expected '<id> <var> <lo> <hi>'", number)
        node_id, var, lo, hi = (parse_int(t, number, minimum=0) for t in tokens)
        if node_id != len(manager):
            raise FormatError(f"expected node id {len(manager)}, got {node_id}", number)
        if lo >= node_id or hi >= node_id:
            raise FormatError("children must reference earlier nodes", number)
        try:
            created = manager.mk(var, lo, hi)
        except NnfOptError as exc:
            raise FormatError(str(exc), number) from exc
        if created != node_id:
            raise FormatError("node is redundant or duplicates an earlier node", number)
    number, root_tokens = lines[-1]
    if root_tokens[0] != "root" or len(root_tokens) != 2:
        raise FormatError("expected 'root <id>'", number)
    root = parse_int(root_tokens[1], number, minimum=0)
    if root not in manager:
        raise FormatError(f"root {root} is not a node", number)
    return ObddDocument(manager=manager, root=root)


def serialize_obdd(manager: ObddManager, root: int) -> str:
    nodes = manager.nodes()
    lines = [
        f"obdd {manager.num_vars} {len(nodes)}",
        " ".join(["order", *(str(v) for v in manager.order)]),
    ]
    lines.extend(f"{i} {node.var} {node.lo} {node.hi}" for i, node in nodes)
    lines.append(f"root {root}")
    return "\n".join(lines) + "\n"


class ObddFileRepository(TextRepository[ObddDocument]):
    def _from_text(self, text: str, path: Path) -> ObddDocument:
        return parse_obdd(text)

    def _to_text(self, value: ObddDocument, path: Path) -> str:
        return serialize_obdd(value.manager, value.root)
