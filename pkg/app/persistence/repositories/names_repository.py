"""Sidecar name tables: one ``<var index> <name>`` pair per line."""

from pathlib import Path

from pydantic import ValidationError

from app.core.errors import FormatError
from app.domain.entities.names import NameTable
from app.persistence.repositories.text_repository import TextRepository, content_lines, parse_int


def parse_names(text: str) -> NameTable:
    names: dict[int, str] = {}
    for number, tokens in content_lines(text, comments=False):
        if len(tokens) != 2:
            raise FormatError("expected '<var index> <name>'", number)
        var = parse_int(tokens[0], number, minimum=1)
        if var in names:
            raise FormatError(f"variable {var} named twice", number)
        names[var] = tokens[1]
    try:
        return NameTable(names=names)
    except ValidationError as exc:
        raise FormatError(str(exc)) from exc


def serialize_names(table: NameTable) -> str:
    return "".join(f"{var} {table.names[var]}\n" for var in sorted(table.names))


class NameTableFileRepository(TextRepository[NameTable]):
    def _from_text(self, text: str, path: Path) -> NameTable:
        return parse_names(text)

    def _to_text(self, value: NameTable, path: Path) -> str:
        return serialize_names(value)
