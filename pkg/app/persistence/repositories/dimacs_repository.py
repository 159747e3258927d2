"""DIMACS CNF format (``p cnf V C``, 0-terminated clauses, ``c`` comments)."""

from pathlib import Path

from app.core.errors import FormatError
from app.domain.entities.cnf import Cnf
from app.persistence.repositories.text_repository import TextRepository, content_lines, parse_int


def parse_dimacs(text: str) -> Cnf:
    """Parse a CNF; clauses may span lines and a ``%`` line ends the input.

    Raises:
        FormatError: On a bad header, a variable above V, a clause count
            mismatch or an unterminated clause.
    """
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    last_line = 0
    for number, tokens in content_lines(text):
        last_line = number
        if tokens[0].startswith("c"):
            continue
        if tokens[0] == "%":
            break
        if tokens[0] == "p":
            if header is not None:
                raise FormatError("duplicate problem line", number)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise FormatError("expected 'p cnf V C'", number)
            header = (parse_int(tokens[2], number, 0), parse_int(tokens[3], number, 0))
            continue
        if header is None:
            raise FormatError("clause before the problem line", number)
        for token in tokens:
            value = parse_int(token, number)
            if value == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(value) > header[0]:
                raise FormatError(f"variable {abs(value)} exceeds {header[0]}", number)
            else:
                current.append(value)
    if header is None:
        raise FormatError("missing 'p cnf V C' line")
    if current:
        raise FormatError("last clause is not terminated by 0", last_line)
    if len(clauses) != header[1]:
        raise FormatError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return Cnf(num_vars=header[0], clauses=tuple(clauses))


def serialize_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines.extend(" ".join([*(str(lit) for lit in clause), "0"]) for clause in cnf.clauses)
    return "\n".join(lines) + "\n"


class DimacsFileRepository(TextRepository[Cnf]):
    def _from_text(self, text: str, path: Path) -> Cnf:
        return parse_dimacs(text)

    def _to_text(self, value: Cnf, path: Path) -> str:
        return serialize_dimacs(value)
