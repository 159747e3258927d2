from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, Iterator, TypeVar

from app.core.errors import FormatError

T = TypeVar("T")


def content_lines(text: str, comments: bool = True) -> Iterator[tuple[int, list[str]]]:
    """Non-empty lines as ``(line number, tokens)``, skipping ``c`` comment lines."""
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or (comments and tokens[0] == "c"):
            continue
        yield number, tokens


def parse_int(token: str, line: int, minimum: int | None = None) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"expected an integer, got {token!r}", line) from None
    if minimum is not None and value < minimum:
        raise FormatError(f"{value} is below {minimum}", line)
    return value


class TextRepository(ABC, Generic[T]):
    """File-backed repository for one text format.

    Subclasses convert between text and domain values; this base class owns
    the file access.
    """

    encoding = "utf-8"

    @abstractmethod
    def _from_text(self, text: str, path: Path) -> T:
        """Parse the file contents read from ``path``."""

    @abstractmethod
    def _to_text(self, value: T, path: Path) -> str:
        """Render ``value`` for storage at ``path``."""

    def load(self, path: str | Path) -> T:
        path = Path(path)
        try:
            text = path.read_text(encoding=self.encoding)
        except UnicodeDecodeError as exc:
            raise FormatError(f"{path.name} is not valid {self.encoding}: {exc.reason}") from exc
        return self._from_text(text, path)

    def save(self, value: T, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self._to_text(value, path), encoding=self.encoding)
        return path
