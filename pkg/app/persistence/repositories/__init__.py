"""Repository package.

One file-backed repository per text format.
"""

from app.persistence.repositories.base_repository import (
    WeightedBaseDocument,
    WeightedBaseFileRepository,
    parse_base,
    serialize_base,
)
from app.persistence.repositories.dimacs_repository import (
    DimacsFileRepository,
    parse_dimacs,
    serialize_dimacs,
)
from app.persistence.repositories.names_repository import (
    NameTableFileRepository,
    parse_names,
    serialize_names,
)
from app.persistence.repositories.nnf_repository import NnfFileRepository, parse_nnf, serialize_nnf
from app.persistence.repositories.obdd_repository import (
    ObddDocument,
    ObddFileRepository,
    parse_obdd,
    serialize_obdd,
)

__all__ = [
    "DimacsFileRepository",
    "NameTableFileRepository",
    "NnfFileRepository",
    "ObddDocument",
    "ObddFileRepository",
    "WeightedBaseDocument",
    "WeightedBaseFileRepository",
    "parse_base",
    "parse_dimacs",
    "parse_names",
    "parse_nnf",
    "parse_obdd",
    "serialize_base",
    "serialize_dimacs",
    "serialize_names",
    "serialize_nnf",
    "serialize_obdd",
]
