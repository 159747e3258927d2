"""Plain-text reports printed on standard output.

Every line is ``<key> <value>`` so the output can be parsed line by line.
"""

from typing import Mapping, Optional

from app.domain.entities.names import NameTable
from app.domain.entities.objective import Aggregator, FamilyTag
from app.domain.entities.results import OptResult


def model_line(model: Mapping[int, int]) -> str:
    return "model " + " ".join(f"v{var}={model[var]}" for var in sorted(model))


def optimization_report(
    result: OptResult,
    family: FamilyTag | str,
    aggregator: Aggregator,
    names: Optional[NameTable] = None,
) -> list[str]:
    lines = [
        f"status {result.status.value}",
        f"algorithm {result.algorithm}",
        f"family {family}",
        f"aggregator {aggregator}",
    ]
    if result.is_optimal:
        assert result.model is not None
        lines.append(f"score {result.score}")
        lines.append(model_line(result.model))
        if names is not None and len(names):
            chosen = [names.name_of(var) for var in sorted(result.model) if result.model[var]]
            lines.append(" ".join(["true", *chosen]))
    if result.stats:
        lines.append(
            " ".join(["stats", *(f"{key}={result.stats[key]}" for key in sorted(result.stats))])
        )
    return lines
