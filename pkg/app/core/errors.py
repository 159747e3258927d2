"""Error taxonomy shared by every layer.

All errors derive from ``NnfOptError`` which itself is a ``ValueError``:
they signal that an input violates a precondition of the requested
operation, never an internal failure.
"""

from typing import Optional


class NnfOptError(ValueError):
    """Base class for all domain errors."""


class FormatError(NnfOptError):
    """Malformed NNF / OBDD / weighted-base / DIMACS / name-table text."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotDecomposableError(NnfOptError):
    """An operation requiring DNNF input received a non-decomposable circuit."""

    def __init__(self, node: int) -> None:
        self.node = node
        super().__init__(f"circuit is not decomposable (And node {node} shares variables)")


class InconsistentTermError(NnfOptError):
    """A term contains a literal together with its complement."""


class FreshVarOccursError(NnfOptError):
    """The variable chosen as fresh already occurs in the function."""


class OrderMismatchError(NnfOptError):
    """OBDD ids do not belong to the manager (and therefore its order)."""


class ManagerFrozenError(NnfOptError):
    """Attempt to create nodes in a frozen OBDD manager."""


class OwaArityMismatchError(NnfOptError):
    """OWA weight vector length differs from the base cardinality."""


class IncomparableScoresError(NnfOptError):
    """Scores of different kinds or lengths were compared."""


class FamilyMismatchError(NnfOptError):
    """The weighted base lies outside the family an algorithm accepts."""


class AggregatorMismatchError(NnfOptError):
    """The aggregator is not supported by the requested algorithm."""


class NExceedsCapError(NnfOptError):
    """The weighted base has more items than the FPT cap allows."""


class TooManyVarsError(NnfOptError):
    """Brute-force enumeration refused above the configured variable cap."""


class NotDnfShapeError(NnfOptError):
    """The circuit is not a flat disjunction of terms."""


class NotSmoothError(NnfOptError):
    """The circuit is not smooth over the full variable set."""


class InconsistentCircuitError(NnfOptError):
    """The circuit has no model."""


class BadSetSizeError(NnfOptError):
    """A hitting-set instance contains a set that does not have two elements."""


class ClausePolarityViolationError(NnfOptError):
    """A clause announced as positive (negative) contains a negative (positive) literal."""


class IntractableCombinationError(NnfOptError):
    """No tractable algorithm applies; carries the blocking hardness result."""

    def __init__(self, message: str, proposition: str) -> None:
        self.proposition = proposition
        super().__init__(f"{message}: {proposition}")
