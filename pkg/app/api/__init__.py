"""API package: the command-line surface."""

__all__ = ["cli", "report"]
