"""Top-level package for nnf-optimizer."""

__all__ = ["api", "application", "core", "domain", "persistence"]
