"""Application services package.

Application services orchestrate use cases: they pick domain routines,
coordinate repositories, and give the command line a small API.
"""

from app.application.services.optimization_service import (
    Algorithm,
    DispatchOptions,
    OptimizationService,
    condition_base,
    dispatch,
)
from app.application.services.workspace_service import WorkspaceService

__all__ = [
    "Algorithm",
    "DispatchOptions",
    "OptimizationService",
    "WorkspaceService",
    "condition_base",
    "dispatch",
]
