"""Optimization routines, one module per algorithm."""

from app.domain.services.optimizers.fpt import opt_fpt_polynomial
from app.domain.services.optimizers.linear import (
    complete_optimally,
    opt_dnnf_linear,
)
from app.domain.services.optimizers.linearize import opt_obdd_linearize
from app.domain.services.optimizers.monotone import opt_dnf_monotone
from app.domain.services.optimizers.oracle import count_models, oracle_enumerate
from app.domain.services.optimizers.semiring import semiring_minsum

__all__ = [
    "complete_optimally",
    "count_models",
    "opt_dnf_monotone",
    "opt_dnnf_linear",
    "opt_fpt_polynomial",
    "opt_obdd_linearize",
    "oracle_enumerate",
    "semiring_minsum",
]
