"""Instance generators."""

from app.domain.services.generators.package_demo import gen_package_demo
from app.domain.services.generators.reductions import (
    PosNegFlavor,
    count_unit_entries,
    eliminate_negative_literals,
    gen_hitting_set_linear,
    gen_hitting_set_qplus,
    gen_owa_from_quadratic,
    gen_posneg_cnf,
    gen_term_sat_quadratic,
)

__all__ = [
    "PosNegFlavor",
    "count_unit_entries",
    "eliminate_negative_literals",
    "gen_hitting_set_linear",
    "gen_hitting_set_qplus",
    "gen_owa_from_quadratic",
    "gen_package_demo",
    "gen_posneg_cnf",
    "gen_term_sat_quadratic",
]
