"""Package dependency demo.

Three packages A, B and C, each available in versions 1 and 2: a package is
installed iff one of its versions is, A1 needs B, A2 needs B and C, and the
two versions of A conflict. The user asks for A and B1.
"""

from app.domain.entities.cnf import Cnf
from app.domain.entities.circuit import Literal
from app.domain.entities.instances import PackageDemo
from app.domain.entities.names import NameTable
from app.domain.entities.objective import WeightedBase, WeightedItem
from app.domain.services.compiler import compile_cnf

PACKAGE_NAMES = ("A", "A1", "A2", "B", "B1", "B2", "C", "C1", "C2")

_A, _A1, _A2, _B, _B1, _B2, _C, _C1, _C2 = range(1, 10)

DEPENDENCY_CLAUSES: tuple[tuple[int, ...], ...] = (
    # A ⇔ (A1 ∨ A2), same for B and C
    (-_A, _A1, _A2), (-_A1, _A), (-_A2, _A),
    (-_B, _B1, _B2), (-_B1, _B), (-_B2, _B),
    (-_C, _C1, _C2), (-_C1, _C), (-_C2, _C),
    (-_A1, _B),
    (-_A2, _B), (-_A2, _C),
    (-_A1, -_A2),
)


def gen_package_demo() -> PackageDemo:
    """Compiled constraint, request ``A ∧ B1`` and the two preference bases.

    ``minimal_change`` charges 1 per installed package variable, so the
    smallest installation wins; ``newest`` rewards each version-2 package.
    """
    cnf = Cnf(num_vars=len(PACKAGE_NAMES), clauses=DEPENDENCY_CLAUSES)
    minimal_change = WeightedBase(
        items=tuple(WeightedItem.term([Literal(var=v)], 1) for v in range(1, 10)),
        num_vars=len(PACKAGE_NAMES),
    )
    newest = WeightedBase(
        items=tuple(WeightedItem.term([Literal(var=v)], -1) for v in (_A2, _B2, _C2)),
        num_vars=len(PACKAGE_NAMES),
    )
    return PackageDemo(
        cnf=cnf,
        circuit=compile_cnf(cnf),
        names=NameTable.from_sequence(list(PACKAGE_NAMES)),
        gamma={_A: 1, _B1: 1},
        minimal_change=minimal_change,
        newest=newest,
    )
