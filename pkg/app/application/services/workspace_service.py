"""File-level use cases: loading inputs and writing generated instances."""

import logging
from pathlib import Path
from typing import Optional

from app.domain.entities.circuit import NnfCircuit, constant_circuit
from app.domain.entities.cnf import Cnf
from app.domain.entities.instances import (
    NegativeLiteralElimination,
    OwaReduction,
    PackageDemo,
    ReductionInstance,
)
from app.domain.entities.names import NameTable
from app.domain.entities.objective import SUM
from app.persistence.repositories import (
    DimacsFileRepository,
    NameTableFileRepository,
    NnfFileRepository,
    ObddDocument,
    ObddFileRepository,
    WeightedBaseDocument,
    WeightedBaseFileRepository,
)

logger = logging.getLogger(__name__)


def sidecar_names_path(circuit_path: str | Path) -> Path:
    """``pkg.nnf`` keeps its name table in ``pkg.names``."""
    return Path(circuit_path).with_suffix(".names")


class WorkspaceService:
    """Reads and writes every file format used by the command line."""

    def __init__(self) -> None:
        self.circuits = NnfFileRepository()
        self.obdds = ObddFileRepository()
        self.bases = WeightedBaseFileRepository(self.circuits)
        self.cnfs = DimacsFileRepository()
        self.names = NameTableFileRepository()

    def load_circuit(self, path: str | Path) -> NnfCircuit:
        circuit = self.circuits.load(path)
        logger.info("loaded %s: %s nodes, %s edges", path, len(circuit.nodes), circuit.size)
        return circuit

    def load_base(self, path: str | Path) -> WeightedBaseDocument:
        return self.bases.load(path)

    def load_obdd(self, path: str | Path) -> ObddDocument:
        return self.obdds.load(path)

    def load_cnf(self, path: str | Path) -> Cnf:
        return self.cnfs.load(path)

    def load_names(
        self, explicit: Optional[str | Path] = None, circuit_path: Optional[str | Path] = None
    ) -> NameTable:
        """The explicit table, else the circuit's sidecar if present, else no names."""
        if explicit is not None:
            return self.names.load(explicit)
        if circuit_path is not None:
            sidecar = sidecar_names_path(circuit_path)
            if sidecar.exists():
                logger.debug("using sidecar name table %s", sidecar)
                return self.names.load(sidecar)
        return NameTable()

    def save_circuit(self, circuit: NnfCircuit, path: str | Path) -> Path:
        return self.circuits.save(circuit, path)

    def write_reduction(
        self, instance: ReductionInstance, out_dir: str | Path, prefix: str
    ) -> list[Path]:
        out = Path(out_dir)
        written = [
            self.circuits.save(instance.circuit, out / f"{prefix}.nnf"),
            self.bases.save(
                WeightedBaseDocument(base=instance.base, aggregator=instance.aggregator),
                out / f"{prefix}.wb",
            ),
        ]
        if len(instance.names):
            written.append(self.names.save(instance.names, out / f"{prefix}.names"))
        return written

    def write_owa(self, reduction: OwaReduction, out_dir: str | Path, prefix: str) -> list[Path]:
        out = Path(out_dir)
        return [
            self.circuits.save(
                constant_circuit(True, reduction.base.num_vars), out / f"{prefix}.nnf"
            ),
            self.bases.save(
                WeightedBaseDocument(base=reduction.base, aggregator=reduction.aggregator),
                out / f"{prefix}.wb",
            ),
        ]

    def write_elimination(
        self, elimination: NegativeLiteralElimination, out_dir: str | Path, prefix: str
    ) -> list[Path]:
        out = Path(out_dir)
        return [
            self.obdds.save(
                ObddDocument(manager=elimination.manager, root=elimination.constraint),
                out / f"{prefix}.obdd",
            ),
            self.bases.save(
                WeightedBaseDocument(base=elimination.base, aggregator=SUM), out / f"{prefix}.wb"
            ),
        ]

    def write_package_demo(self, demo: PackageDemo, out_dir: str | Path, prefix: str) -> list[Path]:
        out = Path(out_dir)
        return [
            self.cnfs.save(demo.cnf, out / f"{prefix}.cnf"),
            self.circuits.save(demo.circuit, out / f"{prefix}.nnf"),
            self.names.save(demo.names, out / f"{prefix}.names"),
            self.bases.save(
                WeightedBaseDocument(base=demo.minimal_change, aggregator=SUM),
                out / f"{prefix}-minchange.wb",
            ),
            self.bases.save(
                WeightedBaseDocument(base=demo.newest, aggregator=SUM),
                out / f"{prefix}-newest.wb",
            ),
        ]
