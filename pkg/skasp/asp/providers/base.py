"""Base solver backend."""
from typing import Collection, FrozenSet, List, Optional, Tuple

from ...lang.types import AspProgram
from ..terms import GroundAtom

Model = FrozenSet[GroundAtom]


def project(model: Collection[GroundAtom], shows: Tuple[Tuple[str, int], ...]) -> Model:
    """Restrict a model to the shown signatures; no signatures keeps every atom."""
    if not shows:
        return frozenset(model)
    shown = set(shows)
    return frozenset(atom for atom in model if (atom.predicate, len(atom.args)) in shown)


class BaseSolver:
    """Base class for solver backends to implement."""

    name = "base"

    def solve(self, program: AspProgram, limit: Optional[int] = None) -> List[Model]:
        """Answer sets of a sketch-free program, projected on its ``#show`` signatures."""
        raise NotImplementedError("Solvers must implement this method")

    def is_available(self) -> bool:
        """Health check."""
        raise NotImplementedError("Solvers must implement this method")

    def count_models(self, program: AspProgram) -> int:
        """Number of answer sets of a program."""
        return len(self.solve(program))
