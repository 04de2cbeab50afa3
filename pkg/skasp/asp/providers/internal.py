"""Built-in backend: grounding plus stratified enumeration."""
import logging
from typing import List, Optional

from ...exceptions import BackendLimitationError
from ...lang.types import AspProgram
from ..evaluator import SearchStats, enumerate_answer_sets
from ..grounder import ground
from .base import BaseSolver, Model, project


def check_supported(program: AspProgram) -> None:
    """Check that choice atoms are defined by their blocks only.

    :raises BackendLimitationError: When a rule head shares a predicate with a choice block.
    """
    chosen = {atom.signature for block in program.choices for atom in block.atoms}
    for rule in program.rules:
        if rule.head is not None and rule.head.signature in chosen:
            name, arity = rule.head.signature
            raise BackendLimitationError(
                f"{name}/{arity} is both chosen and derived; use the external backend for this program"
            )


class InternalSolver(BaseSolver):
    """Solves programs made of exactly-one choices over a stratified remainder."""

    name = "internal"
    logger = logging.getLogger("skasp.asp.providers.internal")

    def __init__(self) -> None:
        """Init InternalSolver."""
        self.stats = SearchStats()

    def __str__(self) -> str:
        """String definition for InternalSolver."""
        return "internal grounder and stratified evaluator"

    def solve(self, program: AspProgram, limit: Optional[int] = None) -> List[Model]:
        """Enumerate answer sets; search counters are kept in :attr:`stats`.

        :raises BackendLimitationError: When the program does not have the supported shape.
        """
        check_supported(program)
        grounded = ground(program)
        self.stats = SearchStats()
        models = enumerate_answer_sets(grounded, limit=limit, stats=self.stats)
        self.logger.debug(
            "Solved program. Rules: %d, Blocks: %d, Answer sets: %d",
            len(program.rules),
            len(grounded.blocks),
            len(models),
        )
        return [project(model, program.shows) for model in models]

    def is_available(self) -> bool:
        """Always available."""
        return True
