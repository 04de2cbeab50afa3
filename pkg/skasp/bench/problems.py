"""Bundled problem corpus.

Every problem ships a sketch with its example pool and the substitution completing it into the
intended program. Problems with a candidate generator also ship that program (a sketch-free
program whose answer sets are the candidate structures) and can be scored for precision.
"""
from pathlib import Path
from typing import Dict, List, Mapping, NamedTuple, Optional, Union

from ..lang.parser import load_sketch
from ..lang.printer import atom_sort_key, format_rule
from ..lang.types import Rule, SketchProgram

DATA_DIR = Path(__file__).parent / "data"
"""Directory of the bundled problem files."""
SKETCH_SUFFIX = ".skasp"


class BenchProblem(NamedTuple):
    """A bundled sketch with its reference completion."""

    name: str
    """Name used on the command line."""
    intended: Mapping[str, str]
    """Intended substitution, variable id to candidate."""
    generator: Optional[str] = None
    """File of the candidate generator used for precision."""
    truth: Optional[str] = None
    """File of the intended completed program."""
    transfer: Optional[str] = None
    """File of a larger candidate generator used for generalization."""
    transfer_models: Optional[int] = None
    """Known number of models of the intended program on :attr:`transfer`."""

    @property
    def sketch_path(self) -> Path:
        """Path of the sketch file."""
        return DATA_DIR / f"{self.name}{SKETCH_SUFFIX}"

    def load(self) -> SketchProgram:
        """Parse and validate the sketch."""
        return load_sketch(self.sketch_path.read_text())

    def read(self, file_name: str) -> str:
        """Text of a bundled data file."""
        return (DATA_DIR / file_name).read_text()


PROBLEMS: Dict[str, BenchProblem] = {
    problem.name: problem
    for problem in (
        BenchProblem("hamiltonian", {"p": "node", "q": "reached", "?not@3.0": "neg"}),
        BenchProblem(
            "latin_square",
            {"?=@1.0": "neq", "?=@1.1": "eq", "?=@2.0": "neq", "?=@2.1": "eq"},
            generator="latin_square_gen3.lp",
            truth="latin_square_truth.lp",
            transfer="latin_square_gen4.lp",
            transfer_models=576,
        ),
        BenchProblem(
            "sudoku4",
            {"?=@1.0": "neq", "?=@1.1": "eq", "?=@2.0": "neq", "?=@2.1": "eq", "?not@4.0": "neg"},
            generator="sudoku4_gen.lp",
            truth="sudoku4_truth.lp",
        ),
        BenchProblem(
            "nqueens",
            {
                "?=@1.0": "neq",
                "?=@2.0": "neq",
                "?=@3.0": "neq",
                "?+@3.0": "dist",
                "?+@3.1": "dist",
                "?=@3.1": "eq",
            },
            generator="nqueens_gen4.lp",
            truth="nqueens_truth.lp",
            transfer="nqueens_gen8.lp",
            transfer_models=92,
        ),
        BenchProblem(
            "bw_queens", {"?=@1.0": "eq", "?=@2.0": "eq", "?+@3.0": "dist", "?+@3.1": "dist", "?=@3.0": "eq"}
        ),
        BenchProblem("graph_coloring", {"?=@1.0": "eq", "?=@2.0": "neq", "?not@4.0": "neg"}),
        BenchProblem("equal_subset_sum", {"?#@1.0": "sum", "?#@1.1": "sum"}),
        BenchProblem("celebrities", {"?#@1.0": "count", "?#@2.0": "count"}),
    )
}
"""Stratified bundled problems by name."""

NON_STRATIFIED = "nonstratified"
"""Bundled sketch rejected by the stratification check."""


def list_problems() -> List[str]:
    """Names of the bundled problems."""
    return list(PROBLEMS)


def get_problem(name: str) -> BenchProblem:
    """Bundled problem called ``name``.

    :raises ValueError: When there is no such problem.
    """
    try:
        return PROBLEMS[name]
    except KeyError:
        raise ValueError(f"unknown problem {name!r}, expected one of {', '.join(PROBLEMS)}") from None


def resolve_sketch_path(name_or_path: Union[str, Path]) -> Path:
    """Path of a sketch given as a file path or as the name of a bundled sketch.

    >>> resolve_sketch_path("hamiltonian").name
    'hamiltonian.skasp'
    """
    path = Path(name_or_path)
    if path.exists():
        return path
    bundled = DATA_DIR / (path.name if path.suffix == SKETCH_SUFFIX else f"{path.name}{SKETCH_SUFFIX}")
    return bundled if bundled.exists() else path


def facts_text(program: SketchProgram) -> str:
    """The facts of a sketch as program text, one per line."""
    return "".join(f"{format_rule(Rule(atom))}\n" for atom in sorted(program.facts, key=atom_sort_key))
