"""External backend: an ASP solver driven as a subprocess."""
import logging
import os
import shlex
import shutil
import subprocess
from typing import List, Optional, Sequence

import pyparsing as pp

from ...exceptions import SolverError, SolverNotFoundError, SolverTimeoutError
from ...lang.printer import format_program
from ...lang.types import AspProgram
from ..terms import GroundAtom
from .base import BaseSolver, Model, project

SOLVER_ENV = "SKASP_SOLVER"
DEFAULT_SOLVER = "clingo 0"
OK_RETURN_CODES = frozenset({0, 10, 20, 30})
"""Solver exit codes meaning: unknown, satisfiable, unsatisfiable, satisfiable and exhausted."""
ANSWER_MARKER = "Answer:"

_VALUE = (
    pp.Regex(r"-?\d+").set_parse_action(lambda tokens: int(tokens[0]))
    | pp.QuotedString('"', unquote_results=False)
    | pp.Regex(r"_*[a-z][A-Za-z0-9_']*")
)
_GROUND_ATOM = (
    pp.Regex(r"_*[a-z][A-Za-z0-9_']*")("predicate")
    + pp.Optional(pp.Suppress("(") + pp.Group(pp.DelimitedList(_VALUE))("args") + pp.Suppress(")"))
).set_parse_action(lambda tokens: GroundAtom(tokens["predicate"], tuple(tokens.get("args", ()))))
MODEL_LINE = pp.ZeroOrMore(_GROUND_ATOM) + pp.StringEnd()


def get_default_solver_command() -> List[str]:
    """Get the solver command: ``$SKASP_SOLVER`` or ``clingo 0`` (all models)."""
    return shlex.split(os.environ.get(SOLVER_ENV, DEFAULT_SOLVER))


def parse_model_line(line: str) -> Model:
    """Parse one model line of whitespace-separated ground atoms.

    >>> sorted(map(str, parse_model_line("decision_q(c_reached) p(1,-2)")))
    ['decision_q(c_reached)', 'p(1,-2)']

    :raises SolverError: When the line is not a list of ground atoms.
    """
    try:
        return frozenset(MODEL_LINE.parse_string(line, parse_all=True))
    except pp.ParseBaseException as exc:
        raise SolverError(f"unparseable model line {line!r}") from exc


def parse_solver_output(output: str) -> List[Model]:
    """Models of a clingo-style text output, in emission order."""
    models: List[Model] = []
    lines = output.splitlines()
    for position, line in enumerate(lines):
        if line.startswith(ANSWER_MARKER):
            following = lines[position + 1] if position + 1 < len(lines) else ""
            models.append(parse_model_line(following.strip()))
    return models


def external_solve(
    meta_text: str, solver_command: Optional[Sequence[str]] = None, timeout: Optional[float] = None
) -> List[Model]:
    """Run the solver on a program text and return every model it reports.

    The program is written to the solver's standard input.

    :param meta_text: Program text.
    :param solver_command: Command and arguments; defaults to :func:`get_default_solver_command`.
    :param timeout: Seconds before the solver is killed.
    :raises SolverNotFoundError: When the executable cannot be found.
    :raises SolverTimeoutError: When the timeout expires.
    :raises SolverError: On an error exit status or an unparseable model.
    """
    command = list(solver_command) if solver_command else get_default_solver_command()
    if not command or shutil.which(command[0]) is None:
        raise SolverNotFoundError(f"solver {command[0] if command else '<empty>'!r} not found")
    try:
        completed = subprocess.run(
            command, input=meta_text, capture_output=True, text=True, timeout=timeout, check=False
        )
    except subprocess.TimeoutExpired as exc:
        raise SolverTimeoutError(f"solver timed out after {timeout} seconds") from exc
    except OSError as exc:
        raise SolverNotFoundError(f"cannot run solver {command[0]!r}: {exc}") from exc
    if completed.returncode not in OK_RETURN_CODES:
        raise SolverError("solver failed", completed.returncode, completed.stderr or completed.stdout)
    return parse_solver_output(completed.stdout)


class ExternalSolver(BaseSolver):
    """Backend running a clingo-compatible solver."""

    name = "external"
    logger = logging.getLogger("skasp.asp.providers.external")

    def __init__(self, command: Optional[Sequence[str]] = None, timeout: Optional[float] = None) -> None:
        """Init ExternalSolver."""
        self.command = list(command) if command else get_default_solver_command()
        self.timeout = timeout

    def __str__(self) -> str:
        """String definition for ExternalSolver."""
        return f"external solver {shlex.join(self.command)}"

    def solve(self, program: AspProgram, limit: Optional[int] = None) -> List[Model]:
        """Print the program, run the solver and parse its models."""
        text = format_program(program)
        self.logger.debug("Running solver. Command: %s, Program size: %d", self.command, len(text))
        models = external_solve(text, self.command, self.timeout)
        self.logger.debug("Solver returned %d models", len(models))
        return [project(model, program.shows) for model in models[:limit]]

    def is_available(self) -> bool:
        """Health check."""
        found = bool(self.command) and shutil.which(self.command[0]) is not None
        if not found:
            self.logger.error("Solver %s is not on the path", self.command[:1])
        return found
