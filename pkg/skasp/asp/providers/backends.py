"""Backend selection and model counting."""
from typing import Optional, Sequence, Union

from ...lang.parser import parse_program
from ...lang.types import AspProgram
from .base import BaseSolver
from .external import ExternalSolver
from .internal import InternalSolver

INTERNAL = "internal"
EXTERNAL = "external"
BACKENDS = (INTERNAL, EXTERNAL)


def get_backend(name: str, command: Optional[Sequence[str]] = None, timeout: Optional[float] = None) -> BaseSolver:
    """Backend called ``name``.

    :param name: ``internal`` or ``external``.
    :param command: External solver command.
    :param timeout: External solver timeout in seconds.
    :raises ValueError: On an unknown backend name.
    """
    if name == INTERNAL:
        return InternalSolver()
    if name == EXTERNAL:
        return ExternalSolver(command, timeout)
    raise ValueError(f"unknown backend {name!r}, expected one of {', '.join(BACKENDS)}")


def count_models(
    program: Union[str, AspProgram],
    backend: str = INTERNAL,
    command: Optional[Sequence[str]] = None,
    timeout: Optional[float] = None,
) -> int:
    """Number of answer sets of a sketch-free program.

    >>> count_models("1 { a ; b ; c } 1. :- a.")
    2

    :param program: Program text or parsed program.
    :param backend: ``internal`` or ``external``.
    :raises BackendLimitationError: When the internal backend cannot handle the program.
    :raises SolverError: When the external solver fails.
    """
    parsed = parse_program(program) if isinstance(program, str) else program
    return get_backend(backend, command, timeout).count_models(parsed)
