"""Fixtures for pytest."""
import shutil

import pytest

from skasp.bench.problems import BenchProblem, get_problem
from skasp.lang.parser import load_sketch
from skasp.lang.types import SketchProgram

SOLVER_EXECUTABLE = "clingo"


@pytest.fixture(scope="session")
def hamiltonian() -> BenchProblem:
    """Bundled Hamiltonian cycle problem."""
    return get_problem("hamiltonian")


@pytest.fixture(scope="session")
def hamiltonian_sketch(hamiltonian) -> SketchProgram:
    """Parsed Hamiltonian cycle sketch."""
    return hamiltonian.load()


@pytest.fixture(scope="session")
def nqueens() -> BenchProblem:
    """Bundled N queens problem."""
    return get_problem("nqueens")


@pytest.fixture(scope="session")
def latin_square() -> BenchProblem:
    """Bundled Latin square problem."""
    return get_problem("latin_square")


@pytest.fixture(scope="session")
def small_comparison_sketch() -> SketchProgram:
    """Sketch whose only comparison is satisfied by neq, lt and gt."""
    return load_sketch(
        """
[SKETCH]
:- p(X), p(Y), X ?= Y.
[EXAMPLES]
positive: p(1).
negative: p(1). p(2).
"""
    )


@pytest.fixture(scope="session")
def solver_command():
    """External solver command; skips when the solver is not installed."""
    if shutil.which(SOLVER_EXECUTABLE) is None:
        pytest.skip(f"{SOLVER_EXECUTABLE} is not installed")
    return [SOLVER_EXECUTABLE, "0"]
