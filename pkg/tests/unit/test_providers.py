"""Unit tests for skasp.asp.providers."""
import pytest

from skasp.asp.providers.backends import EXTERNAL, INTERNAL, count_models, get_backend
from skasp.asp.providers.external import ExternalSolver, external_solve, parse_model_line, parse_solver_output
from skasp.asp.providers.internal import InternalSolver
from skasp.asp.terms import GroundAtom
from skasp.exceptions import BackendLimitationError, SolverError, SolverNotFoundError
from skasp.lang.parser import parse_program

CLINGO_OUTPUT = """clingo version 5.4.0
Reading from stdin
Solving...
Answer: 1
decision_q(c_reached) decision_not_3_0(neg)
Answer: 2

SATISFIABLE

Models       : 2
"""


def test_get_backend():
    """Test backend selection by name."""
    assert isinstance(get_backend(INTERNAL), InternalSolver)
    external = get_backend(EXTERNAL, ["my-solver", "--all"], 5.0)
    assert isinstance(external, ExternalSolver)
    assert external.command == ["my-solver", "--all"]
    assert external.timeout == 5.0
    with pytest.raises(ValueError):
        get_backend("remote")


def test_internal_solver_projects_shown_atoms():
    """Test that models are restricted to the ``#show`` signatures."""
    program = parse_program("1 { a ; b } 1. c :- a. #show a/0. #show b/0.")
    models = InternalSolver().solve(program)
    assert models == [frozenset({GroundAtom("a")}), frozenset({GroundAtom("b")})]


def test_internal_solver_stats():
    """Test that the internal backend keeps its search counters."""
    solver = InternalSolver()
    solver.solve(parse_program("1 { a ; b ; c } 1. :- a."))
    assert solver.stats.answer_sets == 2
    assert solver.stats.assignments == 3
    assert solver.is_available()


def test_internal_solver_limitation():
    """Test that chosen atoms cannot also be derived."""
    with pytest.raises(BackendLimitationError):
        InternalSolver().solve(parse_program("1 { a ; b } 1. a :- c. c."))


def test_count_models_text_and_program():
    """Test counting from text and from a parsed program."""
    text = "1 { a ; b ; c } 1. 1 { d ; e } 1. :- a, d."
    assert count_models(text) == 5
    assert count_models(parse_program(text)) == 5


def test_parse_solver_output():
    """Test reading models, including an empty one, from clingo output."""
    models = parse_solver_output(CLINGO_OUTPUT)
    assert models == [
        frozenset({GroundAtom("decision_q", ("c_reached",)), GroundAtom("decision_not_3_0", ("neg",))}),
        frozenset(),
    ]


def test_parse_model_line_arguments():
    """Test comma-separated arguments of every value kind."""
    assert parse_model_line('cycle(0,a,b) label(-3,"two words") done') == frozenset(
        {GroundAtom("cycle", (0, "a", "b")), GroundAtom("label", (-3, '"two words"')), GroundAtom("done")}
    )


def test_parse_solver_output_rejects_garbage():
    """Test that an unparseable model line is a solver error."""
    with pytest.raises(SolverError):
        parse_solver_output("Answer: 1\np(\n")


def test_missing_solver():
    """Test that a solver that is not on the path is reported."""
    with pytest.raises(SolverNotFoundError):
        external_solve("a.", ["skasp-no-such-solver-binary"])
    assert not ExternalSolver(["skasp-no-such-solver-binary"]).is_available()


def test_default_solver_command(monkeypatch):
    """Test that the solver command comes from the environment."""
    monkeypatch.setenv("SKASP_SOLVER", "gringo --text")
    assert ExternalSolver().command == ["gringo", "--text"]
    monkeypatch.delenv("SKASP_SOLVER")
    assert ExternalSolver().command == ["clingo", "0"]
