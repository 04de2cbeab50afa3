"""Unit tests for skasp.dependency."""
import pytest

from skasp.bench.problems import NON_STRATIFIED, get_problem, resolve_sketch_path
from skasp.dependency import (
    NEGATIVE,
    POSITIVE,
    check_stratified,
    dependency_graph,
    example_dependent_predicates,
    stratify,
)
from skasp.exceptions import NonStratifiedError
from skasp.lang.parser import load_sketch, parse_sketch


def test_hamiltonian_graph(hamiltonian_sketch):
    """Test edges of sketched atoms, sketched negation and candidates."""
    graph = dependency_graph(hamiltonian_sketch)
    assert graph.has_edge("reached", "cycle", POSITIVE)
    assert graph.has_edge("reached", "reached", POSITIVE)
    assert graph.has_edge("⊥3", "?p", POSITIVE)
    assert graph.has_edge("⊥3", "?q", NEGATIVE)
    assert graph.has_edge("?q", "reached", NEGATIVE)
    assert graph.has_edge("?p", "node", POSITIVE)
    assert not graph.has_edge("?p", "node", NEGATIVE)


def test_hamiltonian_is_stratified(hamiltonian_sketch):
    """Test strata: a body is never above its head, and strictly below across negation."""
    strata = stratify(dependency_graph(hamiltonian_sketch))
    assert strata["⊥3"] > strata["?q"]
    assert strata["?q"] > strata["reached"]
    assert strata["reached"] >= strata["cycle"]


def test_non_stratified_sketch():
    """Test the witness cycle of the bundled non-stratified sketch."""
    program = load_sketch(resolve_sketch_path(NON_STRATIFIED).read_text())
    result = check_stratified(dependency_graph(program))
    assert not result.stratified
    assert set(result.cycle) == {"p", "r"}
    assert result.cycle[0] == result.cycle[-1]
    with pytest.raises(NonStratifiedError):
        stratify(dependency_graph(program))


def test_aggregates_are_negative_dependencies():
    """Test that aggregate conditions count as negative edges."""
    program = get_problem("celebrities").load()
    graph = dependency_graph(program)
    assert graph.has_edge("n", "p", NEGATIVE)


def test_example_dependent_predicates(hamiltonian_sketch):
    """Test the predicates that depend on the examples."""
    dependent = example_dependent_predicates(hamiltonian_sketch)
    assert {"cycle", "reached", "?p", "?q"} <= dependent
    assert "node" not in dependent
    assert not any(name.startswith("⊥") for name in dependent)


def test_comparisons_add_no_edges():
    """Test that builtins do not create dependencies."""
    graph = dependency_graph(parse_sketch("[SKETCH]\nh(X) :- p(X), q(Y), X ?= Y.\n"))
    assert {(head, body) for head, body, _ in graph.edges} == {("h", "p"), ("h", "q")}
