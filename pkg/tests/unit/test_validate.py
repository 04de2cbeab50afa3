"""Unit tests for skasp.lang.validate."""
from skasp.lang.parser import parse_sketch
from skasp.lang.validate import (
    ARITY_MISMATCH,
    NEGATED_SKETCHED_NEGATION,
    NON_GROUND_EXAMPLE,
    SHARED_PREDICATE,
    UNSAFE_VARIABLE,
    unsafe_variables,
    validate,
)


def test_bundled_sketch_is_valid(hamiltonian_sketch):
    """Test that the bundled sketch has no violations."""
    assert validate(hamiltonian_sketch).ok


def test_unsafe_variables_in_order():
    """Test that unbound variables are listed in order of appearance."""
    program = parse_sketch("[SKETCH]\nh(Z) :- p(X), not q(Y), X ?= W.\n")
    assert unsafe_variables(program.rules[0]) == ["Z", "Y", "W"]


def test_aggregate_result_binds():
    """Test that the result of an aggregate counts as bound."""
    program = parse_sketch("[SKETCH]\nn(N) :- N = #count{P : p(P)}.\n")
    assert unsafe_variables(program.rules[0]) == []


def test_violation_categories():
    """Test that every violation is reported, not only the first."""
    program = parse_sketch(
        "[SKETCH]\n"
        ":- p(X), ?not not r(X).\n"
        ":- p(X), Y = X.\n"
        "[FACTS]\n"
        "p(1). r(1,2).\n"
        "[EXAMPLES]\n"
        "positive: p(2). e(X).\n"
    )
    categories = validate(program).categories()
    assert {UNSAFE_VARIABLE, NEGATED_SKETCHED_NEGATION, NON_GROUND_EXAMPLE, SHARED_PREDICATE} <= categories


def test_candidate_arity_mismatch():
    """Test that candidates must be used with the declared arity."""
    program = parse_sketch(
        "[SKETCH]\n:- ?q(X).\nr(X,Y) :- p(X), p(Y).\n[SKETCHEDVAR]\n?q/1 : p, r\n[FACTS]\np(1).\n"
    )
    report = validate(program)
    assert report.categories() == {ARITY_MISMATCH}
    assert "candidate r of ?q" in str(report.violations[0])
