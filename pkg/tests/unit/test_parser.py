"""Unit tests for skasp.lang.parser."""
import pytest

from skasp.exceptions import SketchSyntaxError, ValidationError
from skasp.lang.parser import load_sketch, parse_preferences, parse_program, parse_sketch
from skasp.lang.types import (
    Aggregate,
    Atom,
    Comparison,
    Integer,
    Literal,
    SketchedAtom,
    SketchedNegation,
    SketchKind,
    SketchRef,
    Symbol,
    Variable,
)
from skasp.lang.validate import UNSAFE_VARIABLE


def test_parse_hamiltonian_sections(hamiltonian_sketch):
    """Test that every section of the bundled sketch is read."""
    assert len(hamiltonian_sketch.rules) == 3
    assert [var.id for var in hamiltonian_sketch.declarations] == ["p", "q"]
    assert hamiltonian_sketch.declaration("q").domain == ("node", "reached")
    assert hamiltonian_sketch.facts == {Atom("node", (Symbol(name),)) for name in "abc"}
    assert len(hamiltonian_sketch.examples.positives) == 1
    assert len(hamiltonian_sketch.examples.negatives) == 1


def test_parse_sketched_negation(hamiltonian_sketch):
    """Test the body of ``:- ?p(Y), ?not ?q(Y).``."""
    y = (Variable("Y"),)
    body = hamiltonian_sketch.rules[2].body
    assert body[0] == Literal(SketchedAtom("p", y))
    assert body[1] == SketchedNegation(SketchedAtom("q", y), SketchRef(SketchKind.NEGATION, "?not@3.0"))


def test_auto_names_visit_operands_first():
    """Test numbering of nested arithmetic sketches inside a comparison sketch."""
    program = parse_sketch(
        "[SKETCH]\n"
        "a :- b.\n"
        ":- q(X1,Y1), q(X2,Y2), X1 ?= X2, X1 ?+ X2 ?= Y1 ?+ Y2.\n"
    )
    body = program.rules[1].body
    assert body[2].op.id == "?=@2.0"
    assert body[3].lhs.op.id == "?+@2.0"
    assert body[3].rhs.op.id == "?+@2.1"
    assert body[3].op.id == "?=@2.1"


def test_parse_sketched_aggregate():
    """Test an aggregate whose function is sketched."""
    program = parse_sketch("[SKETCH]\n:- c(C), S = ?#{P : k(P,C)}, S < 2.\n")
    aggregate = program.rules[0].body[1]
    assert isinstance(aggregate, Aggregate)
    assert aggregate.result == Variable("S")
    assert aggregate.function == SketchRef(SketchKind.AGGREGATE, "?#@1.0")
    assert aggregate.condition == (Literal(Atom("k", (Variable("P"), Variable("C")))),)


def test_parse_distance_term():
    """Test the absolute difference syntax."""
    program = parse_sketch("[SKETCH]\n:- q(X,Y), |X - Y| = 1.\n")
    comparison = program.rules[0].body[1]
    assert isinstance(comparison, Comparison)
    assert comparison.rhs == Integer(1)


def test_examples_may_span_lines():
    """Test an example whose atoms continue on the next line."""
    program = parse_sketch("[EXAMPLES]\npositive: e(1).\n  e(2).\nnegative: e(3).\n")
    assert program.examples.positives == (frozenset({Atom("e", (Integer(1),)), Atom("e", (Integer(2),))}),)
    assert program.examples.negatives == (frozenset({Atom("e", (Integer(3),))}),)


def test_comments_are_ignored():
    """Test that ``%`` comments do not reach the grammar."""
    program = parse_sketch("% header comment\n[SKETCH]\na :- b. % trailing comment\n")
    assert len(program.rules) == 1


def test_syntax_error_location():
    """Test that syntax errors report the line of the bad statement."""
    with pytest.raises(SketchSyntaxError) as exc_info:
        parse_sketch("[SKETCH]\na :- b.\n:- p(X) q(X).\n")
    assert exc_info.value.line == 3


@pytest.mark.parametrize(
    "text",
    [
        "[UNKNOWN]\na.\n",
        "a :- b.\n",
        "[SKETCH]\n:- p(X)\n",
        "[SKETCH]\n?q(X) :- p(X).\n[SKETCHEDVAR]\n?q/1 : r\n",
        "[SKETCH]\n:- ?q(X).\n",
        "[SKETCH]\n:- ?q(X).\n[SKETCHEDVAR]\n?q/2 : r\n",
        "[SKETCH]\n:- p(99999999999999999999).\n",
        "[EXAMPLES]\ne(1).\n",
    ],
    ids=[
        "unknown section",
        "text outside of a section",
        "unterminated statement",
        "sketched head",
        "undeclared sketched predicate",
        "sketched arity mismatch",
        "integer out of range",
        "unlabeled example",
    ],
)
def test_malformed_sketches(text):
    """Test inputs that are rejected while parsing."""
    with pytest.raises(SketchSyntaxError):
        parse_sketch(text)


def test_load_sketch_validates():
    """Test that load_sketch reports validation violations."""
    with pytest.raises(ValidationError) as exc_info:
        load_sketch("[SKETCH]\n:- p(X), Y ?= X.\n")
    assert UNSAFE_VARIABLE in exc_info.value.report.categories()


def test_parse_preferences_section():
    """Test that preference sections are attached to the sketched variables."""
    program = parse_sketch("[SKETCH]\n:- p(X), p(Y), X ?= Y.\n[PREFERENCES]\n?= : lt=3\n?=@1.0 : eq=2\n")
    assert program.preferences == {"?=": {"lt": 3}, "?=@1.0": {"eq": 2}}


def test_preference_for_unknown_candidate():
    """Test that preferences must name candidates of the variable's domain."""
    with pytest.raises(SketchSyntaxError):
        parse_sketch("[SKETCH]\n:- p(X), p(Y), X ?= Y.\n[PREFERENCES]\n?= : mul=1\n")


def test_parse_preferences_file():
    """Test reading a standalone preference file with a header."""
    assert parse_preferences("[PREFERENCES]\n?q : node=1, reached=2\n") == {"?q": {"node": 1, "reached": 2}}


def test_parse_program_conditional_choice():
    """Test that conditional choices expand over the domain facts."""
    program = parse_program("dom(1). dom(2).\n1 { d(X) : dom(X) } 1.\n#show d/1.\n")
    block = program.choices[0]
    assert block.atoms == (Atom("d", (Integer(1),)), Atom("d", (Integer(2),)))
    assert block.label == "d"
    assert block.domain == "dom"
    assert program.shows == (("d", 1),)


def test_parse_program_rejects_sketches():
    """Test that plain programs cannot contain sketched constructs."""
    with pytest.raises(SketchSyntaxError):
        parse_program(":- p(X), p(Y), X ?= Y.")


def test_parse_program_empty_choice_domain():
    """Test a conditional choice whose domain has no facts."""
    with pytest.raises(SketchSyntaxError):
        parse_program("1 { d(X) : dom(X) } 1.")


def test_rule_head_is_an_atom():
    """Test that rule heads parse to atoms."""
    assert parse_program("p(X) :- q(X).").rules[0].head == Atom("p", (Variable("X"),))
    assert parse_sketch("[SKETCH]\nreached(Y) :- cycle(a,Y).\n").rules[0].head == Atom("reached", (Variable("Y"),))
    assert parse_program("node(a).").rules[0].head == Atom("node", (Symbol("a"),))
