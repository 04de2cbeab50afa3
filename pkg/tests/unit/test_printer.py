"""Unit tests for skasp.lang.printer."""
from skasp.lang.parser import parse_program, parse_sketch
from skasp.lang.printer import format_choice, format_program, format_rule, format_sketch
from skasp.lang.substitute import substitute


def test_format_sketched_rules(nqueens):
    """Test that sketched operators print as their surface tokens."""
    program = nqueens.load()
    assert format_rule(program.rules[2]) == ":- queen(X1,Y1), queen(X2,Y2), X1 ?= X2, X1 ?+ X2 ?= Y1 ?+ Y2."


def test_format_aggregate():
    """Test aggregate rendering."""
    program = parse_sketch("[SKETCH]\n:- S = ?#{V,X : val(X,V), s(X)}, S > 3.\n")
    assert format_rule(program.rules[0]) == ":- S = ?#{V,X : val(X,V), s(X)}, S > 3."


def test_format_parenthesized_arithmetic():
    """Test that parentheses are kept only where precedence needs them."""
    program = parse_sketch("[SKETCH]\n:- p(X,Y), (X + Y) * 2 = X - (Y - 1).\n")
    assert format_rule(program.rules[0]) == ":- p(X,Y), (X + Y) * 2 = X - (Y - 1)."


def test_sketch_reads_back(nqueens):
    """Test that a printed sketch parses to the same syntax tree."""
    program = nqueens.load()
    again = parse_sketch(format_sketch(program))
    assert again.rules == program.rules
    assert again.examples == program.examples


def test_format_program():
    """Test printing a plain program with choices and show directives."""
    program = parse_program("dom(1). dom(2).\n1 { d(X) : dom(X) } 1.\n1 { a ; b } 1.\n:- a, d(1).\n#show d/1.\n")
    assert format_choice(program.choices[0]) == "1 { d(X) : dom(X) } 1."
    assert format_program(program) == (
        "dom(1).\ndom(2).\n:- a, d(1).\n1 { d(X) : dom(X) } 1.\n1 { a ; b } 1.\n#show d/1.\n"
    )


def test_distance_with_compound_right_operand():
    """Test that the right operand of a distance keeps its parentheses."""
    program = parse_program(":- p(X,Y,Z,V), |X - (Y - Z)| = V.")
    text = format_rule(program.rules[0])
    assert text == ":- p(X,Y,Z,V), |X - (Y - Z)| = V."
    assert parse_program(text).rules[0].body == program.rules[0].body


def test_distance_candidate_reads_back():
    """Test a sketched operator completed to a distance over a compound operand."""
    program = parse_sketch("[SKETCH]\n:- p(X,Y,Z,V), X ?+ (Y - Z) = V.\n")
    completed = substitute(program, {"?+@1.0": "dist"}).rules[0]
    text = format_rule(completed)
    assert text == ":- p(X,Y,Z,V), |X - (Y - Z)| = V."
    assert parse_program(text).rules[0].body == completed.body
