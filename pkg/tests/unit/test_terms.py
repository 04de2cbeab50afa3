"""Unit tests for skasp.asp.terms."""
import pytest

from skasp.asp.terms import GroundAtom, arithmetic, compare, evaluate, ground_atom_key
from skasp.exceptions import ArithmeticOverflowError
from skasp.lang.types import INT64_MAX, INT64_MIN, ArithOp, BinOp, CmpOp, Integer, Variable


def test_integers_precede_symbols():
    """Test the total order on ground values."""
    assert compare(CmpOp.LT, 100, "a")
    assert compare(CmpOp.GT, "b", "a")
    assert not compare(CmpOp.EQ, 1, "1")


def test_top_holds_for_every_pair():
    """Test the always-true comparison."""
    assert compare(CmpOp.TOP, 1, 2)
    assert compare(CmpOp.TOP, "a", 3)


@pytest.mark.parametrize(
    "op,left,right,expected",
    [
        (ArithOp.ADD, 2, 3, 5),
        (ArithOp.SUB, 2, 3, -1),
        (ArithOp.MUL, -4, 3, -12),
        (ArithOp.DIV, 7, 2, 3),
        (ArithOp.DIV, 7, -2, -3),
        (ArithOp.DIST, 5, 2, 3),
        (ArithOp.ADD, "a", 1, None),
    ],
)
def test_arithmetic(op, left, right, expected):
    """Test arithmetic on ground values."""
    assert arithmetic(op, left, right) == expected


def test_arithmetic_overflow():
    """Test that results outside the 64-bit range are errors."""
    with pytest.raises(ArithmeticOverflowError):
        arithmetic(ArithOp.ADD, INT64_MAX, 1)
    with pytest.raises(ArithmeticOverflowError):
        arithmetic(ArithOp.MUL, INT64_MIN, 2)


def test_evaluate_nested_term():
    """Test evaluating a term under a binding."""
    term = BinOp(BinOp(Variable("X"), ArithOp.MUL, Integer(2)), ArithOp.SUB, Variable("Y"))
    assert evaluate(term, {"X": 5, "Y": 3}) == 7
    assert evaluate(BinOp(Variable("X"), ArithOp.DIV, Integer(0)), {"X": 1}) is None


def test_ground_atom_text_and_order():
    """Test ground atom rendering and sorting."""
    atoms = [GroundAtom("p", ("a",)), GroundAtom("p", (2,)), GroundAtom("a")]
    assert [str(atom) for atom in sorted(atoms, key=ground_atom_key)] == ["a", "p(2)", "p(a)"]
