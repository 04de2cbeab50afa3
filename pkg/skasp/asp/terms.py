"""Ground values, their total order and builtin evaluation."""
from typing import Iterable, Mapping, NamedTuple, Optional, Tuple, Union

from ..exceptions import ArithmeticOverflowError
from ..lang.types import INT64_MAX, INT64_MIN, ArithOp, BinOp, CmpOp, Integer, Symbol, Term, Variable

Value = Union[int, str]
"""A ground constant: an integer or a symbolic constant."""


class GroundAtom(NamedTuple):
    """A ground atom."""

    predicate: str
    args: Tuple[Value, ...] = ()

    def __str__(self) -> str:
        """ASP text of the atom."""
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(str(arg) for arg in self.args)})"


def value_key(value: Value) -> Tuple[int, Value]:
    """Total order on ground values: integers by value, then symbolic constants lexicographically.

    >>> sorted([2, "a", -1], key=value_key)
    [-1, 2, 'a']
    """
    if isinstance(value, int):
        return (0, value)
    return (1, value)


def ground_atom_key(atom: GroundAtom) -> Tuple:
    """Sort key of a ground atom."""
    return atom.predicate, tuple(value_key(arg) for arg in atom.args)


def compare(op: CmpOp, left: Value, right: Value) -> bool:
    """Evaluate a comparison under the total term order; ``TOP`` holds for every pair."""
    if op is CmpOp.TOP:
        return True
    lhs, rhs = value_key(left), value_key(right)
    if op is CmpOp.EQ:
        return lhs == rhs
    if op is CmpOp.NEQ:
        return lhs != rhs
    if op is CmpOp.LT:
        return lhs < rhs
    if op is CmpOp.GT:
        return lhs > rhs
    if op is CmpOp.GEQ:
        return lhs >= rhs
    return lhs <= rhs


def _checked(value: int) -> int:
    if value < INT64_MIN or value > INT64_MAX:
        raise ArithmeticOverflowError(f"integer overflow: {value}")
    return value


def arithmetic(op: ArithOp, left: Value, right: Value) -> Optional[int]:
    """Evaluate an arithmetic operator on signed 64-bit integers.

    Division truncates toward zero. The result is undefined (``None``) for a zero divisor or a
    symbolic operand.

    >>> arithmetic(ArithOp.DIST, 1, 4), arithmetic(ArithOp.DIV, -7, 2), arithmetic(ArithOp.DIV, 7, 0)
    (3, -3, None)

    :raises ArithmeticOverflowError: When the result leaves the 64-bit range.
    """
    if not isinstance(left, int) or not isinstance(right, int):
        return None
    if op is ArithOp.ADD:
        return _checked(left + right)
    if op is ArithOp.SUB:
        return _checked(left - right)
    if op is ArithOp.MUL:
        return _checked(left * right)
    if op is ArithOp.DIST:
        return _checked(abs(left - right))
    if right == 0:
        return None
    quotient = abs(left) // abs(right)
    return _checked(quotient if (left < 0) == (right < 0) else -quotient)


def eval_builtin(op: Union[CmpOp, ArithOp], left: Value, right: Value) -> Union[bool, Optional[int]]:
    """Evaluate a comparison (truth value) or arithmetic operator (integer or ``None``).

    >>> eval_builtin(CmpOp.LT, "a", "b"), eval_builtin(CmpOp.NEQ, "a", "b")
    (True, True)
    """
    if isinstance(op, CmpOp):
        return compare(op, left, right)
    return arithmetic(op, left, right)


def evaluate(term: Term, binding: Mapping[str, Value]) -> Optional[Value]:
    """Value of a term under a binding, or ``None`` when it is undefined.

    :raises KeyError: When a variable is unbound.
    :raises ArithmeticOverflowError: On overflow.
    """
    if isinstance(term, Integer):
        return term.value
    if isinstance(term, Symbol):
        return term.name
    if isinstance(term, Variable):
        return binding[term.name]
    if not isinstance(term, BinOp) or not isinstance(term.op, ArithOp):
        raise TypeError(f"cannot evaluate {term!r}")
    left = evaluate(term.left, binding)
    right = evaluate(term.right, binding)
    if left is None or right is None:
        return None
    return arithmetic(term.op, left, right)


def checked_sum(values: Iterable[int]) -> int:
    """Sum of integers, checked against the signed 64-bit range.

    :raises ArithmeticOverflowError: When the sum leaves the range.
    """
    return _checked(sum(values))
