"""Abstract syntax of sketched and plain answer set programs."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Set, Tuple, Union

INT64_MIN = -(2 ** 63)
"""Smallest integer constant."""
INT64_MAX = 2 ** 63 - 1
"""Largest integer constant."""


class SketchKind(str, Enum):
    """Kinds of sketched variables."""

    PREDICATE = "predicate"
    COMPARISON = "comparison"
    ARITHMETIC = "arithmetic"
    NEGATION = "negation"
    AGGREGATE = "aggregate"

    @property
    def token(self) -> str:
        """Surface token of the kind (``?p`` for predicates)."""
        return _TOKENS[self]

    @property
    def slug(self) -> str:
        """Identifier fragment used in generated names."""
        return _SLUGS[self]


_TOKENS = {
    SketchKind.PREDICATE: "?p",
    SketchKind.COMPARISON: "?=",
    SketchKind.ARITHMETIC: "?+",
    SketchKind.NEGATION: "?not",
    SketchKind.AGGREGATE: "?#",
}
_SLUGS = {
    SketchKind.PREDICATE: "p",
    SketchKind.COMPARISON: "cmp",
    SketchKind.ARITHMETIC: "arith",
    SketchKind.NEGATION: "not",
    SketchKind.AGGREGATE: "agg",
}
OPERATOR_TOKENS = {token: kind for kind, token in _TOKENS.items() if kind is not SketchKind.PREDICATE}
"""Operator token to kind."""


class CmpOp(str, Enum):
    """Comparison operators; ``TOP`` holds for every pair of arguments."""

    EQ = "eq"
    NEQ = "neq"
    LT = "lt"
    GT = "gt"
    GEQ = "geq"
    LEQ = "leq"
    TOP = "top"

    @property
    def symbol(self) -> str:
        """Concrete syntax."""
        return _CMP_SYMBOLS[self]


_CMP_SYMBOLS = {
    CmpOp.EQ: "=",
    CmpOp.NEQ: "!=",
    CmpOp.LT: "<",
    CmpOp.GT: ">",
    CmpOp.GEQ: ">=",
    CmpOp.LEQ: "<=",
    CmpOp.TOP: "#true",
}


class ArithOp(str, Enum):
    """Arithmetic operators; ``DIST`` is the absolute difference."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    DIST = "dist"

    @property
    def symbol(self) -> str:
        """Concrete syntax (``dist`` is printed as ``|X - Y|``)."""
        return _ARITH_SYMBOLS[self]


_ARITH_SYMBOLS = {ArithOp.ADD: "+", ArithOp.SUB: "-", ArithOp.MUL: "*", ArithOp.DIV: "/", ArithOp.DIST: "dist"}


class AggFn(str, Enum):
    """Aggregate functions."""

    MAX = "max"
    MIN = "min"
    COUNT = "count"
    SUM = "sum"


COMPARISON_DOMAIN: Tuple[str, ...] = tuple(op.value for op in CmpOp)
"""Candidates of ``?=`` in declaration order."""
ARITHMETIC_DOMAIN: Tuple[str, ...] = tuple(op.value for op in ArithOp)
"""Candidates of ``?+``."""
NEGATION_DOMAIN: Tuple[str, ...] = ("pos", "neg")
"""Candidates of ``?not``: keep the atom, or negate it."""
AGGREGATE_DOMAIN: Tuple[str, ...] = tuple(fn.value for fn in AggFn)
"""Candidates of ``?#``."""

OPERATOR_DOMAINS: Dict[SketchKind, Tuple[str, ...]] = {
    SketchKind.COMPARISON: COMPARISON_DOMAIN,
    SketchKind.ARITHMETIC: ARITHMETIC_DOMAIN,
    SketchKind.NEGATION: NEGATION_DOMAIN,
    SketchKind.AGGREGATE: AGGREGATE_DOMAIN,
}
"""Fixed domains of the operator kinds."""


@dataclass(frozen=True)
class Integer:
    """Integer constant."""

    value: int


@dataclass(frozen=True)
class Symbol:
    """Symbolic constant (lowercase-initial identifier)."""

    name: str


@dataclass(frozen=True)
class Variable:
    """Variable (uppercase-initial identifier)."""

    name: str


@dataclass(frozen=True)
class SketchRef:
    """Reference to an operator sketch occurrence (``?=``, ``?+``, ``?not``, ``?#``)."""

    kind: SketchKind
    id: str = ""


@dataclass(frozen=True)
class BinOp:
    """Arithmetic expression; only allowed inside comparisons."""

    left: "Term"
    op: Union[ArithOp, SketchRef]
    right: "Term"


Term = Union[Integer, Symbol, Variable, BinOp]
"""Any term."""


@dataclass(frozen=True)
class Atom:
    """Atom ``p(t1, ..., tn)``."""

    predicate: str
    args: Tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        """Number of arguments."""
        return len(self.args)

    @property
    def signature(self) -> Tuple[str, int]:
        """Predicate name and arity."""
        return self.predicate, len(self.args)


@dataclass(frozen=True)
class SketchedAtom:
    """Sketched atom ``?q(t1, ..., tn)``; ``name`` excludes the question mark."""

    name: str
    args: Tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        """Number of arguments."""
        return len(self.args)


AnyAtom = Union[Atom, SketchedAtom]


@dataclass(frozen=True)
class Literal:
    """Positive or default-negated atom."""

    atom: AnyAtom
    negated: bool = False


@dataclass(frozen=True)
class SketchedNegation:
    """``?not`` wrapper; ``over_negation`` marks the ill-formed ``?not not a`` shape."""

    atom: AnyAtom
    ref: SketchRef = SketchRef(SketchKind.NEGATION)
    over_negation: bool = False


@dataclass(frozen=True)
class Comparison:
    """Builtin comparison ``lhs op rhs``."""

    lhs: Term
    op: Union[CmpOp, SketchRef]
    rhs: Term


@dataclass(frozen=True)
class Aggregate:
    """Aggregate literal ``result = #fn{terms : condition}``."""

    result: Variable
    function: Union[AggFn, SketchRef]
    terms: Tuple[Term, ...]
    condition: Tuple[Union[Literal, Comparison], ...]


BodyLiteral = Union[Literal, SketchedNegation, Comparison, Aggregate]
"""Any body element."""


@dataclass(frozen=True)
class Rule:
    """Normal rule, fact (empty body) or integrity constraint (no head)."""

    head: Optional[Atom]
    body: Tuple[BodyLiteral, ...] = ()
    line: int = field(default=0, compare=False)

    @property
    def is_constraint(self) -> bool:
        """True for headless rules."""
        return self.head is None


@dataclass(frozen=True)
class ChoiceBlock:
    """Exactly-one choice ``1 { a1 ; ... ; an } 1`` over ground atoms.

    ``domain`` names the fact predicate enumerating the candidates when the block is printed
    in the conditional form ``1 { d(X) : domain(X) } 1``.
    """

    atoms: Tuple[Atom, ...]
    label: str = ""
    domain: Optional[str] = None


@dataclass(frozen=True)
class SketchVar:
    """One decision point of a sketch."""

    id: str
    """Declared name (``q`` for ``?q``) or auto-name such as ``?not@3.0``."""
    kind: SketchKind
    """Kind of the sketched construct."""
    domain: Tuple[str, ...]
    """Candidate values in declaration order."""
    arity: int = 0
    """Arity of the candidates (predicate kind only)."""
    preference: Mapping[str, int] = field(default_factory=dict, compare=False)
    """Explicit preference values; unlisted candidates keep their default score."""

    @property
    def label(self) -> str:
        """Surface form (``?q`` or the auto-name)."""
        return f"?{self.id}" if self.kind is SketchKind.PREDICATE else self.id


@dataclass(frozen=True)
class ExampleSet:
    """Positive and negative examples; indices are 0-based, positives first."""

    positives: Tuple[FrozenSet[Atom], ...] = ()
    negatives: Tuple[FrozenSet[Atom], ...] = ()

    def __len__(self) -> int:
        """Number of examples."""
        return len(self.positives) + len(self.negatives)

    def indexed(self) -> Iterator[Tuple[int, bool, FrozenSet[Atom]]]:
        """Yield ``(index, is_positive, atoms)``."""
        for index, atoms in enumerate(self.positives):
            yield index, True, atoms
        for offset, atoms in enumerate(self.negatives):
            yield len(self.positives) + offset, False, atoms

    def predicates(self) -> Set[str]:
        """Predicates occurring in any example."""
        return {atom.predicate for _, _, atoms in self.indexed() for atom in atoms}


@dataclass(frozen=True)
class SketchProgram:
    """Parsed sketch: rules, declared predicate sketches, facts, examples, preferences."""

    rules: Tuple[Rule, ...] = ()
    declarations: Tuple[SketchVar, ...] = ()
    facts: FrozenSet[Atom] = frozenset()
    examples: ExampleSet = ExampleSet()
    preferences: Mapping[str, Mapping[str, int]] = field(default_factory=dict)
    """Keys are ``?q``, an occurrence id, or a bare operator token."""

    def declaration(self, name: str) -> Optional[SketchVar]:
        """Look up a declared predicate sketch by name."""
        for var in self.declarations:
            if var.id == name:
                return var
        return None


@dataclass(frozen=True)
class AspProgram:
    """Sketch-free program: rules, ground choice blocks and ``#show`` signatures."""

    rules: Tuple[Rule, ...] = ()
    choices: Tuple[ChoiceBlock, ...] = ()
    shows: Tuple[Tuple[str, int], ...] = ()


def term_variables(term: Term) -> Iterator[Variable]:
    """Yield the variables of a term from left to right."""
    if isinstance(term, Variable):
        yield term
    elif isinstance(term, BinOp):
        yield from term_variables(term.left)
        yield from term_variables(term.right)


def atom_variables(atom: AnyAtom) -> Iterator[Variable]:
    """Yield the variables of an atom from left to right."""
    for arg in atom.args:
        yield from term_variables(arg)


def literal_variables(literal: BodyLiteral) -> Iterator[Variable]:
    """Yield every variable of a body literal, aggregate-local ones included."""
    if isinstance(literal, (Literal, SketchedNegation)):
        yield from atom_variables(literal.atom)
    elif isinstance(literal, Comparison):
        yield from term_variables(literal.lhs)
        yield from term_variables(literal.rhs)
    else:
        yield literal.result
        for term in literal.terms:
            yield from term_variables(term)
        for element in literal.condition:
            yield from literal_variables(element)


def rule_variables(rule: Rule) -> Set[str]:
    """Names of all variables of a rule."""
    names = {var.name for var in atom_variables(rule.head)} if rule.head else set()
    for literal in rule.body:
        names.update(var.name for var in literal_variables(literal))
    return names


def global_variables(rule: Rule) -> Set[str]:
    """Variables of a rule outside aggregate elements: head, plain body literals and aggregate results.

    Variables occurring only inside aggregate elements are local to their aggregate, even when a
    sibling aggregate reuses the name.
    """
    names = {var.name for var in atom_variables(rule.head)} if rule.head else set()
    for literal in rule.body:
        if isinstance(literal, Aggregate):
            names.add(literal.result.name)
        else:
            names.update(var.name for var in literal_variables(literal))
    return names


def is_ground(term: Term) -> bool:
    """True when the term has no variables."""
    return next(term_variables(term), None) is None


def body_atoms(literal: BodyLiteral) -> Iterator[AnyAtom]:
    """Yield the atoms a body literal mentions, aggregate conditions included."""
    if isinstance(literal, (Literal, SketchedNegation)):
        yield literal.atom
    elif isinstance(literal, Aggregate):
        for element in literal.condition:
            if isinstance(element, Literal):
                yield element.atom
