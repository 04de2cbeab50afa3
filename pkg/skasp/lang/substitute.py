"""Resolution of sketched variables to chosen candidates."""
from dataclasses import replace
from typing import List, Mapping, Optional

from .types import (
    AggFn,
    AnyAtom,
    ArithOp,
    Atom,
    BinOp,
    BodyLiteral,
    CmpOp,
    Comparison,
    Literal,
    Rule,
    SketchedAtom,
    SketchedNegation,
    SketchProgram,
    SketchRef,
    Term,
)


class _Substituter:
    """Applies a (possibly partial) assignment ``var id -> candidate``."""

    def __init__(self, assignment: Mapping[str, str]) -> None:
        self.assignment = assignment

    def atom(self, atom: AnyAtom) -> AnyAtom:
        if isinstance(atom, SketchedAtom) and atom.name in self.assignment:
            return Atom(self.assignment[atom.name], atom.args)
        return atom

    def term(self, term: Term) -> Term:
        if not isinstance(term, BinOp):
            return term
        op = term.op
        if isinstance(op, SketchRef) and op.id in self.assignment:
            op = ArithOp(self.assignment[op.id])
        return BinOp(self.term(term.left), op, self.term(term.right))

    def literal(self, literal: BodyLiteral) -> Optional[BodyLiteral]:
        if isinstance(literal, Literal):
            return replace(literal, atom=self.atom(literal.atom))
        if isinstance(literal, SketchedNegation):
            atom = self.atom(literal.atom)
            choice = self.assignment.get(literal.ref.id)
            if choice is None:
                return replace(literal, atom=atom)
            return Literal(atom, negated=choice == "neg")
        if isinstance(literal, Comparison):
            op = literal.op
            if isinstance(op, SketchRef) and op.id in self.assignment:
                op = CmpOp(self.assignment[op.id])
                if op is CmpOp.TOP:
                    return None
            return Comparison(self.term(literal.lhs), op, self.term(literal.rhs))
        function = literal.function
        if isinstance(function, SketchRef) and function.id in self.assignment:
            return replace(literal, function=AggFn(self.assignment[function.id]))
        return literal

    def rule(self, rule: Rule) -> Rule:
        body: List[BodyLiteral] = []
        for literal in rule.body:
            resolved = self.literal(literal)
            if resolved is not None:
                body.append(resolved)
        return replace(rule, body=tuple(body))


def substitute_rules(program: SketchProgram, assignment: Mapping[str, str]) -> List[Rule]:
    """Rules of ``program`` with the assigned sketched variables resolved."""
    substituter = _Substituter(assignment)
    return [substituter.rule(rule) for rule in program.rules]


def substitute(program: SketchProgram, assignment: Mapping[str, str]) -> SketchProgram:
    """Resolve the sketched variables listed in ``assignment`` and keep the others sketched.

    A chosen ``top`` comparison removes its literal, ``pos`` unwraps a sketched negation and ``neg``
    turns it into a default negation. Unlisted variables keep their ids.

    :param program: A parsed sketch.
    :param assignment: Variable id (``q`` for ``?q``, or an auto-name) to candidate.
    """
    return replace(
        program,
        rules=tuple(substitute_rules(program, assignment)),
        declarations=tuple(var for var in program.declarations if var.id not in assignment),
        preferences={
            key: values
            for key, values in program.preferences.items()
            if key not in assignment and key[1:] not in assignment
        },
    )

