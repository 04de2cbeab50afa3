"""Sketch variable inventory: numbering of operator occurrences and enumeration."""
from dataclasses import replace
from typing import Dict, Iterator, List, Mapping, Tuple, Union

from .types import (
    OPERATOR_DOMAINS,
    Aggregate,
    BinOp,
    BodyLiteral,
    Comparison,
    Literal,
    Rule,
    SketchedAtom,
    SketchedNegation,
    SketchKind,
    SketchProgram,
    SketchRef,
    SketchVar,
    Term,
)

SketchOccurrence = Union[SketchedAtom, SketchRef]
"""A sketched atom or an operator reference."""


def number_rule(rule: Rule, index: int) -> Rule:
    """Give every operator sketch of ``rule`` its auto-name ``<token>@<index>.<occurrence>``.

    Occurrences are counted per kind, visiting operands before their operator.
    """
    counters: Dict[SketchKind, int] = {}

    def fresh(kind: SketchKind) -> SketchRef:
        occurrence = counters.get(kind, 0)
        counters[kind] = occurrence + 1
        return SketchRef(kind, f"{kind.token}@{index}.{occurrence}")

    def term(node: Term) -> Term:
        if isinstance(node, BinOp):
            left, right = term(node.left), term(node.right)
            op = fresh(SketchKind.ARITHMETIC) if isinstance(node.op, SketchRef) else node.op
            return BinOp(left, op, right)
        return node

    def literal(node: BodyLiteral) -> BodyLiteral:
        if isinstance(node, SketchedNegation):
            return replace(node, ref=fresh(SketchKind.NEGATION))
        if isinstance(node, Comparison):
            lhs, rhs = term(node.lhs), term(node.rhs)
            op = fresh(SketchKind.COMPARISON) if isinstance(node.op, SketchRef) else node.op
            return Comparison(lhs, op, rhs)
        if isinstance(node, Aggregate) and isinstance(node.function, SketchRef):
            return replace(node, function=fresh(SketchKind.AGGREGATE))
        return node

    return replace(rule, body=tuple(literal(node) for node in rule.body))


def _term_refs(node: Term) -> Iterator[SketchRef]:
    if isinstance(node, BinOp):
        yield from _term_refs(node.left)
        yield from _term_refs(node.right)
        if isinstance(node.op, SketchRef):
            yield node.op


def literal_occurrences(node: BodyLiteral) -> Iterator[SketchOccurrence]:
    """Yield the sketched atoms and operator references of a literal, operands first."""
    if isinstance(node, Literal):
        if isinstance(node.atom, SketchedAtom):
            yield node.atom
    elif isinstance(node, SketchedNegation):
        if isinstance(node.atom, SketchedAtom):
            yield node.atom
        yield node.ref
    elif isinstance(node, Comparison):
        yield from _term_refs(node.lhs)
        yield from _term_refs(node.rhs)
        if isinstance(node.op, SketchRef):
            yield node.op
    elif isinstance(node.function, SketchRef):
        yield node.function


def rule_occurrences(rule: Rule) -> Iterator[SketchOccurrence]:
    """Yield the sketch occurrences of a rule from left to right."""
    for node in rule.body:
        yield from literal_occurrences(node)


def operator_preference(preferences: Mapping[str, Mapping[str, int]], ref: SketchRef) -> Dict[str, int]:
    """Explicit preference of an operator occurrence: kind-wide entry overlaid by the occurrence entry."""
    merged = dict(preferences.get(ref.kind.token, {}))
    merged.update(preferences.get(ref.id, {}))
    return merged


def enumerate_sketch_vars(program: SketchProgram) -> Tuple[SketchVar, ...]:
    """List the decision points of a sketch.

    Declared predicate sketches appear once, at their first occurrence; each operator occurrence is a
    separate variable. Declared but unused predicate sketches come last, in declaration order.

    :param program: A parsed sketch.
    """
    found: List[SketchVar] = []
    seen = set()
    for rule in program.rules:
        for occurrence in rule_occurrences(rule):
            if isinstance(occurrence, SketchedAtom):
                if occurrence.name in seen:
                    continue
                declared = program.declaration(occurrence.name)
                if declared is None:
                    continue
                seen.add(occurrence.name)
                found.append(declared)
            elif occurrence.id not in seen:
                seen.add(occurrence.id)
                found.append(
                    SketchVar(
                        id=occurrence.id,
                        kind=occurrence.kind,
                        domain=OPERATOR_DOMAINS[occurrence.kind],
                        preference=operator_preference(program.preferences, occurrence),
                    )
                )
    found.extend(var for var in program.declarations if var.id not in seen)
    return tuple(found)
