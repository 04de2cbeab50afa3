"""Well-formedness checks on parsed sketches."""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Set, Tuple

from .types import (
    Aggregate,
    AnyAtom,
    Atom,
    Comparison,
    Literal,
    Rule,
    SketchedNegation,
    SketchKind,
    SketchProgram,
    atom_variables,
    literal_variables,
    term_variables,
)

UNSAFE_VARIABLE = "unsafe variable"
NON_GROUND_EXAMPLE = "non-ground example atom"
NON_GROUND_FACT = "non-ground fact"
SHARED_PREDICATE = "predicate shared between facts and examples"
ARITY_MISMATCH = "arity mismatch"
NEGATED_SKETCHED_NEGATION = "sketched negation over negated atom"


@dataclass(frozen=True)
class Violation:
    """One problem found by :func:`validate`."""

    category: str
    message: str
    line: int = 0

    def __str__(self) -> str:
        """Category and message, with the line when known."""
        location = f"line {self.line}: " if self.line else ""
        return f"{location}{self.category}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    """Violations of a sketch; empty means valid."""

    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        """True when there are no violations."""
        return not self.violations

    def categories(self) -> Set[str]:
        """Distinct violation categories."""
        return {violation.category for violation in self.violations}


def _ordered(names: Iterable[str]) -> List[str]:
    return list(dict.fromkeys(names))


def unsafe_variables(rule: Rule) -> List[str]:
    """Variables of ``rule`` that no positive atom (or aggregate result) binds, in order of appearance."""
    bound: Set[str] = set()
    for literal in rule.body:
        if isinstance(literal, Literal) and not literal.negated:
            bound.update(var.name for var in atom_variables(literal.atom))
        elif isinstance(literal, Aggregate):
            bound.add(literal.result.name)
    needed: List[str] = []
    if rule.head is not None:
        needed.extend(var.name for var in atom_variables(rule.head))
    for literal in rule.body:
        if isinstance(literal, Aggregate):
            local = set(bound)
            for element in literal.condition:
                if isinstance(element, Literal):
                    local.update(var.name for var in atom_variables(element.atom))
            used = [var.name for term in literal.terms for var in term_variables(term)]
            used += [var.name for element in literal.condition for var in literal_variables(element)]
            needed.extend(name for name in used if name not in local)
        elif not (isinstance(literal, Literal) and not literal.negated):
            needed.extend(var.name for var in literal_variables(literal))
    return [name for name in _ordered(needed) if name not in bound]


def _rule_atoms(rule: Rule) -> Iterable[AnyAtom]:
    if rule.head is not None:
        yield rule.head
    for literal in rule.body:
        if isinstance(literal, (Literal, SketchedNegation)):
            yield literal.atom
        elif isinstance(literal, Aggregate):
            for element in literal.condition:
                if not isinstance(element, Comparison):
                    yield element.atom


def _arities(program: SketchProgram) -> Dict[str, Set[int]]:
    arities: Dict[str, Set[int]] = {}
    atoms: List[Atom] = list(program.facts)
    atoms += [atom for _, _, example in program.examples.indexed() for atom in example]
    atoms += [atom for rule in program.rules for atom in _rule_atoms(rule) if isinstance(atom, Atom)]
    for atom in atoms:
        arities.setdefault(atom.predicate, set()).add(atom.arity)
    return arities


def validate(program: SketchProgram) -> ValidationReport:
    """Check safety, arities, example groundedness and fact/example disjointness.

    Violations are returned as data; stratification is checked by :mod:`skasp.dependency`.

    :param program: A parsed sketch.
    """
    violations: List[Violation] = []
    for rule in program.rules:
        for name in unsafe_variables(rule):
            violations.append(Violation(UNSAFE_VARIABLE, f"variable {name} is not bound by a positive atom", rule.line))
        for literal in rule.body:
            if isinstance(literal, SketchedNegation) and literal.over_negation:
                violations.append(
                    Violation(NEGATED_SKETCHED_NEGATION, "?not must wrap a positive atom", rule.line)
                )
    for index, is_positive, atoms in program.examples.indexed():
        kind = "positive" if is_positive else "negative"
        for atom in sorted(atoms, key=repr):
            if next(atom_variables(atom), None) is not None:
                violations.append(Violation(NON_GROUND_EXAMPLE, f"{atom.predicate}/{atom.arity} in {kind} example {index}"))
    for atom in sorted(program.facts, key=repr):
        if next(atom_variables(atom), None) is not None:
            violations.append(Violation(NON_GROUND_FACT, f"{atom.predicate}/{atom.arity}"))
    shared = {atom.predicate for atom in program.facts} & program.examples.predicates()
    for name in sorted(shared):
        violations.append(Violation(SHARED_PREDICATE, name))
    arities = _arities(program)
    for var in program.declarations:
        if var.kind is not SketchKind.PREDICATE:
            continue
        for candidate in var.domain:
            other = sorted(arities.get(candidate, set()) - {var.arity})
            if other:
                violations.append(
                    Violation(
                        ARITY_MISMATCH,
                        f"candidate {candidate} of {var.label} has arity {var.arity} but is used with arity {other[0]}",
                    )
                )
    return ValidationReport(tuple(violations))
