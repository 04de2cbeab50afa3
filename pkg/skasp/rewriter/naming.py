"""Names of the predicates, constants and variables the rewriter generates."""
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Set, Tuple

from ..exceptions import RewriteError
from ..lang.types import Aggregate, Atom, Literal, SketchedNegation, SketchKind, SketchProgram, SketchVar

EXAMPLES = "examples"
POSITIVE = "positive"
NEGATIVE = "negative"
NEGSAT = "negsat"
RESERVED = frozenset({EXAMPLES, POSITIVE, NEGATIVE, NEGSAT})
"""Fixed predicates of every meta-program."""
RESERVED_PREFIXES = ("decision_", "reified_", "guard_")
"""Prefixes of generated predicates."""


def occurrence_slug(var_id: str, kind: SketchKind) -> str:
    """Identifier fragment of a sketched variable.

    >>> occurrence_slug("?not@3.0", SketchKind.NEGATION)
    'not_3_0'
    >>> occurrence_slug("q", SketchKind.PREDICATE)
    'q'
    """
    if kind is SketchKind.PREDICATE:
        return var_id
    position = var_id.split("@", 1)[1].replace(".", "_")
    return f"{kind.slug}_{position}"


@dataclass(frozen=True)
class VarNaming:
    """Generated names for one sketched variable."""

    var: SketchVar
    slug: str
    decision: str
    reified: str
    choice_domain: Optional[str]
    """Fact predicate enumerating the candidates (predicate sketches only)."""
    constants: Mapping[str, str] = field(default_factory=dict)
    """Candidate to meta-level constant."""

    @property
    def decision_variable(self) -> str:
        """Variable carrying the decision in host rules."""
        return f"D_{self.slug}"

    @property
    def output_variable(self) -> str:
        """Variable carrying the result of a sketched arithmetic operator."""
        return f"Z_{self.slug}"

    def guard(self, position: int) -> str:
        """Guard predicate of the ``position``-th wrapped variable."""
        return f"guard_{self.slug}_{position}"

    def candidate(self, constant: str) -> str:
        """Candidate encoded by a meta-level constant."""
        for candidate, name in self.constants.items():
            if name == constant:
                return candidate
        raise KeyError(constant)


class Naming:
    """Injective naming of all sketched variables of a problem."""

    def __init__(self, entries: Iterable[VarNaming]) -> None:
        """Init Naming."""
        self.by_id: Dict[str, VarNaming] = {}
        self.by_decision: Dict[str, VarNaming] = {}
        for entry in entries:
            if entry.decision in self.by_decision:
                raise RewriteError(
                    f"sketched variables {self.by_decision[entry.decision].var.label} and {entry.var.label} "
                    f"share the generated name {entry.decision}"
                )
            self.by_id[entry.var.id] = entry
            self.by_decision[entry.decision] = entry

    def __getitem__(self, var_id: str) -> VarNaming:
        """Names of a variable by id."""
        return self.by_id[var_id]

    def __iter__(self):
        """Names in variable order."""
        return iter(self.by_id.values())

    def __len__(self) -> int:
        """Number of named variables."""
        return len(self.by_id)

    def generated_predicates(self) -> Set[str]:
        """Predicates introduced for the variables, guards excluded."""
        names = set(RESERVED)
        for entry in self:
            names.update({entry.decision, entry.reified})
            if entry.choice_domain:
                names.add(entry.choice_domain)
        return names


def _var_naming(var: SketchVar) -> VarNaming:
    slug = occurrence_slug(var.id, var.kind)
    if var.kind is SketchKind.PREDICATE:
        constants = {candidate: f"c_{candidate}" for candidate in var.domain}
        choice_domain: Optional[str] = f"reified_{slug}_choice"
    else:
        constants = {candidate: candidate for candidate in var.domain}
        choice_domain = None
    return VarNaming(var, slug, f"decision_{slug}", f"reified_{slug}", choice_domain, constants)


def user_predicates(program: SketchProgram) -> Set[str]:
    """Predicates a sketch mentions: rule atoms, candidates, facts and examples."""
    names: Set[str] = {atom.predicate for atom in program.facts} | program.examples.predicates()
    for var in program.declarations:
        names.update(var.domain)
    for rule in program.rules:
        if rule.head is not None:
            names.add(rule.head.predicate)
        for literal in rule.body:
            elements: Tuple = literal.condition if isinstance(literal, Aggregate) else (literal,)
            for element in elements:
                if isinstance(element, (Literal, SketchedNegation)) and isinstance(element.atom, Atom):
                    names.add(element.atom.predicate)
    return names


def make_naming(program: SketchProgram, sketch_vars: Iterable[SketchVar]) -> Naming:
    """Name the generated predicates of a sketch.

    :raises RewriteError: When a user predicate uses a reserved name or two variables share one.
    """
    for name in sorted(user_predicates(program)):
        if name in RESERVED or name.startswith(RESERVED_PREFIXES):
            raise RewriteError(f"predicate {name} collides with a generated name")
    return Naming(_var_naming(var) for var in sketch_vars)
