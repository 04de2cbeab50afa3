"""Substitutions: total assignments of candidates to sketched variables."""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..exceptions import SkaspError
from ..lang.printer import format_rule
from ..lang.substitute import substitute_rules
from ..lang.types import Rule, SketchProgram, SketchVar
from ..rewriter.naming import Naming

Assignment = Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class Substitution:
    """Chosen candidate per sketched variable, in variable order.

    Two substitutions are equal when their assignments are; the preference vector is carried along
    for filtering and reporting.
    """

    assignment: Assignment
    vector: Tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str], sketch_vars: Sequence[SketchVar]) -> "Substitution":
        """Build a substitution ordered like ``sketch_vars``.

        :raises ValueError: When the mapping is not total or picks a value outside a domain.
        """
        check_total(mapping, sketch_vars)
        return cls(tuple((var.id, mapping[var.id]) for var in sketch_vars))

    def __getitem__(self, var_id: str) -> str:
        """Candidate chosen for a variable."""
        for name, candidate in self.assignment:
            if name == var_id:
                return candidate
        raise KeyError(var_id)

    def as_dict(self) -> Dict[str, str]:
        """Mapping from variable id to candidate."""
        return dict(self.assignment)

    def __str__(self) -> str:
        """``?q=reached, ?not@3.0=neg`` style rendering."""
        return ", ".join(f"{_label(name)}={candidate}" for name, candidate in self.assignment)


def _label(var_id: str) -> str:
    return var_id if "@" in var_id else f"?{var_id}"


def check_total(mapping: Mapping[str, str], sketch_vars: Sequence[SketchVar]) -> None:
    """Check that ``mapping`` assigns every variable a candidate of its domain.

    :raises ValueError: Otherwise.
    """
    for var in sketch_vars:
        if var.id not in mapping:
            raise ValueError(f"substitution does not assign {var.label}")
        if mapping[var.id] not in var.domain:
            raise ValueError(f"{mapping[var.id]} is not a candidate of {var.label}")


def substitution_key(substitution: Substitution, sketch_vars: Sequence[SketchVar]) -> Tuple[int, ...]:
    """Lexicographic order by domain declaration order."""
    chosen = substitution.as_dict()
    return tuple(var.domain.index(chosen[var.id]) for var in sketch_vars)


def extract_substitutions(
    answer_sets: Iterable[Iterable], sketch_vars: Sequence[SketchVar], naming: Naming
) -> List[Substitution]:
    """Project answer sets onto their decision atoms.

    :param answer_sets: Models as collections of ground atoms.
    :param sketch_vars: Variables of the sketch, in order.
    :param naming: The naming used to rewrite the sketch.
    :returns: Distinct substitutions in lexicographic domain order.
    :raises SkaspError: When an answer set lacks a decision for some variable.
    """
    found = set()
    for model in answer_sets:
        decisions: Dict[str, List[str]] = {}
        for atom in model:
            if atom.predicate in naming.by_decision and len(atom.args) == 1:
                entry = naming.by_decision[atom.predicate]
                decisions.setdefault(entry.var.id, []).append(entry.candidate(str(atom.args[0])))
        mapping = {}
        for var in sketch_vars:
            chosen = decisions.get(var.id, [])
            if len(chosen) != 1:
                raise SkaspError(f"answer set has {len(chosen)} decisions for {var.label}")
            mapping[var.id] = chosen[0]
        found.add(Substitution.from_mapping(mapping, sketch_vars))
    return sorted(found, key=lambda substitution: substitution_key(substitution, sketch_vars))


def instantiate(program: SketchProgram, substitution: Substitution) -> List[Rule]:
    """Sketch-free rules of the program completed by ``substitution``."""
    return substitute_rules(program, substitution.as_dict())


def apply_substitution(program: SketchProgram, substitution: Substitution, sketch_vars: Sequence[SketchVar]) -> str:
    """Completed program text, one rule per line.

    :raises ValueError: When the substitution is not total.
    """
    check_total(substitution.as_dict(), sketch_vars)
    return "\n".join(format_rule(rule) for rule in instantiate(program, substitution)) + "\n"
