"""Stratified evaluation of ground programs and enumeration of their answer sets.

A ground program here has exactly-one decision blocks and a stratified remainder, so every choice
of decision atoms has a unique candidate model: an answer set when it violates no constraint.
"""
import itertools
import logging
from dataclasses import dataclass
from math import prod
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .grounder import GroundAggregate, GroundProgram, GroundRule, aggregate_value
from .terms import GroundAtom, value_key

logger = logging.getLogger("skasp.asp.evaluator")

Interpretation = FrozenSet[GroundAtom]


@dataclass(frozen=True)
class ModelResult:
    """The model for one decision assignment and the ground constraints it violates."""

    model: Interpretation
    violations: Tuple[GroundRule, ...] = ()

    @property
    def consistent(self) -> bool:
        """True when the model is an answer set."""
        return not self.violations


@dataclass
class SearchStats:
    """Counters of an answer-set enumeration."""

    assignments: int = 0
    """Size of the product of the decision blocks."""
    evaluated: int = 0
    """Complete assignments whose model was computed."""
    pruned: int = 0
    """Assignments excluded by a constraint violated under a partial assignment."""
    answer_sets: int = 0

    @property
    def covered(self) -> int:
        """Assignments accounted for; equals ``assignments`` after a complete enumeration."""
        return self.evaluated + self.pruned


def _aggregate_holds(aggregate: GroundAggregate, true: Set[GroundAtom]) -> bool:
    tuples = {
        element.terms
        for element in aggregate.elements
        if all(atom in true for atom in element.positive) and not any(atom in true for atom in element.negative)
    }
    value = aggregate_value(aggregate.function, tuples)
    return value is not None and value_key(value) == value_key(aggregate.value)


def body_holds(rule: GroundRule, true: Set[GroundAtom]) -> bool:
    """True when the body of a ground rule holds in ``true``."""
    return (
        all(atom in true for atom in rule.positive)
        and not any(atom in true for atom in rule.negative)
        and all(_aggregate_holds(aggregate, true) for aggregate in rule.aggregates)
    )


def _derive(rules: Iterable[GroundRule], true: Set[GroundAtom]) -> None:
    """Extend ``true`` with the heads derivable from stratum-ordered rules."""
    for _, group in itertools.groupby(rules, key=lambda rule: rule.stratum):
        pending = list(group)
        changed = True
        while changed:
            changed = False
            for rule in pending:
                if rule.head not in true and body_holds(rule, true):
                    true.add(rule.head)
                    changed = True


def _check_decision(ground: GroundProgram, chosen: Set[GroundAtom]) -> None:
    for block in ground.blocks:
        picked = [atom for atom in block.atoms if atom in chosen]
        if len(picked) != 1:
            raise ValueError(f"decision must pick exactly one atom of block {block.label}, got {len(picked)}")


def stratified_model(ground: GroundProgram, decision: Iterable[GroundAtom]) -> ModelResult:
    """Compute the unique model of ``ground`` for a decision assignment, stratum by stratum.

    :param ground: A ground program.
    :param decision: One atom per decision block.
    :raises ValueError: When the decision does not pick exactly one atom per block.
    """
    chosen = set(decision)
    _check_decision(ground, chosen)
    true = set(chosen)
    _derive(ground.rules, true)
    violations = tuple(constraint for constraint in ground.constraints if body_holds(constraint, true))
    return ModelResult(frozenset(ground.facts | true), violations)


_Table = Dict[Tuple[int, ...], Dict[Tuple[GroundAtom, ...], List[GroundRule]]]


class _Level:
    """Rules and constraints that become decided once a given block is assigned.

    They are keyed by the decision atoms their positive bodies mention, so only rules whose
    decision atoms are all chosen are looked at.
    """

    def __init__(self) -> None:
        self.rules: _Table = {}
        self.constraints: _Table = {}

    def add(self, rule: GroundRule, block_of: Dict[GroundAtom, int]) -> None:
        mentioned: Dict[int, GroundAtom] = {}
        for atom in rule.positive:
            block = block_of.get(atom)
            if block is None:
                continue
            if mentioned.setdefault(block, atom) != atom:
                return
        blocks = tuple(sorted(mentioned))
        table = self.constraints if rule.head is None else self.rules
        table.setdefault(blocks, {}).setdefault(tuple(mentioned[block] for block in blocks), []).append(rule)

    @staticmethod
    def _relevant(table: _Table, chosen: Sequence[GroundAtom]) -> List[GroundRule]:
        found: List[GroundRule] = []
        for blocks, by_atoms in table.items():
            found.extend(by_atoms.get(tuple(chosen[block] for block in blocks), ()))
        return found

    def derive(self, chosen: Sequence[GroundAtom], true: Set[GroundAtom]) -> None:
        _derive(sorted(self._relevant(self.rules, chosen), key=lambda rule: rule.stratum), true)

    def violated(self, chosen: Sequence[GroundAtom], true: Set[GroundAtom]) -> bool:
        return any(body_holds(constraint, true) for constraint in self._relevant(self.constraints, chosen))


class AnswerSetSearch:
    """Depth-first enumeration of decision assignments in lexicographic block order.

    A rule is evaluated as soon as every block its atoms depend on is assigned, so a violated
    constraint prunes all completions of the current partial assignment.
    """

    def __init__(self, ground: GroundProgram) -> None:
        """Init AnswerSetSearch."""
        self.ground = ground
        self.blocks = ground.blocks
        block_of = {atom: index for index, block in enumerate(self.blocks) for atom in block.atoms}
        depends = self._dependencies(block_of)
        self.levels = [_Level() for _ in range(len(self.blocks) + 1)]
        for rule in itertools.chain(ground.rules, ground.constraints):
            level = max((depends.get(atom, -1) for atom in rule.atoms()), default=-1)
            self.levels[level + 1].add(rule, block_of)
        self.stats = SearchStats(assignments=prod(len(block.atoms) for block in self.blocks))

    def _dependencies(self, block_of: Dict[GroundAtom, int]) -> Dict[GroundAtom, int]:
        """Last block each derived atom depends on."""
        depends = dict(block_of)
        changed = True
        while changed:
            changed = False
            for rule in self.ground.rules:
                level = max((depends.get(atom, -1) for atom in rule.atoms()), default=-1)
                if level > depends.get(rule.head, -1):
                    depends[rule.head] = level
                    changed = True
        return depends

    def _remaining(self, depth: int) -> int:
        return prod(len(block.atoms) for block in self.blocks[depth:])

    def __iter__(self) -> Iterator[Interpretation]:
        """Answer sets in lexicographic order of their decision atoms."""
        true: Set[GroundAtom] = set()
        root = self.levels[0]
        root.derive((), true)
        if root.violated((), true):
            self.stats.pruned += self._remaining(0)
            return
        yield from self._search(0, [], true)

    def _search(self, depth: int, chosen: List[GroundAtom], true: Set[GroundAtom]) -> Iterator[Interpretation]:
        if depth == len(self.blocks):
            self.stats.evaluated += 1
            self.stats.answer_sets += 1
            yield frozenset(self.ground.facts | true)
            return
        level = self.levels[depth + 1]
        for atom in self.blocks[depth].atoms:
            branch = chosen + [atom]
            extended = true | {atom}
            level.derive(branch, extended)
            if level.violated(branch, extended):
                remaining = self._remaining(depth + 1)
                if depth + 1 == len(self.blocks):
                    self.stats.evaluated += 1
                else:
                    self.stats.pruned += remaining
                continue
            yield from self._search(depth + 1, branch, extended)


def enumerate_answer_sets(
    ground: GroundProgram, limit: Optional[int] = None, stats: Optional[SearchStats] = None
) -> List[Interpretation]:
    """All answer sets of a ground program, in lexicographic order of the decision blocks.

    :param ground: A ground program.
    :param limit: Stop after this many answer sets.
    :param stats: Receives the search counters.
    """
    search = AnswerSetSearch(ground)
    models = list(itertools.islice(search, limit))
    if stats is not None:
        stats.assignments = search.stats.assignments
        stats.evaluated = search.stats.evaluated
        stats.pruned = search.stats.pruned
        stats.answer_sets = search.stats.answer_sets
    logger.debug(
        "enumerated %s answer sets over %s assignments (%s evaluated, %s pruned)",
        len(models),
        search.stats.assignments,
        search.stats.evaluated,
        search.stats.pruned,
    )
    return models


def decision_atoms(model: Interpretation, ground: GroundProgram) -> Tuple[GroundAtom, ...]:
    """Decision atoms of a model, in block order."""
    return tuple(atom for block in ground.blocks for atom in block.atoms if atom in model)
