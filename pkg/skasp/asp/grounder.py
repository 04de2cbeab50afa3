"""Bottom-up grounding of sketch-free, stratified programs.

Predicates that do not depend on a choice are evaluated exactly while grounding; only the rules
over choice-dependent predicates are kept, with their remaining conditions, for the evaluator.
"""
import logging
from dataclasses import dataclass, replace
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..dependency import CONSTRAINT_NODE, check_stratified, program_graph
from ..exceptions import GroundingError, NonStratifiedError
from ..lang.printer import format_rule
from ..lang.types import (
    AggFn,
    Aggregate,
    AspProgram,
    Atom,
    BodyLiteral,
    CmpOp,
    Comparison,
    Literal,
    Rule,
    Variable,
    global_variables,
    literal_variables,
    term_variables,
)
from .terms import GroundAtom, Value, checked_sum, compare, evaluate, value_key

Binding = Dict[str, Value]


@dataclass(frozen=True)
class AggregateElement:
    """A ground aggregate element: a tuple counted when its condition holds."""

    terms: Tuple[Value, ...]
    positive: Tuple[GroundAtom, ...] = ()
    negative: Tuple[GroundAtom, ...] = ()


@dataclass(frozen=True)
class GroundAggregate:
    """Condition that an aggregate over choice-dependent atoms takes ``value``."""

    function: AggFn
    value: Value
    elements: Tuple[AggregateElement, ...]


@dataclass(frozen=True)
class GroundRule:
    """A ground rule or constraint; atoms already decided while grounding are left out."""

    head: Optional[GroundAtom]
    positive: Tuple[GroundAtom, ...] = ()
    negative: Tuple[GroundAtom, ...] = ()
    aggregates: Tuple[GroundAggregate, ...] = ()
    stratum: int = 0

    def atoms(self) -> Iterator[GroundAtom]:
        """Every body atom, aggregate conditions included."""
        yield from self.positive
        yield from self.negative
        for aggregate in self.aggregates:
            for element in aggregate.elements:
                yield from element.positive
                yield from element.negative


@dataclass(frozen=True)
class DecisionBlock:
    """Ground atoms of which exactly one is chosen."""

    label: str
    atoms: Tuple[GroundAtom, ...]


@dataclass(frozen=True)
class GroundProgram:
    """A grounded program."""

    facts: FrozenSet[GroundAtom]
    """Atoms true in every model."""
    rules: Tuple[GroundRule, ...]
    """Rules over choice-dependent atoms, ordered by stratum."""
    constraints: Tuple[GroundRule, ...]
    blocks: Tuple[DecisionBlock, ...]
    shows: Tuple[Tuple[str, int], ...] = ()


def aggregate_value(function: AggFn, tuples: Set[Tuple[Value, ...]]) -> Optional[Value]:
    """Value of an aggregate over a set of tuples; ``None`` for the min or max of nothing.

    Sums add the integer first elements; min and max use the term order.

    >>> aggregate_value(AggFn.SUM, {(1, "a"), (1, "b"), (3, "a")})
    5
    >>> aggregate_value(AggFn.MAX, set()) is None
    True
    """
    if function is AggFn.COUNT:
        return len(tuples)
    if function is AggFn.SUM:
        return checked_sum(values[0] for values in tuples if values and isinstance(values[0], int))
    firsts = [values[0] for values in tuples if values]
    if not firsts:
        return None
    pick = min if function is AggFn.MIN else max
    return pick(firsts, key=value_key)


def _possible_values(function: AggFn, certain: Set[Tuple], uncertain: Set[Tuple]) -> List[Value]:
    if function is AggFn.COUNT:
        return list(range(len(certain), len(certain | uncertain) + 1))
    if function is AggFn.SUM:
        sums = {aggregate_value(AggFn.SUM, certain)}
        for values in uncertain - certain:
            if values and isinstance(values[0], int):
                sums |= {total + values[0] for total in sums}
        return sorted(sums)
    firsts = {values[0] for values in certain | uncertain if values}
    return sorted(firsts, key=value_key)


class _AtomStore:
    """Ground atoms by predicate, with lazily built indexes on bound argument positions."""

    def __init__(self) -> None:
        self.atoms: Dict[str, Dict[GroundAtom, None]] = {}
        self.indexes: Dict[Tuple[str, Tuple[int, ...]], Dict[Tuple[Value, ...], List[GroundAtom]]] = {}

    def __contains__(self, atom: GroundAtom) -> bool:
        return atom in self.atoms.get(atom.predicate, {})

    def __iter__(self) -> Iterator[GroundAtom]:
        for atoms in self.atoms.values():
            yield from atoms

    def add(self, atom: GroundAtom) -> bool:
        atoms = self.atoms.setdefault(atom.predicate, {})
        if atom in atoms:
            return False
        atoms[atom] = None
        for (predicate, positions), index in self.indexes.items():
            if predicate == atom.predicate and len(atom.args) > max(positions, default=-1):
                index.setdefault(tuple(atom.args[p] for p in positions), []).append(atom)
        return True

    def lookup(self, predicate: str, bound: Tuple[Tuple[int, Value], ...]) -> List[GroundAtom]:
        if not bound:
            return list(self.atoms.get(predicate, {}))
        positions = tuple(position for position, _ in bound)
        index = self.indexes.get((predicate, positions))
        if index is None:
            index = {}
            for atom in self.atoms.get(predicate, {}):
                if len(atom.args) > max(positions):
                    index.setdefault(tuple(atom.args[p] for p in positions), []).append(atom)
            self.indexes[(predicate, positions)] = index
        return list(index.get(tuple(value for _, value in bound), []))


@dataclass(frozen=True)
class _Found:
    positive: Tuple[GroundAtom, ...] = ()
    negative: Tuple[GroundAtom, ...] = ()
    aggregates: Tuple[GroundAggregate, ...] = ()


@dataclass(frozen=True)
class _Goal:
    literal: BodyLiteral
    needs: FrozenSet[str]
    """Variables to bind before a non-positive literal can be evaluated."""
    delta: bool = False
    """Match a positive literal against the atoms new in the previous round only."""


def _goals(rule: Rule) -> Tuple[_Goal, ...]:
    goals = []
    outside = global_variables(rule)
    for literal in rule.body:
        if isinstance(literal, Aggregate):
            inner = {var.name for var in literal_variables(literal)} - {literal.result.name}
            goals.append(_Goal(literal, frozenset(inner & outside)))
        else:
            goals.append(_Goal(literal, frozenset(var.name for var in literal_variables(literal))))
    return tuple(goals)


def _pattern(atom: Atom, binding: Binding) -> Tuple[Tuple[int, Value], ...]:
    bound = []
    for position, arg in enumerate(atom.args):
        if isinstance(arg, Variable):
            if arg.name in binding:
                bound.append((position, binding[arg.name]))
        else:
            bound.append((position, evaluate(arg, binding)))
    return tuple(bound)


def _match(atom: Atom, ground: GroundAtom, binding: Binding) -> Optional[Binding]:
    extended = dict(binding)
    for arg, value in zip(atom.args, ground.args):
        if isinstance(arg, Variable):
            previous = extended.setdefault(arg.name, value)
            if previous != value:
                return None
    return extended


def _instantiate(atom: Atom, binding: Binding) -> GroundAtom:
    args = []
    for arg in atom.args:
        value = evaluate(arg, binding)
        if value is None:
            raise GroundingError(f"undefined argument in {atom.predicate}")
        args.append(value)
    return GroundAtom(atom.predicate, tuple(args))


def _delta_variants(goals: Tuple[_Goal, ...], delta: Optional[_AtomStore]) -> List[Tuple[_Goal, ...]]:
    if delta is None:
        return [goals]
    variants = []
    for position, goal in enumerate(goals):
        literal = goal.literal
        if isinstance(literal, Literal) and not literal.negated and literal.atom.predicate in delta.atoms:
            variants.append(goals[:position] + (replace(goal, delta=True),) + goals[position + 1 :])
    return variants


class Grounder:
    """Grounds one program, evaluating its choice-independent part on the way."""

    logger = logging.getLogger("skasp.asp.grounder")

    def __init__(self, program: AspProgram) -> None:
        """Init Grounder.

        :raises NonStratifiedError: When the program has a cycle through negation.
        """
        self.program = program
        graph = program_graph(program.rules, program.choices)
        stratification = check_stratified(graph)
        if not stratification.stratified:
            raise NonStratifiedError(stratification.cycle)
        self.strata = stratification.strata
        self.dynamic: Set[str] = set()
        for block in program.choices:
            for atom in block.atoms:
                self.dynamic.add(atom.predicate)
                self.dynamic |= nx.ancestors(graph.graph, atom.predicate)
        self.true = _AtomStore()
        self.possible = _AtomStore()
        self.delta = _AtomStore()
        self.firings = 0
        """Rule instances derived so far."""

    def _is_dynamic(self, predicate: str) -> bool:
        return predicate in self.dynamic

    def _select(self, goals: Tuple[_Goal, ...], binding: Binding) -> int:
        best, best_score = -1, -1
        for position, goal in enumerate(goals):
            literal = goal.literal
            if goal.delta:
                return position
            if isinstance(literal, Literal) and not literal.negated:
                score = len(_pattern(literal.atom, binding))
                if score > best_score:
                    best, best_score = position, score
                continue
            if goal.needs <= binding.keys() or self._assignable(literal, binding):
                return position
        if best < 0:
            raise GroundingError("unsafe rule: some variables cannot be bound")
        return best

    @staticmethod
    def _assignable(literal: BodyLiteral, binding: Binding) -> bool:
        if not isinstance(literal, Comparison) or literal.op is not CmpOp.EQ:
            return False
        for target, source in ((literal.lhs, literal.rhs), (literal.rhs, literal.lhs)):
            if isinstance(target, Variable) and target.name not in binding:
                if all(var.name in binding for var in term_variables(source)):
                    return True
        return False

    def _solve(self, goals: Tuple[_Goal, ...], binding: Binding, found: _Found) -> Iterator[Tuple[Binding, _Found]]:
        if not goals:
            yield binding, found
            return
        position = self._select(goals, binding)
        rest = goals[:position] + goals[position + 1 :]
        for extended, more in self._step(goals[position], binding, found):
            yield from self._solve(rest, extended, more)

    def _step(self, goal: _Goal, binding: Binding, found: _Found) -> Iterator[Tuple[Binding, _Found]]:
        literal = goal.literal
        if isinstance(literal, Literal):
            atom = literal.atom
            dynamic = self._is_dynamic(atom.predicate)
            if literal.negated:
                ground = _instantiate(atom, binding)
                if not dynamic:
                    if ground not in self.true:
                        yield binding, found
                elif ground in self.possible:
                    yield binding, _Found(found.positive, found.negative + (ground,), found.aggregates)
                else:
                    yield binding, found
                return
            if goal.delta:
                store = self.delta
            else:
                store = self.possible if dynamic else self.true
            for ground in store.lookup(atom.predicate, _pattern(atom, binding)):
                if len(ground.args) != len(atom.args):
                    continue
                extended = _match(atom, ground, binding)
                if extended is None:
                    continue
                if dynamic:
                    yield extended, _Found(found.positive + (ground,), found.negative, found.aggregates)
                else:
                    yield extended, found
        elif isinstance(literal, Comparison):
            yield from self._compare(literal, binding, found)
        else:
            yield from self._aggregate(literal, binding, found)

    def _compare(self, literal: Comparison, binding: Binding, found: _Found) -> Iterator[Tuple[Binding, _Found]]:
        if self._assignable(literal, binding):
            target, source = (
                (literal.lhs, literal.rhs)
                if isinstance(literal.lhs, Variable) and literal.lhs.name not in binding
                else (literal.rhs, literal.lhs)
            )
            value = evaluate(source, binding)
            if value is not None:
                yield {**binding, target.name: value}, found
            return
        left, right = evaluate(literal.lhs, binding), evaluate(literal.rhs, binding)
        if left is not None and right is not None and compare(literal.op, left, right):
            yield binding, found

    def _aggregate(self, literal: Aggregate, binding: Binding, found: _Found) -> Iterator[Tuple[Binding, _Found]]:
        elements: Dict[AggregateElement, None] = {}
        condition = tuple(
            _Goal(element, frozenset(var.name for var in literal_variables(element))) for element in literal.condition
        )
        for local, inner in self._solve(condition, binding, _Found()):
            values = []
            for term in literal.terms:
                value = evaluate(term, local)
                if value is None:
                    break
                values.append(value)
            else:
                elements[AggregateElement(tuple(values), inner.positive, inner.negative)] = None
        certain = {element.terms for element in elements if not element.positive and not element.negative}
        uncertain = {element.terms for element in elements} - certain
        function = literal.function
        result = literal.result.name
        if not uncertain:
            value = aggregate_value(function, certain)
            if value is not None and (result not in binding or binding[result] == value):
                yield {**binding, result: value}, found
            return
        for value in _possible_values(function, certain, uncertain):
            if result in binding and binding[result] != value:
                continue
            condition_atom = GroundAggregate(function, value, tuple(elements))
            yield {**binding, result: value}, _Found(found.positive, found.negative, found.aggregates + (condition_atom,))

    def _instances(self, rule: Rule, goals: Tuple[_Goal, ...]) -> Iterator[Tuple[Binding, _Found]]:
        try:
            yield from self._solve(goals, {}, _Found())
        except GroundingError as exc:
            raise GroundingError(f"{exc}: {format_rule(rule)}") from exc

    def _node(self, index: int, rule: Rule) -> str:
        return rule.head.predicate if rule.head is not None else f"{CONSTRAINT_NODE}{index}"

    def _fixpoint(
        self,
        rules: Sequence[Tuple[Rule, Tuple[_Goal, ...]]],
        store: _AtomStore,
        fire: Callable[[Rule, Binding, _Found], Optional[GroundAtom]],
    ) -> None:
        """Semi-naive evaluation of one stratum into ``store``.

        The first round fires every rule; later rounds fire a rule once per positive body literal
        over a predicate that gained atoms, with that literal matched against the new atoms only.
        """
        delta: Optional[_AtomStore] = None
        while delta is None or delta.atoms:
            self.delta = delta if delta is not None else _AtomStore()
            derived: List[GroundAtom] = []
            for rule, goals in rules:
                for variant in _delta_variants(goals, delta):
                    for binding, found in self._instances(rule, variant):
                        self.firings += 1
                        head = fire(rule, binding, found)
                        if head is not None:
                            derived.append(head)
            delta = _AtomStore()
            for atom in derived:
                if store.add(atom):
                    delta.add(atom)
        self.delta = _AtomStore()

    def _static_stratum(self, rules: List[Tuple[Rule, Tuple[_Goal, ...]]], violated: List[GroundRule]) -> None:
        self._fixpoint(
            [(rule, goals) for rule, goals in rules if rule.head is not None],
            self.true,
            lambda rule, binding, _: _instantiate(rule.head, binding),
        )
        # constraints only after the stratum's fixpoint
        for rule, goals in rules:
            if rule.head is None and next(self._instances(rule, goals), None) is not None:
                violated.append(GroundRule(None))
                self.logger.debug("constraint violated by every model: %s", format_rule(rule))

    def _dynamic_stratum(
        self, rules: List[Tuple[Rule, Tuple[_Goal, ...]]], stratum: int, output: Dict[GroundRule, None]
    ) -> None:
        def fire(rule: Rule, binding: Binding, found: _Found) -> Optional[GroundAtom]:
            head = _instantiate(rule.head, binding) if rule.head is not None else None
            output[GroundRule(head, found.positive, found.negative, found.aggregates, stratum)] = None
            return head

        self._fixpoint(rules, self.possible, fire)

    def ground(self) -> GroundProgram:
        """Ground the program.

        :raises GroundingError: On an unsafe rule.
        :raises ArithmeticOverflowError: On integer overflow.
        """
        for block in self.program.choices:
            for atom in block.atoms:
                self.possible.add(_instantiate(atom, {}))
        by_stratum: Dict[int, List[Tuple[bool, Rule, Tuple[_Goal, ...]]]] = {}
        for index, rule in enumerate(self.program.rules, start=1):
            node = self._node(index, rule)
            by_stratum.setdefault(self.strata.get(node, 0), []).append((node in self.dynamic, rule, _goals(rule)))
        ground_rules: Dict[GroundRule, None] = {}
        violated: List[GroundRule] = []
        for stratum in sorted(by_stratum):
            entries = by_stratum[stratum]
            self._static_stratum([(rule, goals) for dynamic, rule, goals in entries if not dynamic], violated)
            self._dynamic_stratum([(rule, goals) for dynamic, rule, goals in entries if dynamic], stratum, ground_rules)
        rules = tuple(rule for rule in ground_rules if rule.head is not None)
        constraints = tuple(violated[:1]) + tuple(rule for rule in ground_rules if rule.head is None)
        blocks = tuple(
            DecisionBlock(block.label, tuple(_instantiate(atom, {}) for atom in block.atoms))
            for block in self.program.choices
        )
        facts = frozenset(self.true)
        self.logger.debug(
            "grounded %s facts, %s rules, %s constraints and %s decision blocks (%s rule firings)",
            len(facts),
            len(rules),
            len(constraints),
            len(blocks),
            self.firings,
        )
        return GroundProgram(facts, rules, constraints, blocks, self.program.shows)


def ground(program: AspProgram) -> GroundProgram:
    """Ground a sketch-free stratified program (a meta-program, or a completed sketch).

    Builtins are evaluated once their arguments are bound; ``V = expr`` binds ``V``.

    :param program: The program, e.g. :meth:`skasp.rewriter.meta.MetaProgram.program`.
    """
    return Grounder(program).ground()
