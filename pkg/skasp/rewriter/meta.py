"""Rewriting of a sketch into one sketch-free meta-program.

The meta-program is built in four stages:

* example identifiers: example-dependent predicates gain a leading example argument,
* decisions: one exactly-one choice per sketched variable,
* reification: sketched constructs become reified atoms gated by decision atoms,
* constraint splitting: constraints must hold on positive examples and fail on negative ones.

Its answer sets correspond one-to-one to the substitutions that solve the sketch.
"""
import logging
from dataclasses import dataclass, replace
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from ..dependency import DependencyGraph, atom_node, check_stratified, dependency_graph, example_dependent_predicates
from ..exceptions import NonStratifiedError, RewriteError
from ..lang.printer import atom_sort_key
from ..lang.sketchvars import enumerate_sketch_vars
from ..lang.types import (
    AggFn,
    Aggregate,
    AnyAtom,
    ArithOp,
    AspProgram,
    Atom,
    BinOp,
    BodyLiteral,
    ChoiceBlock,
    CmpOp,
    Comparison,
    ExampleSet,
    Integer,
    Literal,
    Rule,
    SketchedAtom,
    SketchedNegation,
    SketchKind,
    SketchProgram,
    SketchRef,
    SketchVar,
    Symbol,
    Term,
    Variable,
    atom_variables,
    global_variables,
    literal_variables,
    rule_variables,
    term_variables,
)
from .naming import EXAMPLES, NEGATIVE, NEGSAT, POSITIVE, Naming, VarNaming, make_naming

logger = logging.getLogger("skasp.rewriter")

STAGE_EXAMPLES = "examples"
STAGE_DECISIONS = "decisions"
STAGE_REIFICATION = "reification"
STAGE_CONSTRAINTS = "constraints"
STAGES = (STAGE_EXAMPLES, STAGE_DECISIONS, STAGE_REIFICATION, STAGE_CONSTRAINTS)
"""Rewriting stages in emission order."""


@dataclass(frozen=True)
class Provenance:
    """Origin of a generated rule."""

    stage: str
    source: Optional[int] = None
    """1-based index of the sketch rule it was derived from."""


Traced = Tuple[Rule, Provenance]


@dataclass(frozen=True)
class RewriteContext:
    """Facts about a sketch shared by the rewriting stages."""

    example_var: Variable
    dependent: FrozenSet[str]
    """Example-dependent predicates and sketched predicate nodes."""
    naming: Naming


@dataclass(frozen=True)
class ExampleIndexing:
    """A sketch whose example-dependent atoms carry the example identifier."""

    sketch: SketchProgram
    """Indexed rules (same order as the input), facts of independent predicates, no examples."""
    support: Tuple[Rule, ...]
    """Indexed example facts, ``positive``/``negative`` facts and the ``examples`` rules."""


@dataclass(frozen=True)
class MetaProgram:
    """The rewritten program."""

    rules: Tuple[Rule, ...]
    choices: Tuple[ChoiceBlock, ...]
    provenance: Tuple[Provenance, ...]
    """Parallel to ``rules``."""
    naming: Naming
    sketch_vars: Tuple[SketchVar, ...]
    example_var: str = "E"

    def program(self) -> AspProgram:
        """The meta-program as a plain program showing the decision atoms."""
        shows = tuple((entry.decision, 1) for entry in self.naming)
        return AspProgram(self.rules, self.choices, shows)


def _fresh_example_variable(program: SketchProgram) -> Variable:
    used: Set[str] = set()
    for rule in program.rules:
        used |= rule_variables(rule)
    name, suffix = "E", 0
    while name in used:
        suffix += 1
        name = f"E{suffix}"
    return Variable(name)


def rewrite_context(
    program: SketchProgram, sketch_vars: Sequence[SketchVar], graph: Optional[DependencyGraph] = None
) -> RewriteContext:
    """Compute the example variable, the example-dependent predicates and the naming of a sketch."""
    dependent = frozenset(example_dependent_predicates(program, graph))
    return RewriteContext(_fresh_example_variable(program), dependent, make_naming(program, sketch_vars))


def _fact(predicate: str, *args: Term) -> Rule:
    return Rule(Atom(predicate, tuple(args)))


def _positive(predicate: str, *args: Term) -> Literal:
    return Literal(Atom(predicate, tuple(args)))


def _ordered_variables(terms: Iterable[Term], skip: Variable) -> Tuple[Variable, ...]:
    found = dict.fromkeys(var for term in terms for var in term_variables(term) if var != skip)
    return tuple(found)


class _Indexer:
    def __init__(self, context: RewriteContext) -> None:
        self.context = context

    def atom(self, atom: AnyAtom) -> AnyAtom:
        if atom_node(atom) in self.context.dependent:
            return replace(atom, args=(self.context.example_var,) + atom.args)
        return atom

    def literal(self, literal: BodyLiteral) -> BodyLiteral:
        if isinstance(literal, (Literal, SketchedNegation)):
            return replace(literal, atom=self.atom(literal.atom))
        if isinstance(literal, Aggregate):
            return replace(literal, condition=tuple(self.literal(element) for element in literal.condition))
        return literal


def meta_e(program: SketchProgram, context: RewriteContext) -> ExampleIndexing:
    """Add example identifiers.

    Atoms over example-dependent predicates gain the example variable as first argument, and rules
    using them (and every constraint) gain ``examples(E)``. Example atoms become indexed facts.

    :param program: A valid, stratified sketch.
    :param context: Its rewrite context.
    """
    e = context.example_var
    guard = _positive(EXAMPLES, e)
    indexer = _Indexer(context)
    rules = []
    for rule in program.rules:
        head = indexer.atom(rule.head) if rule.head is not None else None
        body = tuple(indexer.literal(literal) for literal in rule.body)
        if head != rule.head or body != rule.body or rule.is_constraint:
            body += (guard,)
        rules.append(Rule(head, body, rule.line))
    support: List[Rule] = []
    for index, is_positive, atoms in program.examples.indexed():
        support.append(_fact(POSITIVE if is_positive else NEGATIVE, Integer(index)))
        for atom in sorted(atoms, key=atom_sort_key):
            support.append(Rule(Atom(atom.predicate, (Integer(index),) + atom.args)))
    support.append(Rule(Atom(EXAMPLES, (e,)), (_positive(POSITIVE, e),)))
    support.append(Rule(Atom(EXAMPLES, (e,)), (_positive(NEGATIVE, e),)))
    kept = set()
    for atom in sorted(program.facts, key=atom_sort_key):
        if atom.predicate in context.dependent:
            support.append(Rule(Atom(atom.predicate, (e,) + atom.args), (guard,)))
        else:
            kept.add(atom)
    sketch = replace(program, rules=tuple(rules), facts=frozenset(kept), examples=ExampleSet())
    return ExampleIndexing(sketch, tuple(support))


def meta_d(sketch_vars: Sequence[SketchVar], naming: Naming) -> Tuple[Tuple[Rule, ...], Tuple[ChoiceBlock, ...]]:
    """Generate the decision choices: one exactly-one block per sketched variable.

    Predicate sketches get candidate facts ``reified_q_choice(c_d)`` and a conditional block;
    operator sketches get a block listing their candidates.
    """
    facts: List[Rule] = []
    choices: List[ChoiceBlock] = []
    for var in sketch_vars:
        entry = naming[var.id]
        atoms = tuple(Atom(entry.decision, (Symbol(entry.constants[candidate]),)) for candidate in var.domain)
        if entry.choice_domain is not None:
            facts.extend(_fact(entry.choice_domain, Symbol(entry.constants[candidate])) for candidate in var.domain)
        choices.append(ChoiceBlock(atoms, label=entry.decision, domain=entry.choice_domain))
    return tuple(facts), tuple(choices)


@dataclass(frozen=True)
class _Source:
    """A host body literal that can bind variables for a guard rule."""

    literal: BodyLiteral
    provides: FrozenSet[str]
    externals: Tuple[Variable, ...] = ()
    """Variables a plain aggregate needs bound from elsewhere."""


@dataclass(frozen=True)
class _Definition:
    """A reified operator occurrence whose candidate rules are generated after the host rule."""

    entry: VarNaming
    wrapped: Tuple[Variable, ...]
    operands: Tuple = ()
    indexed: bool = False


class _Reifier:
    """Rewrites the sketched constructs of one indexed rule."""

    def __init__(self, rule: Rule, index: int, context: RewriteContext) -> None:
        self.rule = rule
        self.index = index
        self.context = context
        self.e = context.example_var
        self.body: List[BodyLiteral] = []
        self.decisions: Dict[str, Literal] = {}
        self.choice_domains: Dict[str, str] = {}
        self.sources: List[_Source] = []
        self.definitions: List[Tuple[str, _Definition]] = []
        self.auxiliary: List[Rule] = []
        self.guards: Set[str] = set()
        self.alternatives: List[Tuple[int, int, Literal]] = []
        """Body spans a top comparison replaces with its decision atom."""

    def _decide(self, entry: VarNaming) -> Variable:
        variable = Variable(entry.decision_variable)
        self.decisions.setdefault(entry.decision, _positive(entry.decision, variable))
        if entry.choice_domain is not None:
            self.choice_domains[variable.name] = entry.choice_domain
        return variable

    def _indexed(self, atom: Atom) -> bool:
        return atom.args[:1] == (self.e,)

    def _source(self, literal: BodyLiteral, provides: Iterable[str], externals: Tuple[Variable, ...] = ()) -> None:
        self.sources.append(_Source(literal, frozenset(provides), externals))

    def reify_atom(self, atom: SketchedAtom) -> Atom:
        entry = self.context.naming[atom.name]
        decision = self._decide(entry)
        if self._indexed(atom):
            args = (self.e, decision) + atom.args[1:]
        else:
            args = (decision,) + atom.args
        return Atom(entry.reified, args)

    def term(self, term: Term) -> Term:
        if not isinstance(term, BinOp):
            return term
        left, right = self.term(term.left), self.term(term.right)
        if not isinstance(term.op, SketchRef):
            return BinOp(left, term.op, right)
        entry = self.context.naming[term.op.id]
        wrapped = _ordered_variables((left, right), self.e)
        output = Variable(entry.output_variable)
        literal = _positive(entry.reified, self._decide(entry), *wrapped, output)
        self.body.append(literal)
        self._source(literal, {output.name})
        self.definitions.append(("arith", _Definition(entry, wrapped, (left, right, output))))
        return output

    def _aggregate_externals(self, literal: Aggregate, keep_example: bool) -> Tuple[Variable, ...]:
        outside = global_variables(self.rule)
        inner = [var for term in literal.terms for var in term_variables(term)]
        inner += [var for element in literal.condition for var in literal_variables(element)]
        return tuple(
            var for var in dict.fromkeys(inner) if var.name in outside and (keep_example or var != self.e)
        )

    def literal(self, literal: BodyLiteral) -> None:
        if isinstance(literal, Literal):
            atom = self.reify_atom(literal.atom) if isinstance(literal.atom, SketchedAtom) else literal.atom
            rewritten = Literal(atom, literal.negated)
            self.body.append(rewritten)
            if not literal.negated:
                self._source(rewritten, (var.name for var in atom_variables(atom)))
        elif isinstance(literal, SketchedNegation):
            inner = self.reify_atom(literal.atom) if isinstance(literal.atom, SketchedAtom) else literal.atom
            entry = self.context.naming[literal.ref.id]
            indexed = self._indexed(inner)
            wrapped = _ordered_variables(inner.args, self.e)
            prefix = (self.e,) if indexed else ()
            self.body.append(_positive(entry.reified, *prefix, self._decide(entry), *wrapped))
            self.definitions.append(("not", _Definition(entry, wrapped, (inner,), indexed)))
        elif isinstance(literal, Comparison):
            start = len(self.body)
            lhs, rhs = self.term(literal.lhs), self.term(literal.rhs)
            if not isinstance(literal.op, SketchRef):
                self.body.append(Comparison(lhs, literal.op, rhs))
                return
            entry = self.context.naming[literal.op.id]
            wrapped = _ordered_variables((lhs, rhs), self.e)
            self.body.append(_positive(entry.reified, self._decide(entry), *wrapped))
            # the top candidate must not evaluate sketched arithmetic: it gets its own host rule
            split = len(self.body) - start > 1 and CmpOp.TOP.value in entry.var.domain
            if split:
                top = _positive(entry.decision, Symbol(entry.constants[CmpOp.TOP.value]))
                self.alternatives.append((start, len(self.body), top))
            self.definitions.append(("cmp", _Definition(entry, wrapped, (lhs, rhs, split))))
        elif isinstance(literal.function, SketchRef):
            entry = self.context.naming[literal.function.id]
            indexed = any(
                self._indexed(element.atom) for element in literal.condition if isinstance(element, Literal)
            )
            externals = self._aggregate_externals(literal, keep_example=False)
            prefix = (self.e,) if indexed else ()
            wrapper = _positive(entry.reified, *prefix, self._decide(entry), literal.result, *externals)
            self.body.append(wrapper)
            self._source(wrapper, {literal.result.name})
            self.definitions.append(("agg", _Definition(entry, externals, (literal,), indexed)))
        else:
            self.body.append(literal)
            self._source(literal, {literal.result.name}, self._aggregate_externals(literal, keep_example=True))

    def source_literals(self, variable: Variable, seen: FrozenSet[str] = frozenset()) -> List[BodyLiteral]:
        """Host literals binding ``variable``, for use in a guard rule."""
        for source in self.sources:
            if variable.name not in source.provides:
                continue
            literals = [source.literal]
            for external in source.externals:
                if external.name in seen:
                    raise RewriteError(f"rule {self.index}: cyclic binding of variable {external.name}")
                for extra in self.source_literals(external, seen | {variable.name}):
                    if extra not in literals:
                        literals.append(extra)
            return literals
        raise RewriteError(f"rule {self.index}: variable {variable.name} cannot be bound for reification")

    def guard_literals(self, entry: VarNaming, wrapped: Sequence[Variable]) -> List[BodyLiteral]:
        """Domain guards of the wrapped variables of an occurrence."""
        literals: List[BodyLiteral] = []
        for position, variable in enumerate(wrapped):
            domain = self.choice_domains.get(variable.name)
            if domain is not None:
                literals.append(_positive(domain, variable))
                continue
            name = entry.guard(position)
            if name not in self.guards:
                self.guards.add(name)
                self.auxiliary.append(Rule(Atom(name, (variable,)), tuple(self.source_literals(variable))))
            literals.append(_positive(name, variable))
        return literals

    def _define(self, kind: str, definition: _Definition) -> None:
        entry = definition.entry
        wrapped = definition.wrapped
        guards = self.guard_literals(entry, wrapped)
        example = [_positive(EXAMPLES, self.e)] if definition.indexed else []
        prefix = (self.e,) if definition.indexed else ()
        constant = {candidate: Symbol(entry.constants[candidate]) for candidate in entry.var.domain}
        if kind == "not":
            (inner,) = definition.operands
            positive = Atom(entry.reified, prefix + (constant["pos"],) + wrapped)
            negative = Atom(entry.reified, prefix + (constant["neg"],) + wrapped)
            self.auxiliary.append(Rule(positive, (Literal(inner),)))
            self.auxiliary.append(Rule(negative, tuple([Literal(inner, negated=True)] + guards + example)))
        elif kind == "cmp":
            lhs, rhs, split = definition.operands
            for candidate in entry.var.domain:
                op = CmpOp(candidate)
                if op is CmpOp.TOP and split:
                    continue
                builtin = [] if op is CmpOp.TOP else [Comparison(lhs, op, rhs)]
                self.auxiliary.append(Rule(Atom(entry.reified, (constant[candidate],) + wrapped), tuple(guards + builtin)))
        elif kind == "arith":
            left, right, output = definition.operands
            for candidate in entry.var.domain:
                value = BinOp(left, ArithOp(candidate), right)
                head_atom = Atom(entry.reified, (constant[candidate],) + wrapped + (output,))
                self.auxiliary.append(Rule(head_atom, tuple(guards + [Comparison(output, CmpOp.EQ, value)])))
        else:
            (aggregate,) = definition.operands
            for candidate in entry.var.domain:
                literal = replace(aggregate, function=AggFn(candidate))
                head_atom = Atom(entry.reified, prefix + (constant[candidate], aggregate.result) + wrapped)
                self.auxiliary.append(Rule(head_atom, tuple([literal] + guards + example)))

    def _check_fresh(self) -> None:
        used = rule_variables(self.rule)
        generated = {literal.atom.args[0].name for literal in self.decisions.values()}
        for kind, definition in self.definitions:
            if kind == "arith":
                generated.add(definition.operands[2].name)
        clashes = sorted(generated & used)
        if clashes:
            raise RewriteError(f"rule {self.index}: variable {clashes[0]} collides with a generated name")

    def _hosts(self) -> List[Rule]:
        decisions = tuple(self.decisions.values())
        hosts = []
        for dropped in product((False, True), repeat=len(self.alternatives)):
            body = list(self.body)
            for (start, end, top), drop in reversed(list(zip(self.alternatives, dropped))):
                if drop:
                    body[start:end] = [top]
            hosts.append(Rule(self.rule.head, tuple(body) + decisions, self.rule.line))
        return hosts

    def run(self) -> Tuple[List[Rule], List[Rule]]:
        for literal in self.rule.body:
            self.literal(literal)
        self._check_fresh()
        for kind, definition in self.definitions:
            self._define(kind, definition)
        return self._hosts(), self.auxiliary


def _bridging_rules(sketch_vars: Sequence[SketchVar], context: RewriteContext) -> List[Rule]:
    rules: List[Rule] = []
    e = context.example_var
    for var in sketch_vars:
        if var.kind is not SketchKind.PREDICATE:
            continue
        entry = context.naming[var.id]
        indexed = f"?{var.id}" in context.dependent
        arguments = tuple(Variable(f"X{position}") for position in range(var.arity))
        for candidate in var.domain:
            constant = Symbol(entry.constants[candidate])
            if not indexed:
                rules.append(Rule(Atom(entry.reified, (constant,) + arguments), (_positive(candidate, *arguments),)))
                continue
            if candidate in context.dependent:
                body: Tuple[BodyLiteral, ...] = (_positive(candidate, e, *arguments),)
            else:
                body = (_positive(candidate, *arguments), _positive(EXAMPLES, e))
            rules.append(Rule(Atom(entry.reified, (e, constant) + arguments), body))
    return rules


def meta_r(program: SketchProgram, sketch_vars: Sequence[SketchVar], context: RewriteContext) -> List[Traced]:
    """Reify the sketched constructs of an example-indexed sketch.

    Each sketched atom becomes a reified atom plus its decision atom; each candidate gets a bridging
    rule. Sketched negation, comparison, arithmetic and aggregates become wrapper atoms defined once
    per candidate, with guard predicates projected from the host rule keeping those definitions safe.
    A sketched comparison over sketched arithmetic also gets a host rule without the comparison and
    its arithmetic, enabled by its ``top`` decision.

    :param program: The ``sketch`` of :func:`meta_e`.
    :param sketch_vars: The sketched variables of the original sketch.
    :param context: Its rewrite context.
    """
    traced: List[Traced] = [(rule, Provenance(STAGE_REIFICATION)) for rule in _bridging_rules(sketch_vars, context)]
    for index, rule in enumerate(program.rules, start=1):
        hosts, auxiliary = _Reifier(rule, index, context).run()
        traced.extend((host, Provenance(STAGE_REIFICATION, index)) for host in hosts)
        traced.extend((rule, Provenance(STAGE_REIFICATION, index)) for rule in auxiliary)
    return traced


def meta_c(traced: Sequence[Traced], context: RewriteContext) -> List[Traced]:
    """Split constraints so they hold on positive examples and are violated on every negative one.

    :param traced: Rules with their provenance.
    :param context: The rewrite context.
    """
    e = context.example_var
    result: List[Traced] = []
    for rule, provenance in traced:
        if not rule.is_constraint:
            result.append((rule, provenance))
            continue
        split = Provenance(STAGE_CONSTRAINTS, provenance.source)
        result.append((Rule(None, rule.body + (_positive(POSITIVE, e),), rule.line), split))
        result.append((Rule(Atom(NEGSAT, (e,)), rule.body + (_positive(NEGATIVE, e),), rule.line), split))
    closing = Rule(None, (_positive(NEGATIVE, e), Literal(Atom(NEGSAT, (e,)), negated=True)))
    result.append((closing, Provenance(STAGE_CONSTRAINTS)))
    return result


def rewrite(program: SketchProgram) -> MetaProgram:
    """Rewrite a sketch into its meta-program.

    :param program: A valid sketch.
    :raises NonStratifiedError: When the sketch has a cycle through negation.
    :raises RewriteError: On a collision with a generated name.
    """
    graph = dependency_graph(program)
    stratification = check_stratified(graph)
    if not stratification.stratified:
        raise NonStratifiedError(stratification.cycle)
    sketch_vars = enumerate_sketch_vars(program)
    context = rewrite_context(program, sketch_vars, graph)
    indexing = meta_e(program, context)
    facts = [Rule(atom) for atom in sorted(indexing.sketch.facts, key=atom_sort_key)]
    traced: List[Traced] = [(rule, Provenance(STAGE_EXAMPLES)) for rule in list(indexing.support) + facts]
    decision_facts, choices = meta_d(sketch_vars, context.naming)
    traced.extend((rule, Provenance(STAGE_DECISIONS)) for rule in decision_facts)
    traced.extend(meta_c(meta_r(indexing.sketch, sketch_vars, context), context))
    logger.debug(
        "rewrote %s rules with %s sketched variables into %s rules and %s choices",
        len(program.rules),
        len(sketch_vars),
        len(traced),
        len(choices),
    )
    return MetaProgram(
        rules=tuple(rule for rule, _ in traced),
        choices=choices,
        provenance=tuple(provenance for _, provenance in traced),
        naming=context.naming,
        sketch_vars=tuple(sketch_vars),
        example_var=context.example_var.name,
    )
