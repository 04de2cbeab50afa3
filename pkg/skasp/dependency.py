"""Predicate dependency graph, stratification and example-dependent predicates."""
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Set, Tuple

import networkx as nx

from .exceptions import NonStratifiedError
from .lang.types import (
    Aggregate,
    AnyAtom,
    ChoiceBlock,
    Comparison,
    Literal,
    Rule,
    SketchedAtom,
    SketchedNegation,
    SketchProgram,
)

POSITIVE = "positive"
NEGATIVE = "negative"
CONSTRAINT_NODE = "⊥"
"""Prefix of the synthetic head node of an integrity constraint."""


class DependencyGraph:
    """Directed multigraph from rule heads to the predicates their bodies use.

    Edges are keyed by polarity, so a pair of nodes has at most one positive and one negative edge.
    Sketched predicates are nodes named ``?q`` with edges to their candidates.
    """

    def __init__(self) -> None:
        """Init an empty graph."""
        self.graph = nx.MultiDiGraph()

    def add_node(self, name: str) -> None:
        """Add a predicate node."""
        self.graph.add_node(name)

    def add_edge(self, head: str, body: str, polarity: str) -> None:
        """Add a dependency of ``head`` on ``body``."""
        self.graph.add_edge(head, body, key=polarity)

    def has_edge(self, head: str, body: str, polarity: str) -> bool:
        """True when ``head`` depends on ``body`` with ``polarity``."""
        return self.graph.has_edge(head, body, key=polarity)

    @property
    def nodes(self) -> Tuple[str, ...]:
        """Nodes in insertion order."""
        return tuple(self.graph.nodes)

    @property
    def edges(self) -> Tuple[Tuple[str, str, str], ...]:
        """``(head, body, polarity)`` triples in insertion order."""
        return tuple(self.graph.edges(keys=True))


@dataclass(frozen=True)
class StratificationResult:
    """Either a stratum per node or a witness cycle through a negative edge."""

    strata: Mapping[str, int] = field(default_factory=dict)
    cycle: Tuple[str, ...] = ()

    @property
    def stratified(self) -> bool:
        """True when no negative cycle exists."""
        return not self.cycle


def atom_node(atom: AnyAtom) -> str:
    """Graph node of an atom: its predicate, or ``?q`` for a sketched atom."""
    return f"?{atom.name}" if isinstance(atom, SketchedAtom) else atom.predicate


def _add_rule(graph: DependencyGraph, rule: Rule, head: str, polarities: Dict[str, Set[str]]) -> None:
    graph.add_node(head)
    for literal in rule.body:
        if isinstance(literal, Comparison):
            continue
        if isinstance(literal, Aggregate):
            for element in literal.condition:
                if isinstance(element, Literal):
                    graph.add_edge(head, atom_node(element.atom), NEGATIVE)
            continue
        negative = isinstance(literal, SketchedNegation) or literal.negated
        polarity = NEGATIVE if negative else POSITIVE
        node = atom_node(literal.atom)
        graph.add_edge(head, node, polarity)
        if isinstance(literal.atom, SketchedAtom):
            polarities.setdefault(node, set()).add(polarity)


def dependency_graph(program: SketchProgram) -> DependencyGraph:
    """Build the dependency graph of a sketch.

    Constraints get a synthetic head ``⊥<rule number>``. Sketched negation and aggregate conditions
    contribute negative edges; comparisons and arithmetic contribute none.

    :param program: A parsed sketch.
    """
    graph = DependencyGraph()
    for atom in sorted(program.facts, key=lambda atom: atom.predicate):
        graph.add_node(atom.predicate)
    for name in sorted(program.examples.predicates()):
        graph.add_node(name)
    polarities: Dict[str, Set[str]] = {}
    for index, rule in enumerate(program.rules, start=1):
        head = rule.head.predicate if rule.head is not None else f"{CONSTRAINT_NODE}{index}"
        _add_rule(graph, rule, head, polarities)
    for var in program.declarations:
        node = f"?{var.id}"
        graph.add_node(node)
        for polarity in sorted(polarities.get(node, {POSITIVE}), reverse=True):
            for candidate in var.domain:
                graph.add_edge(node, candidate, polarity)
    return graph


def program_graph(rules: Iterable[Rule], choices: Iterable[ChoiceBlock] = ()) -> DependencyGraph:
    """Build the dependency graph of sketch-free rules; choice atoms are nodes without dependencies."""
    graph = DependencyGraph()
    for block in choices:
        for atom in block.atoms:
            graph.add_node(atom.predicate)
    for index, rule in enumerate(rules, start=1):
        head = rule.head.predicate if rule.head is not None else f"{CONSTRAINT_NODE}{index}"
        _add_rule(graph, rule, head, {})
    return graph


def _witness_cycle(graph: nx.MultiDiGraph, component_of: Mapping[str, int]) -> Optional[Tuple[str, ...]]:
    for head in graph.nodes:
        for body, keys in graph.adj[head].items():
            if NEGATIVE in keys and component_of[head] == component_of[body]:
                return (head,) + tuple(nx.shortest_path(graph, body, head))
    return None


def check_stratified(graph: DependencyGraph) -> StratificationResult:
    """Assign strata, or report a cycle through a negative edge.

    Bodies sit in a stratum no higher than their heads, and strictly lower across a negative edge.

    :param graph: A dependency graph.
    """
    condensed = nx.condensation(graph.graph)
    component_of: Dict[str, int] = condensed.graph["mapping"]
    cycle = _witness_cycle(graph.graph, component_of)
    if cycle is not None:
        return StratificationResult(cycle=cycle)
    negative_steps: Set[Tuple[int, int]] = set()
    for head, body, polarity in graph.edges:
        if polarity == NEGATIVE:
            negative_steps.add((component_of[head], component_of[body]))
    level: Dict[int, int] = {}
    for component in reversed(list(nx.topological_sort(condensed))):
        level[component] = max(
            (level[below] + ((component, below) in negative_steps) for below in condensed.successors(component)),
            default=0,
        )
    return StratificationResult(strata={node: level[component_of[node]] for node in graph.nodes})


def stratify(graph: DependencyGraph) -> Mapping[str, int]:
    """Strata of a graph.

    :raises NonStratifiedError: With the witness cycle when the graph is not stratified.
    """
    result = check_stratified(graph)
    if not result.stratified:
        raise NonStratifiedError(result.cycle)
    return result.strata


def example_dependent_predicates(program: SketchProgram, graph: Optional[DependencyGraph] = None) -> Set[str]:
    """Predicates that depend, directly or not, on a predicate occurring in an example.

    The set includes the example predicates and the ``?q`` nodes of sketched predicates with a
    dependent candidate; constraint nodes are excluded.

    :param program: A parsed sketch.
    :param graph: Its dependency graph, when already built.
    """
    graph = graph or dependency_graph(program)
    dependent: Set[str] = set()
    for name in program.examples.predicates():
        dependent.add(name)
        dependent |= nx.ancestors(graph.graph, name)
    return {name for name in dependent if not name.startswith(CONSTRAINT_NODE)}

