"""Enumerate-and-test synthesis, used as the correctness oracle of the rewriting."""
import itertools
import logging
from math import prod
from typing import FrozenSet, Iterable, List, Optional, Sequence

from ..asp.evaluator import stratified_model
from ..asp.grounder import ground
from ..dependency import dependency_graph, stratify
from ..exceptions import SearchSpaceTooLargeError
from ..lang.sketchvars import enumerate_sketch_vars
from ..lang.types import AspProgram, Atom, Rule, SketchProgram, SketchVar
from .substitution import Substitution, instantiate

logger = logging.getLogger("skasp.synth.baseline")

DEFAULT_CAP = 10 ** 6
"""Largest number of substitutions the baseline agrees to enumerate."""


def example_violations(rules: Sequence[Rule], facts: Iterable[Atom], example: FrozenSet[Atom]) -> int:
    """Number of ground constraints the unique model of ``rules``, facts and example violates."""
    program = AspProgram(tuple(rules) + tuple(Rule(atom) for atom in list(facts) + list(example)))
    return len(stratified_model(ground(program), ()).violations)


def accepts(program: SketchProgram, rules: Sequence[Rule]) -> bool:
    """True when every positive example is consistent with ``rules`` and every negative one is not."""
    for _, is_positive, atoms in program.examples.indexed():
        violated = example_violations(rules, program.facts, atoms) > 0
        if violated == is_positive:
            return False
    return True


def naive_synthesize(
    program: SketchProgram, sketch_vars: Optional[Sequence[SketchVar]] = None, cap: int = DEFAULT_CAP
) -> List[Substitution]:
    """Test every substitution of a sketch against its examples, without preferences.

    :param program: A valid, stratified sketch.
    :param sketch_vars: Its sketched variables, when already enumerated.
    :param cap: Refuse search spaces larger than this.
    :returns: Accepted substitutions in lexicographic domain order.
    :raises SearchSpaceTooLargeError: When the product of the domains exceeds ``cap``.
    :raises NonStratifiedError: When the sketch is not stratified.
    """
    stratify(dependency_graph(program))
    sketch_vars = tuple(sketch_vars if sketch_vars is not None else enumerate_sketch_vars(program))
    size = prod(len(var.domain) for var in sketch_vars)
    if size > cap:
        raise SearchSpaceTooLargeError(size, cap)
    accepted: List[Substitution] = []
    for choice in itertools.product(*(var.domain for var in sketch_vars)):
        substitution = Substitution(tuple(zip((var.id for var in sketch_vars), choice)))
        if accepts(program, instantiate(program, substitution)):
            accepted.append(substitution)
    logger.debug("baseline accepted %d of %d substitutions", len(accepted), size)
    return accepted
