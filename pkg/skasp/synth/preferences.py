"""Preference profiles and Pareto filtering of substitutions.

A profile maps each sketched variable to a score per candidate; larger is more preferred. A
substitution dominates another when its score vector is pointwise greater or equal with at least
one strict coordinate.
"""
import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ..lang.parser import parse_preferences
from ..lang.types import OPERATOR_DOMAINS, OPERATOR_TOKENS, SketchKind, SketchVar
from .substitution import Substitution

logger = logging.getLogger("skasp.synth.preferences")

PreferenceProfile = Mapping[str, Mapping[str, int]]
"""Variable id to candidate to score."""

DEFAULT_COMPARISON_SCORES = {"eq": 1, "neq": 1}
"""Default scores of comparison candidates; every other candidate scores 0."""


def _complete(var: SketchVar, scores: Mapping[str, int]) -> Dict[str, int]:
    return {candidate: scores.get(candidate, 0) for candidate in var.domain}


def default_preferences(sketch_vars: Sequence[SketchVar]) -> Dict[str, Dict[str, int]]:
    """Profile favoring ``=`` and ``!=`` for comparisons and neutral for every other kind.

    >>> from skasp.lang.types import COMPARISON_DOMAIN
    >>> default_preferences([SketchVar("?=@1.0", SketchKind.COMPARISON, COMPARISON_DOMAIN)])["?=@1.0"]["neq"]
    1
    """
    return {
        var.id: _complete(var, DEFAULT_COMPARISON_SCORES if var.kind is SketchKind.COMPARISON else {})
        for var in sketch_vars
    }


def sketch_preferences(sketch_vars: Sequence[SketchVar]) -> Dict[str, Dict[str, int]]:
    """Explicit preferences stored on the variables, only for the candidates they list.

    >>> var = SketchVar("?=@1.0", SketchKind.COMPARISON, ("eq", "lt"), preference={"lt": 2})
    >>> sketch_preferences([var])
    {'?=@1.0': {'lt': 2}}
    """
    return {var.id: dict(var.preference) for var in sketch_vars if var.preference}


def overlay(base: PreferenceProfile, explicit: Mapping[str, Mapping[str, int]]) -> Dict[str, Dict[str, int]]:
    """``base`` with the candidates listed in ``explicit`` replaced."""
    merged = {var_id: dict(scores) for var_id, scores in base.items()}
    for var_id, scores in explicit.items():
        merged.setdefault(var_id, {}).update(scores)
    return merged


def resolve_preferences(
    entries: Mapping[str, Mapping[str, int]], sketch_vars: Sequence[SketchVar]
) -> Dict[str, Dict[str, int]]:
    """Resolve preference keys (``?q``, occurrence ids, bare tokens) into a total profile.

    Occurrence entries override kind-wide token entries.

    :raises ValueError: On an unknown key or candidate.
    """
    by_key = {var.label: var for var in sketch_vars}
    for key, scores in entries.items():
        if key in OPERATOR_TOKENS:
            domain = set(OPERATOR_DOMAINS[OPERATOR_TOKENS[key]])
        elif key in by_key:
            domain = set(by_key[key].domain)
        else:
            raise ValueError(f"preference for unknown sketched variable {key}")
        unknown = sorted(set(scores) - domain)
        if unknown:
            raise ValueError(f"unknown candidate {unknown[0]} for {key}")
    profile: Dict[str, Dict[str, int]] = {}
    for var in sketch_vars:
        scores: Dict[str, int] = {}
        if var.kind is not SketchKind.PREDICATE:
            scores.update(entries.get(var.kind.token, {}))
        scores.update(entries.get(var.label, {}))
        profile[var.id] = _complete(var, scores)
    return profile


def load_preferences(text: str, sketch_vars: Sequence[SketchVar]) -> Dict[str, Dict[str, int]]:
    """Read a preference file and resolve it against the variables of a sketch.

    :raises SketchSyntaxError: On a malformed line.
    :raises ValueError: On an unknown key or candidate.
    """
    return resolve_preferences(parse_preferences(text), sketch_vars)


def preference_vector(
    substitution: Substitution, profile: PreferenceProfile, sketch_vars: Sequence[SketchVar]
) -> Tuple[int, ...]:
    """Scores of the chosen candidates, in variable order."""
    chosen = substitution.as_dict()
    return tuple(profile.get(var.id, {}).get(chosen[var.id], 0) for var in sketch_vars)


Scored = Union[Substitution, Sequence[int]]


def _vector(item: Scored) -> Tuple[int, ...]:
    return item.vector if isinstance(item, Substitution) else tuple(item)


def dominates(a: Scored, b: Scored) -> bool:
    """True when ``a`` is pointwise at least as preferred as ``b`` and strictly more on one variable.

    >>> dominates((2, 2), (1, 2)), dominates((1, 2), (2, 1)), dominates((1, 1), (1, 1))
    (True, False, False)
    """
    left, right = _vector(a), _vector(b)
    if len(left) != len(right):
        raise ValueError("preference vectors have different lengths")
    return all(x >= y for x, y in zip(left, right)) and any(x > y for x, y in zip(left, right))


def pareto_filter(solutions: Sequence[Scored]) -> List[Scored]:
    """Members not dominated by any other member, in their original order.

    >>> pareto_filter([(1, 2), (2, 1), (2, 2)])
    [(2, 2)]
    """
    front = [
        candidate
        for position, candidate in enumerate(solutions)
        if not any(dominates(other, candidate) for index, other in enumerate(solutions) if index != position)
    ]
    logger.debug("Pareto front size: %d / %d", len(front), len(solutions))
    return front


def with_vectors(
    solutions: Sequence[Substitution], profile: Optional[PreferenceProfile], sketch_vars: Sequence[SketchVar]
) -> List[Substitution]:
    """Attach the preference vectors of ``profile`` (all zeros without one)."""
    return [
        Substitution(
            solution.assignment,
            preference_vector(solution, profile, sketch_vars) if profile is not None else (0,) * len(sketch_vars),
        )
        for solution in solutions
    ]
