"""Synthesis pipeline: rewrite, solve, extract substitutions and filter by preference."""
import logging
import time
from dataclasses import dataclass
from math import prod
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from typing_extensions import TypedDict

from ..asp.providers.backends import INTERNAL, get_backend
from ..asp.providers.base import BaseSolver
from ..asp.providers.internal import InternalSolver
from ..lang.types import SketchProgram, SketchVar
from ..rewriter.meta import rewrite
from .preferences import (
    PreferenceProfile,
    default_preferences,
    overlay,
    pareto_filter,
    sketch_preferences,
    with_vectors,
)
from .substitution import Substitution, apply_substitution, extract_substitutions

logger = logging.getLogger("skasp.synth")

NO_PREFERENCES = "none"
DEFAULT_PREFERENCES = "default"


class SynthOpts(NamedTuple):
    """Options of :func:`synthesize`."""

    backend: str = INTERNAL
    """``internal`` (built-in grounder and evaluator) or ``external`` (solver subprocess)."""
    preferences: Union[str, PreferenceProfile] = DEFAULT_PREFERENCES
    """``none``, ``default`` (equality and disequality favored, overlaid by the sketch's own
    preferences), or an explicit profile."""
    max_solutions: Optional[int] = None
    """Report at most this many substitutions; statistics still count all of them."""
    solver: Optional[Sequence[str]] = None
    """External solver command; defaults to ``$SKASP_SOLVER`` or ``clingo 0``."""
    timeout: Optional[float] = None
    """External solver timeout in seconds."""


@dataclass(frozen=True)
class SynthesisStats:
    """Counters of one synthesis run."""

    assignments: int
    """Size of the substitution space."""
    evaluated: int
    """Assignments evaluated by the internal backend (0 for the external one)."""
    pruned: int
    """Assignments excluded early by the internal backend."""
    answer_sets: int
    solutions: int
    """Distinct consistent substitutions."""
    preferred: int
    seconds: float


@dataclass(frozen=True)
class SynthesisResult:
    """Consistent and preferred substitutions with their completed programs."""

    sketch_vars: Tuple[SketchVar, ...]
    all: Tuple[Substitution, ...]
    preferred: Tuple[Substitution, ...]
    programs: Mapping[Substitution, str]
    """Completed program text of every reported substitution."""
    stats: SynthesisStats


def get_solver(opts: SynthOpts) -> BaseSolver:
    """Backend named by the options.

    :raises ValueError: On an unknown backend name.
    """
    return get_backend(opts.backend, opts.solver, opts.timeout)


def resolve_profile(
    preferences: Union[str, PreferenceProfile], sketch_vars: Sequence[SketchVar]
) -> Optional[Dict[str, Dict[str, int]]]:
    """Profile to filter with; ``None`` disables filtering.

    :raises ValueError: On an unknown preference mode.
    """
    if isinstance(preferences, str):
        if preferences == NO_PREFERENCES:
            return None
        if preferences == DEFAULT_PREFERENCES:
            return overlay(default_preferences(sketch_vars), sketch_preferences(sketch_vars))
        raise ValueError(f"unknown preference mode {preferences!r}")
    return overlay(default_preferences(sketch_vars), preferences)


def synthesize(program: SketchProgram, opts: SynthOpts = SynthOpts()) -> SynthesisResult:
    """Find the substitutions completing a sketch consistently with its examples.

    :param program: A valid, stratified sketch.
    :param opts: Backend, preference and output options.
    :raises NonStratifiedError: When the sketch is not stratified.
    :raises SolverError: When the external backend fails.
    """
    started = time.perf_counter()
    meta = rewrite(program)
    sketch_vars = meta.sketch_vars
    solver = get_solver(opts)
    models = solver.solve(meta.program())
    found = extract_substitutions(models, sketch_vars, meta.naming)
    profile = resolve_profile(opts.preferences, sketch_vars)
    scored = with_vectors(found, profile, sketch_vars)
    preferred: List[Substitution] = list(pareto_filter(scored)) if profile is not None else list(scored)
    internal = isinstance(solver, InternalSolver)
    stats = SynthesisStats(
        assignments=prod(len(var.domain) for var in sketch_vars),
        evaluated=solver.stats.evaluated if internal else 0,
        pruned=solver.stats.pruned if internal else 0,
        answer_sets=len(models),
        solutions=len(scored),
        preferred=len(preferred),
        seconds=time.perf_counter() - started,
    )
    reported_all = tuple(scored[: opts.max_solutions])
    reported = tuple(preferred[: opts.max_solutions])
    programs = {
        substitution: apply_substitution(program, substitution, sketch_vars)
        for substitution in reported_all + reported
    }
    logger.debug(
        "synthesized %d solutions, %d preferred, from %d answer sets in %.3fs",
        stats.solutions,
        stats.preferred,
        stats.answer_sets,
        stats.seconds,
    )
    return SynthesisResult(sketch_vars, reported_all, reported, programs, stats)


class SubstitutionDocument(TypedDict):
    """JSON form of a substitution."""

    assignment: Dict[str, str]
    preference: List[int]
    program: str


class SynthesisDocument(TypedDict):
    """JSON form of a synthesis result."""

    variables: List[str]
    all: List[SubstitutionDocument]
    preferred: List[SubstitutionDocument]
    stats: Dict[str, Union[int, float]]


def result_document(result: SynthesisResult) -> SynthesisDocument:
    """Machine-readable form of a result, for ``--json`` output."""

    def entry(substitution: Substitution) -> SubstitutionDocument:
        return SubstitutionDocument(
            assignment={var.label: substitution[var.id] for var in result.sketch_vars},
            preference=list(substitution.vector),
            program=result.programs[substitution],
        )

    return SynthesisDocument(
        variables=[var.label for var in result.sketch_vars],
        all=[entry(substitution) for substitution in result.all],
        preferred=[entry(substitution) for substitution in result.preferred],
        stats=dict(vars(result.stats)),
    )
