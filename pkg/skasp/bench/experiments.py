"""Experiment harness: convergence, sketch size, precision and generalization measurements.

Every experiment is deterministic given its seed. Example subsets are prefixes of a seeded random
permutation of the example pool, so the subsets of one trial are nested.
"""
import csv
import logging
import random
import statistics
from dataclasses import dataclass, replace
from math import prod
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from ..asp.providers.backends import INTERNAL, count_models, get_backend
from ..asp.providers.base import Model
from ..exceptions import SearchSpaceTooLargeError
from ..lang.parser import parse_program
from ..lang.sketchvars import enumerate_sketch_vars
from ..lang.substitute import substitute
from ..lang.types import Atom, ExampleSet, SketchProgram
from ..synth.api import DEFAULT_PREFERENCES, SynthesisResult, SynthOpts, synthesize
from .problems import BenchProblem, facts_text

logger = logging.getLogger("skasp.bench")

DEFAULT_GENERATOR_CAP = 10 ** 5
"""Largest candidate space a precision measurement agrees to enumerate."""
PREFERENCE_MODES = ("none", "default")
CONVERGENCE_HEADER = ("k", "prefs", "mean_solutions")
SKETCH_SIZE_HEADER = ("n_sketched", "k", "prefs", "mean_solutions")
PRECISION_HEADER = ("problem", "n_sketched", "precision")
GENERALIZATION_HEADER = ("problem", "solution", "models", "expected")

Example = Tuple[bool, FrozenSet[Atom]]
Row = Tuple[Union[int, float, str], ...]


class BenchOpts(NamedTuple):
    """Options shared by the experiments."""

    backend: str = INTERNAL
    """Backend used for synthesis and model counting."""
    solver: Optional[Sequence[str]] = None
    """External solver command."""
    timeout: Optional[float] = None
    """External solver timeout in seconds."""
    cap: int = DEFAULT_GENERATOR_CAP
    """Largest candidate space enumerated by :func:`precision_eval`."""

    def synth_opts(self) -> SynthOpts:
        """Synthesis options reporting both the consistent and the preferred substitutions."""
        return SynthOpts(
            backend=self.backend, preferences=DEFAULT_PREFERENCES, solver=self.solver, timeout=self.timeout
        )


@dataclass(frozen=True)
class ConvergenceRecord:
    """Solution counts per number of examples, one ``(all, preferred)`` pair per trial."""

    problem: str
    counts: Mapping[int, Tuple[Tuple[int, int], ...]]

    def mean(self, k: int, prefs: str) -> float:
        """Mean solution count at ``k`` examples without (``none``) or with (``default``) preferences."""
        column = PREFERENCE_MODES.index(prefs)
        return statistics.mean(pair[column] for pair in self.counts[k])

    def rows(self) -> List[Row]:
        """CSV rows ``k,prefs,mean_solutions``."""
        return [(k, prefs, _fmt(self.mean(k, prefs))) for k in sorted(self.counts) for prefs in PREFERENCE_MODES]


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def example_pool(program: SketchProgram) -> List[Example]:
    """Examples of a sketch as ``(is_positive, atoms)`` pairs, positives first."""
    return [(is_positive, atoms) for _, is_positive, atoms in program.examples.indexed()]


def with_examples(program: SketchProgram, examples: Iterable[Example]) -> SketchProgram:
    """The sketch with its examples replaced, keeping their relative order."""
    chosen = list(examples)
    return replace(
        program,
        examples=ExampleSet(
            tuple(atoms for is_positive, atoms in chosen if is_positive),
            tuple(atoms for is_positive, atoms in chosen if not is_positive),
        ),
    )


def example_orders(pool_size: int, trials: int, seed: int) -> List[List[int]]:
    """One seeded random permutation of the example indexes per trial.

    >>> example_orders(3, 2, 7) == example_orders(3, 2, 7)
    True
    """
    rng = random.Random(seed)
    orders = []
    for _ in range(trials):
        order = list(range(pool_size))
        rng.shuffle(order)
        orders.append(order)
    return orders


def _counts(result: SynthesisResult) -> Tuple[int, int]:
    return result.stats.solutions, result.stats.preferred


def convergence_experiment(
    problem: BenchProblem, k_max: int, trials: int = 1, seed: int = 0, opts: BenchOpts = BenchOpts()
) -> ConvergenceRecord:
    """Measure how the number of solutions shrinks as examples are added.

    For ``k = 0..k_max`` and every trial, the sketch is solved with the first ``k`` examples of the
    trial's permutation, counting consistent and preferred substitutions. With no examples every
    substitution is consistent.

    :raises ValueError: When ``k_max`` exceeds the example pool.
    """
    program = problem.load()
    pool = example_pool(program)
    if not 0 <= k_max <= len(pool):
        raise ValueError(f"k_max must be between 0 and {len(pool)}, got {k_max}")
    counts: Dict[int, List[Tuple[int, int]]] = {k: [] for k in range(k_max + 1)}
    for trial, order in enumerate(example_orders(len(pool), trials, seed)):
        for k in range(k_max + 1):
            result = synthesize(with_examples(program, (pool[index] for index in order[:k])), opts.synth_opts())
            counts[k].append(_counts(result))
        logger.debug("convergence %s trial %d: %s", problem.name, trial, [counts[k][-1] for k in counts])
    return ConvergenceRecord(problem.name, {k: tuple(pairs) for k, pairs in counts.items()})


def sketch_size_experiment(
    problem: BenchProblem, sizes: Sequence[int], k: int, trials: int = 1, seed: int = 0, opts: BenchOpts = BenchOpts()
) -> List[Row]:
    """Measure solution counts when only ``n`` randomly chosen variables stay sketched.

    The other variables are fixed to their intended candidates.

    :returns: Rows ``n_sketched,k,prefs,mean_solutions``.
    :raises ValueError: When a size or ``k`` is out of range.
    """
    program = problem.load()
    sketch_vars = enumerate_sketch_vars(program)
    pool = example_pool(program)
    if not 0 < k <= len(pool):
        raise ValueError(f"k must be between 1 and {len(pool)}, got {k}")
    rng = random.Random(seed)
    rows: List[Row] = []
    for size in sizes:
        if not 0 <= size <= len(sketch_vars):
            raise ValueError(f"cannot keep {size} of {len(sketch_vars)} variables sketched")
        pairs = []
        for _ in range(trials):
            kept = {var.id for var in rng.sample(list(sketch_vars), size)}
            fixed = {var.id: problem.intended[var.id] for var in sketch_vars if var.id not in kept}
            order = list(range(len(pool)))
            rng.shuffle(order)
            partial = with_examples(substitute(program, fixed), (pool[index] for index in order[:k]))
            pairs.append(_counts(synthesize(partial, opts.synth_opts())))
        for column, prefs in enumerate(PREFERENCE_MODES):
            rows.append((size, k, prefs, _fmt(statistics.mean(pair[column] for pair in pairs))))
    return rows


def _candidate_program(problem: BenchProblem, generator: str, learned: str) -> str:
    return "\n".join((problem.read(generator), facts_text(problem.load()), learned))


def _models(text: str, opts: BenchOpts) -> List[Model]:
    program = parse_program(text)
    size = prod(len(block.atoms) for block in program.choices)
    if size > opts.cap:
        raise SearchSpaceTooLargeError(size, opts.cap)
    return get_backend(opts.backend, opts.solver, opts.timeout).solve(program)


def precision_eval(learned: str, problem: BenchProblem, opts: BenchOpts = BenchOpts()) -> float:
    """Share of the structures accepted by ``learned`` that the intended program also accepts.

    Both programs run on top of the problem's candidate generator and the sketch's facts.
    An empty acceptance set scores 1 when the intended program accepts nothing either, 0 otherwise.

    :param learned: A completed (sketch-free) program.
    :raises ValueError: When the problem has no generator.
    :raises SearchSpaceTooLargeError: When the candidate space exceeds ``opts.cap``.
    """
    if problem.generator is None or problem.truth is None:
        raise ValueError(f"problem {problem.name} has no candidate generator")
    accepted = set(_models(_candidate_program(problem, problem.generator, learned), opts))
    intended = set(_models(_candidate_program(problem, problem.generator, problem.read(problem.truth)), opts))
    if not accepted:
        return 1.0 if not intended else 0.0
    return len(accepted & intended) / len(accepted)


def _learn(problem: BenchProblem, opts: BenchOpts) -> SynthesisResult:
    return synthesize(problem.load(), opts.synth_opts())


def precision_experiment(problems: Iterable[BenchProblem], opts: BenchOpts = BenchOpts()) -> List[Row]:
    """Precision of the programs learned from each full example pool, averaged over the preferred set.

    Problems without a generator are skipped.

    :returns: Rows ``problem,n_sketched,precision``.
    """
    rows: List[Row] = []
    for problem in problems:
        if problem.generator is None:
            continue
        result = _learn(problem, opts)
        scores = [precision_eval(result.programs[solution], problem, opts) for solution in result.preferred]
        rows.append((problem.name, len(result.sketch_vars), _fmt(statistics.mean(scores) if scores else 0.0)))
    return rows


def generalization_eval(problem: BenchProblem, opts: BenchOpts = BenchOpts()) -> List[Row]:
    """Count the models of every preferred program learned on the small examples on a larger instance.

    :returns: Rows ``problem,solution,models,expected``.
    :raises ValueError: When the problem has no transfer generator.
    """
    if problem.transfer is None:
        raise ValueError(f"problem {problem.name} has no transfer generator")
    result = _learn(problem, opts)
    rows: List[Row] = []
    for solution in result.preferred:
        text = _candidate_program(problem, problem.transfer, result.programs[solution])
        models = count_models(text, opts.backend, opts.solver, opts.timeout)
        rows.append((problem.name, str(solution), models, problem.transfer_models or ""))
    return rows


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Row], force: bool = False) -> Path:
    """Write a CSV file, creating its directory.

    :raises FileExistsError: When the file exists and ``force`` is not set.
    """
    if path.exists() and not force:
        raise FileExistsError(f"{path} exists, use --force to overwrite it")
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    logger.debug("wrote %s", path)
    return path
