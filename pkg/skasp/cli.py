"""Command-line entry point: ``skasp synth | check | emit-meta | bench``."""
import argparse
import logging
import shlex
import sys
from math import prod
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Type, Union

from ._utils.encoding import FriendlyJsonSerde
from .asp.providers.backends import BACKENDS, INTERNAL
from .bench.experiments import (
    CONVERGENCE_HEADER,
    GENERALIZATION_HEADER,
    PRECISION_HEADER,
    SKETCH_SIZE_HEADER,
    BenchOpts,
    convergence_experiment,
    example_pool,
    generalization_eval,
    precision_experiment,
    sketch_size_experiment,
    write_csv,
)
from .bench.problems import BenchProblem, get_problem, list_problems, resolve_sketch_path
from .dependency import CONSTRAINT_NODE, check_stratified, dependency_graph, example_dependent_predicates
from .exceptions import (
    BackendLimitationError,
    GroundingError,
    NonStratifiedError,
    RewriteError,
    SearchSpaceTooLargeError,
    SketchSyntaxError,
    SolverError,
    ValidationError,
)
from .lang.parser import load_sketch
from .lang.sketchvars import enumerate_sketch_vars
from .lang.types import SketchProgram
from .rewriter.emit import emit_meta
from .rewriter.meta import rewrite
from .synth.api import DEFAULT_PREFERENCES, NO_PREFERENCES, SynthOpts, result_document, synthesize
from .synth.preferences import PreferenceProfile, load_preferences

logger = logging.getLogger("skasp.cli")

EXIT_OK = 0
EXIT_NO_SOLUTION = 1
EXIT_INPUT_ERROR = 2
EXIT_NON_STRATIFIED = 3
EXIT_BACKEND_FAILURE = 4

EXPERIMENTS = ("convergence", "sketch-size", "precision", "generalization")


def _load(path: str) -> SketchProgram:
    return load_sketch(resolve_sketch_path(path).read_text())


def _solver_command(args: argparse.Namespace) -> Optional[List[str]]:
    return shlex.split(args.solver) if args.solver else None


def _preferences(value: str, program: SketchProgram) -> Union[str, PreferenceProfile]:
    if value in (NO_PREFERENCES, DEFAULT_PREFERENCES):
        return value
    return load_preferences(Path(value).read_text(), enumerate_sketch_vars(program))


def cmd_synth(args: argparse.Namespace) -> int:
    """Synthesize a sketch and print its preferred completions."""
    program = _load(args.file)
    if args.emit_meta:
        Path(args.emit_meta).write_text(emit_meta(rewrite(program)))
    opts = SynthOpts(
        backend=args.backend,
        preferences=_preferences(args.prefs, program),
        max_solutions=args.max_solutions,
        solver=_solver_command(args),
        timeout=args.solver_timeout,
    )
    result = synthesize(program, opts)
    if args.json:
        print(FriendlyJsonSerde().json_encode(result_document(result)))
    else:
        stats = result.stats
        print(
            f"% {stats.solutions} solutions, {stats.preferred} preferred, "
            f"{stats.assignments} assignments, {stats.seconds:.3f}s"
        )
        for position, substitution in enumerate(result.preferred, start=1):
            print(f"% solution {position}: {substitution}")
            print(result.programs[substitution], end="")
    return EXIT_OK if result.preferred else EXIT_NO_SOLUTION


def cmd_check(args: argparse.Namespace) -> int:
    """Validate a sketch and report its stratification and search space."""
    program = _load(args.file)
    graph = dependency_graph(program)
    stratification = check_stratified(graph)
    if not stratification.stratified:
        print(f"not stratified: {' -> '.join(stratification.cycle)}")
        return EXIT_NON_STRATIFIED
    sketch_vars = enumerate_sketch_vars(program)
    print(f"stratified, {len(program.examples)} examples")
    layers: Dict[int, List[str]] = {}
    for node, level in stratification.strata.items():
        if not node.startswith(CONSTRAINT_NODE):
            layers.setdefault(level, []).append(node)
    for level in sorted(layers):
        print(f"stratum {level} : {', '.join(sorted(layers[level]))}")
    print(f"example-dependent : {', '.join(sorted(example_dependent_predicates(program, graph)))}")
    for var in sketch_vars:
        print(f"{var.label} : {', '.join(var.domain)}")
    print(f"{prod(len(var.domain) for var in sketch_vars)} assignments")
    return EXIT_OK


def cmd_emit_meta(args: argparse.Namespace) -> int:
    """Print the meta-program of a sketch."""
    text = emit_meta(rewrite(_load(args.file)))
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return EXIT_OK


def _bench_problems(names: Optional[Sequence[str]]) -> List[BenchProblem]:
    return [get_problem(name) for name in (names or list_problems())]


def cmd_bench(args: argparse.Namespace) -> int:
    """Run experiments on bundled problems and write one CSV per experiment."""
    problems = _bench_problems(args.problem)
    experiments = args.experiment or ["convergence"]
    opts = BenchOpts(backend=args.backend, solver=_solver_command(args), timeout=args.solver_timeout)
    out = Path(args.out)
    written = []
    for problem in problems:
        if "convergence" in experiments:
            k_max = args.kmax if args.kmax is not None else len(example_pool(problem.load()))
            record = convergence_experiment(problem, k_max, args.trials, args.seed, opts)
            path = out / f"convergence_{problem.name}.csv"
            written.append(write_csv(path, CONVERGENCE_HEADER, record.rows(), args.force))
        if "sketch-size" in experiments:
            k = args.k or len(example_pool(problem.load()))
            rows = sketch_size_experiment(problem, args.sizes, k, args.trials, args.seed, opts)
            written.append(write_csv(out / f"sketch_size_{problem.name}.csv", SKETCH_SIZE_HEADER, rows, args.force))
    if "precision" in experiments:
        rows = precision_experiment(problems, opts)
        written.append(write_csv(out / "precision.csv", PRECISION_HEADER, rows, args.force))
    if "generalization" in experiments:
        rows = [row for problem in problems if problem.transfer for row in generalization_eval(problem, opts)]
        written.append(write_csv(out / "generalization.csv", GENERALIZATION_HEADER, rows, args.force))
    for path in written:
        print(path)
    return EXIT_OK


def _sizes(value: str) -> List[int]:
    try:
        return [int(size) for size in value.split(",") if size.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}") from None


def _add_backend_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--backend", choices=BACKENDS, default=INTERNAL, help="solving backend (default internal)")
    parser.add_argument("--solver", metavar="CMD", help="external solver command (default $SKASP_SOLVER or 'clingo 0')")
    parser.add_argument("--solver-timeout", metavar="SECONDS", type=float, help="external solver timeout")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser of the ``skasp`` command."""
    parser = argparse.ArgumentParser(prog="skasp", description="Complete sketched answer set programs from examples.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    synth = commands.add_parser("synth", help="synthesize the completions of a sketch")
    synth.add_argument("file", metavar="FILE", help="sketch file or bundled problem name")
    synth.add_argument("--prefs", default=DEFAULT_PREFERENCES, help="default, none, or a preference FILE")
    synth.add_argument("--max-solutions", metavar="N", type=int, help="print at most N solutions")
    synth.add_argument("--json", action="store_true", help="print a JSON report")
    synth.add_argument("--emit-meta", metavar="PATH", help="also write the meta-program to PATH")
    _add_backend_arguments(synth)
    synth.set_defaults(handler=cmd_synth)

    check = commands.add_parser("check", help="validate a sketch and check stratification")
    check.add_argument("file", metavar="FILE", help="sketch file or bundled problem name")
    check.set_defaults(handler=cmd_check)

    meta = commands.add_parser("emit-meta", help="print the meta-program of a sketch")
    meta.add_argument("file", metavar="FILE", help="sketch file or bundled problem name")
    meta.add_argument("-o", "--output", metavar="PATH", help="write to PATH instead of standard output")
    meta.set_defaults(handler=cmd_emit_meta)

    bench = commands.add_parser("bench", help="run experiments on bundled problems")
    bench.add_argument("--problem", action="append", choices=list_problems(), help="problem (repeatable; default all)")
    bench.add_argument("--experiment", action="append", choices=EXPERIMENTS, help="experiment (default convergence)")
    bench.add_argument("--kmax", type=int, help="largest number of examples (default the whole pool)")
    bench.add_argument("--k", type=int, help="number of examples of the sketch-size experiment")
    bench.add_argument("--sizes", type=_sizes, default=[1, 2, 3], help="kept sketched variables, e.g. 1,2,3")
    bench.add_argument("--trials", type=int, default=10, help="random example orders per problem")
    bench.add_argument("--seed", type=int, default=0, help="random seed")
    bench.add_argument("--out", metavar="DIR", default="out", help="output directory")
    bench.add_argument("--force", action="store_true", help="overwrite existing CSV files")
    _add_backend_arguments(bench)
    bench.set_defaults(handler=cmd_bench)
    return parser


ERROR_CODES: Dict[Type[Exception], int] = {
    NonStratifiedError: EXIT_NON_STRATIFIED,
    SketchSyntaxError: EXIT_INPUT_ERROR,
    ValidationError: EXIT_INPUT_ERROR,
    SearchSpaceTooLargeError: EXIT_INPUT_ERROR,
    ValueError: EXIT_INPUT_ERROR,
    OSError: EXIT_INPUT_ERROR,
    SolverError: EXIT_BACKEND_FAILURE,
    BackendLimitationError: EXIT_BACKEND_FAILURE,
    GroundingError: EXIT_BACKEND_FAILURE,
    RewriteError: EXIT_BACKEND_FAILURE,
}
"""Exit status of each error type; the first matching base class wins."""


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the ``skasp`` command and return its exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except tuple(ERROR_CODES) as exc:
        code = next(code for error, code in ERROR_CODES.items() if isinstance(exc, error))
        logger.debug("command failed", exc_info=True)
        print(f"skasp: error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
