"""Unit tests for skasp.synth.api."""
import pytest

from skasp._utils.encoding import FriendlyJsonSerde
from skasp.bench.problems import get_problem, list_problems
from skasp.lang.parser import load_sketch
from skasp.synth.api import NO_PREFERENCES, SynthOpts, resolve_profile, result_document, synthesize

LARGE_PROBLEMS = {"latin_square", "sudoku4", "nqueens", "bw_queens"}


def test_hamiltonian(hamiltonian_sketch):
    """Test synthesis without preferences."""
    result = synthesize(hamiltonian_sketch, SynthOpts(preferences=NO_PREFERENCES))
    assert result.stats.solutions == 1
    assert result.stats.assignments == 8
    assert result.preferred == result.all
    (solution,) = result.all
    assert str(solution) == "?p=node, ?q=reached, ?not@3.0=neg"
    assert ":- node(Y), not reached(Y)." in result.programs[solution]


def test_default_preferences(small_comparison_sketch):
    """Test that the default profile keeps disequality only."""
    result = synthesize(small_comparison_sketch)
    assert [solution["?=@1.0"] for solution in result.all] == ["neq", "lt", "gt"]
    assert [solution["?=@1.0"] for solution in result.preferred] == ["neq"]
    assert result.preferred[0].vector == (1,)
    assert result.stats.answer_sets == 3
    assert result.stats.preferred == 1


def test_explicit_profile(small_comparison_sketch):
    """Test that an explicit profile overlays the default one."""
    result = synthesize(small_comparison_sketch, SynthOpts(preferences={"?=@1.0": {"lt": 2}}))
    assert [solution["?=@1.0"] for solution in result.preferred] == ["lt"]


def test_max_solutions(small_comparison_sketch):
    """Test that truncation keeps the counters whole."""
    result = synthesize(small_comparison_sketch, SynthOpts(preferences=NO_PREFERENCES, max_solutions=1))
    assert len(result.all) == 1
    assert result.stats.solutions == 3
    assert set(result.programs) == {result.all[0]}


@pytest.mark.parametrize(
    "name, expected",
    [
        ("equal_subset_sum", {"?#@1.0": "sum", "?#@1.1": "sum"}),
        ("celebrities", {"?#@1.0": "count", "?#@2.0": "count"}),
    ],
)
def test_sketched_aggregates(name, expected):
    """Test sketches whose only unknowns are aggregate functions."""
    result = synthesize(get_problem(name).load())
    assert expected in [solution.as_dict() for solution in result.preferred]


@pytest.mark.parametrize(
    "name",
    [
        pytest.param(name, marks=pytest.mark.slow) if name in LARGE_PROBLEMS else name
        for name in list_problems()
    ],
)
def test_intended_is_preferred(name):
    """Test that every bundled problem learns its intended program."""
    problem = get_problem(name)
    result = synthesize(problem.load())
    assert dict(problem.intended) in [solution.as_dict() for solution in result.preferred]


def test_resolve_profile(hamiltonian_sketch, small_comparison_sketch):
    """Test the preference modes."""
    result = synthesize(small_comparison_sketch)
    assert resolve_profile(NO_PREFERENCES, result.sketch_vars) is None
    assert resolve_profile("default", result.sketch_vars)["?=@1.0"]["eq"] == 1
    with pytest.raises(ValueError, match="unknown preference mode"):
        resolve_profile("best", result.sketch_vars)
    with pytest.raises(ValueError, match="unknown backend"):
        synthesize(hamiltonian_sketch, SynthOpts(backend="remote"))


def test_result_document(small_comparison_sketch):
    """Test the JSON report."""
    result = synthesize(small_comparison_sketch)
    document = FriendlyJsonSerde().json_decode(FriendlyJsonSerde().json_encode(result_document(result)))
    assert document["variables"] == ["?=@1.0"]
    assert [entry["assignment"] for entry in document["preferred"]] == [{"?=@1.0": "neq"}]
    assert document["preferred"][0]["preference"] == [1]
    assert document["preferred"][0]["program"] == ":- p(X), p(Y), X != Y.\n"
    assert document["stats"]["solutions"] == 3
    assert len(document["all"]) == 3


def test_sketch_preferences_overlay_defaults():
    """Test that preferences written in the sketch replace only the candidates they list."""
    sketch = load_sketch(
        """
[SKETCH]
:- p(X), p(Y), X ?= Y.
[EXAMPLES]
positive: p(1).
negative: p(1). p(2).
[PREFERENCES]
?=@1.0 : lt=2
"""
    )
    result = synthesize(sketch)
    profile = resolve_profile("default", result.sketch_vars)
    assert profile["?=@1.0"] == {"eq": 1, "neq": 1, "lt": 2, "gt": 0, "geq": 0, "leq": 0, "top": 0}
    assert [solution.as_dict() for solution in result.preferred] == [{"?=@1.0": "lt"}]
