"""Unit tests for skasp.synth.preferences."""
import pytest

from skasp.lang.types import COMPARISON_DOMAIN, NEGATION_DOMAIN, SketchKind, SketchVar
from skasp.synth.preferences import (
    default_preferences,
    dominates,
    load_preferences,
    overlay,
    pareto_filter,
    preference_vector,
    resolve_preferences,
    sketch_preferences,
    with_vectors,
)
from skasp.synth.substitution import Substitution

COMPARISON = SketchVar("?=@1.0", SketchKind.COMPARISON, COMPARISON_DOMAIN)
NEGATION = SketchVar("?not@1.0", SketchKind.NEGATION, NEGATION_DOMAIN)
SKETCH_VARS = (COMPARISON, NEGATION)


def test_dominates():
    """Test strict Pareto dominance."""
    assert dominates((2, 1), (1, 1))
    assert not dominates((1, 1), (1, 1))
    assert not dominates((0, 2), (1, 1))
    with pytest.raises(ValueError):
        dominates((1,), (1, 1))


def test_pareto_front_of_incomparable_vectors():
    """Test that incomparable members are all kept, in order."""
    assert pareto_filter([(1, 2), (2, 1)]) == [(1, 2), (2, 1)]
    assert pareto_filter([(1, 2), (2, 1), (2, 2)]) == [(2, 2)]
    assert pareto_filter([(1, 1), (1, 1)]) == [(1, 1), (1, 1)]
    assert pareto_filter([]) == []


def test_default_preferences():
    """Test that only equality and disequality are favored."""
    profile = default_preferences(SKETCH_VARS)
    assert profile["?=@1.0"] == {"eq": 1, "neq": 1, "lt": 0, "gt": 0, "geq": 0, "leq": 0, "top": 0}
    assert profile["?not@1.0"] == {"pos": 0, "neg": 0}


def test_overlay():
    """Test that explicit scores replace the base ones."""
    merged = overlay(default_preferences(SKETCH_VARS), {"?=@1.0": {"lt": 5}})
    assert merged["?=@1.0"]["lt"] == 5
    assert merged["?=@1.0"]["eq"] == 1


def test_resolve_preferences():
    """Test that occurrence keys override token keys."""
    profile = resolve_preferences({"?=": {"lt": 3, "eq": 1}, "?=@1.0": {"eq": 2}, "?not": {"neg": 1}}, SKETCH_VARS)
    assert profile["?=@1.0"]["eq"] == 2
    assert profile["?=@1.0"]["lt"] == 3
    assert profile["?=@1.0"]["top"] == 0
    assert profile["?not@1.0"] == {"pos": 0, "neg": 1}


@pytest.mark.parametrize(
    "entries", [{"?q": {"node": 1}}, {"?=": {"like": 1}}, {"?=@1.0": {"add": 1}}, {"?=@9.0": {"eq": 1}}]
)
def test_resolve_preferences_rejects(entries):
    """Test unknown keys and candidates."""
    with pytest.raises(ValueError):
        resolve_preferences(entries, SKETCH_VARS)


def test_load_preferences():
    """Test reading a preference file."""
    profile = load_preferences("?not@1.0 : neg=4\n", SKETCH_VARS)
    assert profile["?not@1.0"]["neg"] == 4
    with pytest.raises(ValueError):
        load_preferences("?p : node=1\n", SKETCH_VARS)


def test_vectors():
    """Test preference vectors in variable order."""
    profile = default_preferences(SKETCH_VARS)
    neq = Substitution((("?=@1.0", "neq"), ("?not@1.0", "pos")))
    lt = Substitution((("?=@1.0", "lt"), ("?not@1.0", "neg")))
    assert preference_vector(neq, profile, SKETCH_VARS) == (1, 0)
    scored = with_vectors([neq, lt], profile, SKETCH_VARS)
    assert [solution.vector for solution in scored] == [(1, 0), (0, 0)]
    assert pareto_filter(scored) == [neq]
    assert [solution.vector for solution in with_vectors([neq], None, SKETCH_VARS)] == [(0, 0)]


def test_sketch_preferences():
    """Test that only variables carrying explicit preferences appear, with their listed candidates."""
    preferred = SketchVar("?=@2.0", SketchKind.COMPARISON, COMPARISON_DOMAIN, preference={"lt": 2})
    assert sketch_preferences(SKETCH_VARS + (preferred,)) == {"?=@2.0": {"lt": 2}}
