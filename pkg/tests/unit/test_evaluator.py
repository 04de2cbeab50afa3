"""Unit tests for skasp.asp.evaluator."""
import pytest

from skasp.asp.evaluator import SearchStats, enumerate_answer_sets, stratified_model
from skasp.asp.grounder import ground
from skasp.asp.terms import GroundAtom
from skasp.lang.parser import parse_program

A, B, C, D = (GroundAtom(name) for name in "abcd")


def test_stratified_model_of_decision():
    """Test the unique model of one decision assignment."""
    grounded = ground(parse_program("1 { a ; b } 1. c :- a. d :- not c. :- d."))
    chosen_a = stratified_model(grounded, [A])
    assert chosen_a.model == {A, C}
    assert chosen_a.consistent
    chosen_b = stratified_model(grounded, [B])
    assert chosen_b.model == {B, D}
    assert not chosen_b.consistent


def test_decision_must_pick_one_atom_per_block():
    """Test that decisions are checked against the blocks."""
    grounded = ground(parse_program("1 { a ; b } 1."))
    with pytest.raises(ValueError):
        stratified_model(grounded, [A, B])


def test_enumeration_order_and_stats():
    """Test lexicographic enumeration and complete coverage of the assignments."""
    stats = SearchStats()
    models = enumerate_answer_sets(ground(parse_program("1 { a ; b } 1. 1 { c ; d } 1. :- a, c.")), stats=stats)
    assert models == [frozenset({A, D}), frozenset({B, C}), frozenset({B, D})]
    assert stats.assignments == 4
    assert stats.answer_sets == 3
    assert stats.covered == stats.assignments


def test_pruning_counts_skipped_assignments():
    """Test that a constraint on the first block prunes the rest of the search."""
    stats = SearchStats()
    models = enumerate_answer_sets(ground(parse_program("1 { a ; b } 1. 1 { c ; d } 1. :- a.")), stats=stats)
    assert len(models) == 2
    assert stats.pruned == 2
    assert stats.covered == 4


def test_limit():
    """Test stopping after a number of answer sets."""
    grounded = ground(parse_program("1 { a ; b } 1. 1 { c ; d } 1."))
    assert len(enumerate_answer_sets(grounded, limit=3)) == 3


def test_choice_dependent_aggregate():
    """Test an aggregate whose elements depend on the decisions."""
    text = "1 { x(1) ; x(2) ; x(3) } 1. 1 { y(1) ; y(2) } 1. big :- S = #sum{V : x(V)}, S > 2. :- big."
    grounded = ground(parse_program(text))
    assert len(enumerate_answer_sets(grounded)) == 4
