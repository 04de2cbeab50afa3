"""Unit tests for skasp.rewriter.naming."""
import pytest

from skasp.exceptions import RewriteError
from skasp.lang.parser import parse_sketch
from skasp.lang.sketchvars import enumerate_sketch_vars
from skasp.rewriter.naming import make_naming, user_predicates


def test_hamiltonian_names(hamiltonian_sketch):
    """Test generated predicates and constants."""
    naming = make_naming(hamiltonian_sketch, enumerate_sketch_vars(hamiltonian_sketch))
    assert [entry.decision for entry in naming] == ["decision_p", "decision_q", "decision_not_3_0"]
    assert naming["p"].reified == "reified_p"
    assert naming["p"].choice_domain == "reified_p_choice"
    assert naming["p"].constants == {"node": "c_node", "reached": "c_reached"}
    assert naming["p"].candidate("c_reached") == "reached"
    assert naming["?not@3.0"].constants == {"pos": "pos", "neg": "neg"}
    assert naming["?not@3.0"].choice_domain is None
    assert len(naming) == 3


def test_user_predicates(hamiltonian_sketch):
    """Test the predicates a sketch mentions."""
    assert user_predicates(hamiltonian_sketch) == {"reached", "cycle", "node"}


@pytest.mark.parametrize("name", ["negsat", "examples", "decision_x", "reified_y"])
def test_reserved_names(name):
    """Test that user predicates may not collide with generated ones."""
    program = parse_sketch(f"[SKETCH]\n:- {name}(X), p(X), X ?= 1.\n[EXAMPLES]\npositive: p(1).\n")
    with pytest.raises(RewriteError):
        make_naming(program, enumerate_sketch_vars(program))
