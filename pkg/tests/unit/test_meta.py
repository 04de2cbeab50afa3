"""Unit tests for skasp.rewriter.meta and skasp.rewriter.emit."""
import pytest

from skasp.bench.problems import NON_STRATIFIED, get_problem, list_problems, resolve_sketch_path
from skasp.exceptions import NonStratifiedError
from skasp.lang.parser import load_sketch, parse_program
from skasp.lang.sketchvars import enumerate_sketch_vars
from skasp.rewriter.emit import emit_meta
from skasp.rewriter.meta import STAGE_CONSTRAINTS, STAGE_DECISIONS, STAGES, rewrite


def test_one_choice_per_variable(hamiltonian_sketch):
    """Test that every sketched variable gets one exactly-one block."""
    meta = rewrite(hamiltonian_sketch)
    assert [block.label for block in meta.choices] == ["decision_p", "decision_q", "decision_not_3_0"]
    assert meta.sketch_vars == enumerate_sketch_vars(hamiltonian_sketch)
    assert meta.example_var == "E"
    assert len(meta.provenance) == len(meta.rules)


def test_meta_program_shows_decisions(hamiltonian_sketch):
    """Test the plain program handed to the backends."""
    program = rewrite(hamiltonian_sketch).program()
    assert program.shows == (("decision_p", 1), ("decision_q", 1), ("decision_not_3_0", 1))


def test_emit_hamiltonian(hamiltonian_sketch):
    """Test the textual meta-program."""
    text = emit_meta(rewrite(hamiltonian_sketch))
    lines = text.splitlines()
    assert [line for line in lines if line.startswith("% ")] == [f"% {stage}" for stage in STAGES]
    assert "positive(0)." in lines
    assert "negative(1)." in lines
    assert "cycle(0,a,b)." in lines
    assert "cycle(1,b,a)." in lines
    assert "node(a)." in lines
    assert "reified_p_choice(c_node)." in lines
    assert "1 { decision_p(X) : reified_p_choice(X) } 1." in lines
    assert "1 { decision_not_3_0(pos) ; decision_not_3_0(neg) } 1." in lines
    assert "reified_p(E,c_node,X0) :- node(X0), examples(E)." in lines
    assert "reified_p(E,c_reached,X0) :- reached(E,X0)." in lines
    assert ":- negative(E), not negsat(E)." in lines
    assert lines[-3:] == ["#show decision_p/1.", "#show decision_q/1.", "#show decision_not_3_0/1."]
    assert "?" not in text


def test_emit_is_deterministic(hamiltonian_sketch):
    """Test that rewriting twice prints the same text."""
    assert emit_meta(rewrite(hamiltonian_sketch)) == emit_meta(rewrite(hamiltonian_sketch))


@pytest.mark.parametrize("name", list_problems())
def test_emitted_text_parses(name):
    """Test that every emitted meta-program is a plain program."""
    meta = rewrite(get_problem(name).load())
    program = parse_program(emit_meta(meta))
    assert len(program.choices) == len(meta.choices)
    assert len(program.rules) == len(meta.rules)


def test_constraints_are_split(hamiltonian_sketch):
    """Test that each constraint yields a positive and a negative form."""
    meta = rewrite(hamiltonian_sketch)
    split = [rule for rule, origin in zip(meta.rules, meta.provenance) if origin.stage == STAGE_CONSTRAINTS]
    from_rule_3 = [rule for rule, origin in zip(meta.rules, meta.provenance) if origin.source == 3]
    assert any(rule.head is not None and rule.head.predicate == "negsat" for rule in from_rule_3)
    assert len(split) >= 3
    assert any(origin.stage == STAGE_DECISIONS for origin in meta.provenance)


def test_rewrite_rejects_non_stratified():
    """Test that the rewriter refuses a cycle through negation."""
    program = load_sketch(resolve_sketch_path(NON_STRATIFIED).read_text())
    with pytest.raises(NonStratifiedError):
        rewrite(program)


def test_sibling_aggregates_reuse_local_variables():
    """Test that sketched aggregates sharing element variables reify independently."""
    sketch = load_sketch(
        """
[SKETCH]
:- S1 != S2, S1 = ?#{V,X : val(X,V), left(X)}, S2 = ?#{V,X : val(X,V), right(X)}.
[FACTS]
val(1,1). val(2,2). val(3,3).
[EXAMPLES]
positive: left(3). right(1). right(2).
"""
    )
    meta = rewrite(sketch)
    assert [block.label for block in meta.choices] == ["decision_agg_1_0", "decision_agg_1_1"]
    program = parse_program(emit_meta(meta))
    assert len(program.rules) == len(meta.rules)


def test_top_comparison_over_arithmetic_has_its_own_rule():
    """Test that the top candidate of a comparison over sketched arithmetic skips the arithmetic."""
    sketch = load_sketch("[SKETCH]\n:- p(X), q(Y), r(Z), X ?+ Y ?= Z.\n[EXAMPLES]\npositive: p(4). q(0). r(4).\n")
    lines = emit_meta(rewrite(sketch)).splitlines()
    top_rules = [line for line in lines if "decision_cmp_1_0(top)" in line and not line.startswith("1 {")]
    assert top_rules
    assert all("reified_arith_1_0" not in line for line in top_rules)
    assert not any(line.startswith("reified_cmp_1_0(top") for line in lines)
