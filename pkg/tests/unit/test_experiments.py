"""Unit tests for skasp.bench.experiments."""
import pytest

from skasp.asp.providers.backends import count_models
from skasp.bench.experiments import (
    CONVERGENCE_HEADER,
    BenchOpts,
    convergence_experiment,
    example_orders,
    example_pool,
    precision_eval,
    precision_experiment,
    sketch_size_experiment,
    with_examples,
    write_csv,
)
from skasp.bench.problems import facts_text
from skasp.exceptions import SearchSpaceTooLargeError


def test_example_pool(hamiltonian_sketch):
    """Test that positives come first."""
    pool = example_pool(hamiltonian_sketch)
    assert [is_positive for is_positive, _ in pool] == [True, False]
    reversed_examples = with_examples(hamiltonian_sketch, reversed(pool))
    assert reversed_examples.examples == hamiltonian_sketch.examples


def test_example_orders():
    """Test that orders are seeded permutations."""
    orders = example_orders(5, 3, 11)
    assert orders == example_orders(5, 3, 11)
    assert all(sorted(order) == list(range(5)) for order in orders)
    assert len(orders) == 3


def test_convergence(hamiltonian):
    """Test that solution counts shrink to the intended program."""
    record = convergence_experiment(hamiltonian, 2, trials=2, seed=3)
    assert record.mean(2, "none") == 1
    assert record.mean(1, "none") >= record.mean(2, "none")
    for pairs in record.counts.values():
        assert all(preferred <= solutions for solutions, preferred in pairs)
    rows = record.rows()
    assert [row[:2] for row in rows] == [
        (0, "none"),
        (0, "default"),
        (1, "none"),
        (1, "default"),
        (2, "none"),
        (2, "default"),
    ]
    assert rows[4][2] == "1.0000"


def test_convergence_range(hamiltonian):
    """Test that k_max must fit the pool."""
    with pytest.raises(ValueError):
        convergence_experiment(hamiltonian, 3)
    with pytest.raises(ValueError):
        convergence_experiment(hamiltonian, -1)


def test_sketch_size(hamiltonian):
    """Test that keeping no variable sketched leaves the intended program."""
    rows = sketch_size_experiment(hamiltonian, [0, 3], 2, trials=1, seed=0)
    assert rows[:2] == [(0, 2, "none", "1.0000"), (0, 2, "default", "1.0000")]
    assert rows[2] == (3, 2, "none", "1.0000")
    with pytest.raises(ValueError):
        sketch_size_experiment(hamiltonian, [4], 2)


def test_precision_of_the_intended_program(nqueens):
    """Test that the intended program is perfectly precise."""
    assert precision_eval(nqueens.read(nqueens.truth), nqueens) == 1.0


def test_precision_of_the_empty_program(nqueens):
    """Test that accepting every placement scores the share of real solutions."""
    assert precision_eval("", nqueens) == 2 / 256


def test_precision_needs_a_generator(hamiltonian, nqueens):
    """Test problems without a generator and oversized spaces."""
    with pytest.raises(ValueError, match="no candidate generator"):
        precision_eval("", hamiltonian)
    with pytest.raises(SearchSpaceTooLargeError):
        precision_eval("", nqueens, BenchOpts(cap=100))
    assert precision_experiment([hamiltonian]) == []


def test_latin_square_models(latin_square):
    """Test the number of 3x3 Latin squares."""
    text = "\n".join(
        (
            latin_square.read(latin_square.generator),
            facts_text(latin_square.load()),
            latin_square.read(latin_square.truth),
        )
    )
    assert count_models(text) == 12


def test_write_csv(tmp_path):
    """Test that existing files need force."""
    path = tmp_path / "out" / "convergence_x.csv"
    write_csv(path, CONVERGENCE_HEADER, [(1, "none", "2.0000")])
    assert path.read_text() == "k,prefs,mean_solutions\n1,none,2.0000\n"
    with pytest.raises(FileExistsError):
        write_csv(path, CONVERGENCE_HEADER, [])
    write_csv(path, CONVERGENCE_HEADER, [], force=True)
    assert path.read_text() == "k,prefs,mean_solutions\n"


def test_convergence_without_examples(hamiltonian):
    """Test that no examples leave the whole search space."""
    record = convergence_experiment(hamiltonian, 0, trials=2, seed=1)
    assert list(record.counts) == [0]
    assert record.mean(0, "none") == 8
    assert record.rows()[0] == (0, "none", "8.0000")
