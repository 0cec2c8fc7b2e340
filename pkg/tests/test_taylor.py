import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edge_powers.betti import betti_number, betti_table
from edge_powers.config import SizeCapError
from edge_powers.fields import FieldSpec
from edge_powers.generators import gen_random_ideal
from edge_powers.ideals import SquarefreeIdeal, ZeroIdealError, lcm_lattice
from edge_powers.taylor import taylor_strand_betti


def test_single_generator():
    ideal = SquarefreeIdeal.from_names(["x1", "x2"], [["x1", "x2"]])
    assert taylor_strand_betti(ideal, 0b11) == {0: 1}


def test_path_ideal(path_ideal):
    assert taylor_strand_betti(path_ideal, 0b111) == {1: 1}
    assert taylor_strand_betti(path_ideal, 0b101) == {}


def test_gap_ideal(gap_ideal):
    assert taylor_strand_betti(gap_ideal, 0b1111) == {1: 1}


def test_non_minimal_strand_cancels():
    # three generators sharing x2 make the full lcm a cancelling strand
    ideal = SquarefreeIdeal.from_names(
        ["x1", "x2", "x3", "x4"], [["x1", "x2"], ["x2", "x3"], ["x2", "x4"]]
    )
    assert taylor_strand_betti(ideal, 0b1111) == betti_number(ideal, 0b1111)


def test_zero_ideal():
    with pytest.raises(ZeroIdealError):
        taylor_strand_betti(SquarefreeIdeal(("x",), ()), 0)


def test_cap(gap_ideal):
    with pytest.raises(SizeCapError):
        taylor_strand_betti(gap_ideal, 0b1111, cap=1)


@settings(max_examples=40, deadline=None)
@given(
    n_vars=st.integers(min_value=2, max_value=6),
    n_gens=st.integers(min_value=1, max_value=7),
    seed=st.integers(min_value=0, max_value=2**32),
    field=st.sampled_from(["q", "f2"]),
)
def test_agrees_with_hochster(n_vars, n_gens, seed, field):
    ideal = gen_random_ideal(n_vars, n_gens, seed)
    field_spec = FieldSpec.parse(field)
    for alpha in lcm_lattice(ideal):
        assert taylor_strand_betti(ideal, alpha, field_spec) == betti_number(ideal, alpha, field_spec)


@pytest.mark.slow
@pytest.mark.parametrize("field", ["q", "f2"])
def test_betti_tables_match_taylor_on_hundred_ideals(field):
    field_spec = FieldSpec.parse(field)
    for seed in range(100):
        n_vars = 2 + seed % 9
        n_gens = 1 + (seed * 7) % 10
        ideal = gen_random_ideal(n_vars, n_gens, seed)
        taylor = {
            (i, alpha): dim
            for alpha in lcm_lattice(ideal)
            for i, dim in taylor_strand_betti(ideal, alpha, field_spec).items()
        }
        assert betti_table(ideal, field_spec).as_dict() == taylor, f"seed {seed}"
