import pytest

from edge_powers.betti import (
    BettiTable,
    betti_number,
    betti_table,
    has_linear_resolution,
    quotient_betti,
    regularity,
    upper_koszul,
)
from edge_powers.cache import CacheManager
from edge_powers.fields import FieldSpec
from edge_powers.ideals import SquarefreeIdeal, ZeroIdealError, squarefree_power


def test_upper_koszul_of_path_ideal(path_ideal):
    complex_ = upper_koszul(path_ideal, 0b111)
    assert complex_.facets() == [0b001, 0b100]
    assert upper_koszul(path_ideal, 0b101).is_void


def test_betti_number_of_path_ideal(path_ideal):
    assert betti_number(path_ideal, 0b111) == {1: 1}
    assert betti_number(path_ideal, 0b011) == {0: 1}
    assert betti_number(path_ideal, 0b101) == {}


def test_path_ideal_is_linear(path_ideal):
    table = betti_table(path_ideal)
    assert table.entries == ((0, 0b011, 1), (0, 0b110, 1), (1, 0b111, 1))
    assert table.regularity == 2
    assert table.projective_dimension == 1
    assert has_linear_resolution(path_ideal)


def test_gap_ideal_is_not_linear(gap_ideal):
    table = betti_table(gap_ideal)
    assert table.get(1, 0b1111) == 1
    assert table.regularity == 3
    assert table.graded() == {(0, 2): 2, (1, 4): 1}
    assert not has_linear_resolution(gap_ideal)


def test_single_generator():
    ideal = SquarefreeIdeal.from_names(["x1", "x2"], [["x1", "x2"]])
    assert regularity(ideal) == 2


def test_cameron_walker_second_power_is_linear(cameron_walker_tree):
    power = squarefree_power(cameron_walker_tree, 2)
    assert regularity(power) == 4
    assert has_linear_resolution(power)


@pytest.mark.slow
def test_admissable_tree_second_power(admissable_tree):
    assert regularity(squarefree_power(admissable_tree, 2)) == 6


def test_sweeps_agree(distant_leaf_tree):
    power = squarefree_power(distant_leaf_tree, 2)
    assert betti_table(power, alphas="lattice") == betti_table(power, alphas="all")


def test_unknown_sweep(path_ideal):
    with pytest.raises(ValueError, match="sweep"):
        betti_table(path_ideal, alphas="some")


def test_zero_ideal_is_rejected():
    zero = SquarefreeIdeal(("x",), ())
    with pytest.raises(ZeroIdealError):
        betti_table(zero)
    with pytest.raises(ZeroIdealError):
        has_linear_resolution(zero)


def test_linearity_needs_one_degree():
    mixed = SquarefreeIdeal.from_names(["x", "y", "z"], [["x"], ["y", "z"]])
    with pytest.raises(ValueError, match="equigenerated"):
        has_linear_resolution(mixed)


def test_render(gap_ideal):
    text = betti_table(gap_ideal).render()
    assert "total:" in text
    assert text.splitlines()[1].split() == ["total:", "2", "1"]


def test_json_round_trip(gap_ideal):
    table = betti_table(gap_ideal, FieldSpec.parse("f2"))
    payload = table.to_json()
    assert payload["convention"] == "ideal"
    assert payload["field"] == "f2"
    assert BettiTable.from_json(payload, gap_ideal.ambient) == table


def test_cache_hit_returns_equal_table(tmp_path, path_ideal):
    cache = CacheManager(str(tmp_path / "cache"))
    first = betti_table(path_ideal, cache=cache)
    assert len(cache.metadata["entries"]) == 1
    second = betti_table(path_ideal, cache=cache)
    assert first == second


def test_quotient_shift(path_ideal):
    table = betti_table(path_ideal)
    assert quotient_betti(table, 0, 0) == 1
    assert quotient_betti(table, 0, 2) == 0
    assert quotient_betti(table, 1, 2) == 2
    assert quotient_betti(table, 2, 3) == 1


def test_parallel_sweep_matches_serial(cameron_walker_tree):
    power = squarefree_power(cameron_walker_tree, 2)
    assert betti_table(power, workers=2) == betti_table(power, workers=1)


@pytest.mark.parametrize("field", ["q", "f2"])
def test_edge_ideal_of_four_cycle(four_cycle, field):
    ideal = squarefree_power(four_cycle, 1)
    table = betti_table(ideal, FieldSpec.parse(field))
    assert table.total() == {0: 4, 1: 4, 2: 1}
    assert table.regularity == 2
