import pytest

from edge_powers.graph import Graph
from edge_powers.ideals import (
    SquarefreeIdeal,
    ZeroIdealError,
    add_monomial,
    colon_by_monomial,
    edge_ideal,
    ideal_to_json,
    lcm_lattice,
    lcm_of_generators,
    minimalize,
    restriction,
    squarefree_power,
    sum_ideals,
)


def test_edge_ideal(path3):
    ideal = edge_ideal(path3)
    assert ideal.ambient == ("a", "b", "c")
    assert ideal.to_json() == [["a", "b"], ["b", "c"]]


def test_edge_ideal_of_edgeless_graph_is_zero():
    assert edge_ideal(Graph(("a", "b"), ())).is_zero


def test_first_power_is_edge_ideal(admissable_tree):
    assert squarefree_power(admissable_tree, 1) == edge_ideal(admissable_tree)


def test_four_cycle_second_power(four_cycle):
    ideal = squarefree_power(four_cycle, 2)
    assert ideal.to_json() == [["a", "b", "c", "d"]]


def test_power_beyond_matching_number_is_zero(cameron_walker_tree):
    assert squarefree_power(cameron_walker_tree, 3).is_zero
    assert not squarefree_power(cameron_walker_tree, 2).is_zero


def test_power_rejects_nonpositive_k(path3):
    with pytest.raises(ValueError):
        squarefree_power(path3, 0)


def test_power_over_wider_ambient(single_edge):
    ideal = squarefree_power(single_edge, 1, ambient=["z", "a", "b"])
    assert ideal.ambient == ("z", "a", "b")
    assert ideal.generators == (0b110,)
    with pytest.raises(ValueError, match="cover"):
        edge_ideal(single_edge, ambient=["a"])


def test_power_generators_are_equigenerated(admissable_tree):
    ideal = squarefree_power(admissable_tree, 3)
    assert ideal.degrees() == [6]


def test_colon_by_middle_variable(path_ideal):
    colon = colon_by_monomial(path_ideal, path_ideal.monomial(["x2"]))
    assert colon.to_json() == [["x1"], ["x3"]]


def test_colon_by_leaf_edge(distant_leaf_tree):
    power = squarefree_power(distant_leaf_tree, 2)
    colon = colon_by_monomial(power, power.monomial(["x5", "x6"]))
    assert colon.generator_sets() == frozenset(
        {frozenset({"x1", "x2"}), frozenset({"x2", "x3"}), frozenset({"x3", "x4"})}
    )


def test_colon_by_generator_is_unit(path_ideal):
    assert colon_by_monomial(path_ideal, 0b011).is_unit


def test_add_monomial(path_ideal, gap_ideal):
    assert add_monomial(path_ideal, 0b010).generators == (0b010,)
    assert add_monomial(gap_ideal, 0b0101).generators == (0b0011, 0b0101, 0b1100)
    assert add_monomial(path_ideal, 0b111) == path_ideal


def test_sum_ideals(gap_ideal):
    first = SquarefreeIdeal.from_generators(gap_ideal.ambient, [0b0011])
    second = SquarefreeIdeal.from_generators(gap_ideal.ambient, [0b1100])
    assert sum_ideals(first, second) == gap_ideal
    with pytest.raises(ValueError, match="different"):
        sum_ideals(first, SquarefreeIdeal.from_generators(["y"], [1]))


def test_restriction(path_ideal):
    assert restriction(path_ideal, 0b011).generators == (0b011,)
    assert restriction(path_ideal, 0b101).is_zero
    assert restriction(path_ideal, 0b111) == path_ideal


def test_lcm(path_ideal, cameron_walker_tree):
    assert lcm_of_generators(path_ideal) == 0b111
    assert lcm_of_generators(squarefree_power(cameron_walker_tree, 2)) == cameron_walker_tree.vertex_mask


def test_lcm_of_zero_ideal():
    with pytest.raises(ZeroIdealError):
        lcm_of_generators(SquarefreeIdeal(("x",), ()))


def test_lcm_lattice(gap_ideal, path_ideal):
    assert lcm_lattice(gap_ideal) == [0b0011, 0b1100, 0b1111]
    assert lcm_lattice(path_ideal) == [0b011, 0b110, 0b111]


def test_minimalize():
    assert minimalize([0b111, 0b011, 0b011, 0b110]) == (0b011, 0b110)
    assert minimalize([]) == ()


def test_constructor_rejects_non_minimal_generators():
    with pytest.raises(ValueError, match="minimal"):
        SquarefreeIdeal(("x", "y"), (0b11, 0b01))
    with pytest.raises(ValueError, match="outside"):
        SquarefreeIdeal(("x",), (0b10,))


def test_from_names_unknown_variable():
    with pytest.raises(ValueError, match="Unknown variable"):
        SquarefreeIdeal.from_names(["x"], [["y"]])


def test_membership(path_ideal):
    assert path_ideal.contains(0b111)
    assert not path_ideal.contains(0b101)
    assert path_ideal.names_of(path_ideal.variables_used()) == ["x1", "x2", "x3"]


def test_ideal_to_json(gap_ideal):
    assert ideal_to_json(gap_ideal) == {
        "ambient": ["x1", "x2", "x3", "x4"],
        "generators": [["x1", "x2"], ["x3", "x4"]],
    }
