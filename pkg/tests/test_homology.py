import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edge_powers.fields import FieldSpec
from edge_powers.homology import (
    SimplicialComplex,
    reduced_homology_dims,
    reduced_homology_from_facets,
    strong_core,
    subsets,
)

GROUND = ("a", "b", "c", "d")


def test_subsets():
    assert sorted(subsets(0b101)) == [0b000, 0b001, 0b100, 0b101]
    assert list(subsets(0)) == [0]


def test_two_points():
    complex_ = SimplicialComplex.from_facets(GROUND, [0b01, 0b10])
    assert reduced_homology_dims(complex_) == {-1: 0, 0: 1}
    assert not complex_.is_connected()


def test_hollow_triangle():
    complex_ = SimplicialComplex.from_facets(GROUND, [0b011, 0b110, 0b101])
    assert reduced_homology_dims(complex_) == {-1: 0, 0: 0, 1: 1}
    assert complex_.is_connected()
    assert complex_.dimension == 1


def test_solid_triangle_is_acyclic():
    complex_ = SimplicialComplex.from_facets(GROUND, [0b111])
    assert set(reduced_homology_dims(complex_).values()) == {0}
    assert complex_.facets() == [0b111]
    assert complex_.facet_names() == [["a", "b", "c"]]


def test_irrelevant_and_void():
    assert reduced_homology_dims(SimplicialComplex.irrelevant(GROUND)) == {-1: 1}
    void = SimplicialComplex.void(GROUND)
    assert void.is_void
    assert void.dimension is None
    assert reduced_homology_dims(void) == {}


def test_rejects_faces_missing_boundary():
    with pytest.raises(ValueError, match="boundary"):
        SimplicialComplex(GROUND, frozenset({0, 0b11}))


@pytest.mark.parametrize("field", ["q", "f2", "fp:3"])
def test_circle_is_field_independent(field):
    square = SimplicialComplex.from_facets(GROUND, [0b0011, 0b0110, 0b1100, 0b1001])
    assert reduced_homology_dims(square, FieldSpec.parse(field))[1] == 1


def test_cone_collapses_to_one_facet():
    # apex d over a hollow triangle
    assert len(strong_core([0b1011, 0b1110, 0b1101])) == 1
    assert reduced_homology_from_facets(GROUND, [0b1011, 0b1110, 0b1101]) == {}


def test_hollow_triangle_has_no_dominated_vertex():
    assert sorted(strong_core([0b011, 0b110, 0b101])) == [0b011, 0b101, 0b110]
    assert reduced_homology_from_facets(GROUND, [0b011, 0b110, 0b101]) == {1: 1}


def test_path_retracts_to_a_point():
    assert len(strong_core([0b0011, 0b0110, 0b1100])) == 1


def test_from_facets_edge_cases():
    assert reduced_homology_from_facets(GROUND, []) == {}
    assert reduced_homology_from_facets(GROUND, [0]) == {-1: 1}
    assert reduced_homology_from_facets(GROUND, [0b0001, 0b0100]) == {0: 1}


@settings(max_examples=60, deadline=None)
@given(facets=st.lists(st.integers(min_value=1, max_value=2**6 - 1), min_size=1, max_size=7))
def test_core_keeps_homology(facets):
    ground = tuple("abcdef")
    full = reduced_homology_dims(SimplicialComplex.from_facets(ground, facets))
    assert reduced_homology_from_facets(ground, facets) == {d: n for d, n in full.items() if n}
