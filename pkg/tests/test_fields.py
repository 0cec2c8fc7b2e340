import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.matrices import DomainMatrix

from edge_powers.fields import FieldSpec, unit_pivot_elimination


@pytest.mark.parametrize("token, characteristic, name, label", [
    ("q", 0, "q", "QQ"),
    ("QQ", 0, "q", "QQ"),
    ("f2", 2, "f2", "GF(2)"),
    ("fp:7", 7, "fp:7", "GF(7)"),
])
def test_parse(token, characteristic, name, label):
    field = FieldSpec.parse(token)
    assert field.characteristic == characteristic
    assert field.name == name
    assert field.label == label


def test_parse_rejects_bad_tokens():
    with pytest.raises(ValueError, match="0 or prime"):
        FieldSpec.parse("fp:4")
    with pytest.raises(ValueError, match="Invalid prime"):
        FieldSpec.parse("fp:x")
    with pytest.raises(ValueError, match="Unknown field"):
        FieldSpec.parse("reals")


def test_rank_depends_on_characteristic():
    entries = {0: {0: 1, 1: 1}, 1: {0: 1, 1: -1}}
    assert FieldSpec.parse("q").rank(entries, 2, 2) == 2
    assert FieldSpec.parse("f2").rank(entries, 2, 2) == 1


def test_rank_of_empty_matrix():
    assert FieldSpec().rank({}, 0, 3) == 0
    assert FieldSpec().rank({}, 2, 2) == 0


def test_unit_pivots_leave_non_unit_residual():
    found, residual = unit_pivot_elimination({0: {0: 2, 1: 4}, 1: {0: 1, 1: 3}})
    assert found == 1
    assert residual == {0: {1: -2}}
    assert FieldSpec().rank({0: {0: 2, 1: 4}, 1: {0: 1, 1: 3}}, 2, 2) == 2


def test_unit_pivots_reduce_completely_mod_p():
    found, residual = unit_pivot_elimination({0: {0: 2, 1: 1}, 1: {0: 1, 1: 2}}, 3)
    assert (found, residual) == (1, {})


@settings(max_examples=60, deadline=None)
@given(
    cells=st.lists(
        st.tuples(st.integers(0, 5), st.integers(0, 6), st.integers(-3, 3)), max_size=30
    ),
    token=st.sampled_from(["q", "f2", "fp:3", "fp:5"]),
)
def test_rank_matches_sympy(cells, token):
    entries = {}
    for r, c, value in cells:
        entries.setdefault(r, {})[c] = value
    field = FieldSpec.parse(token)
    dense = [[field.domain.convert(entries.get(r, {}).get(c, 0)) for c in range(7)] for r in range(6)]
    expected = DomainMatrix(dense, (6, 7), field.domain).rank()
    assert field.rank(entries, 6, 7) == expected
