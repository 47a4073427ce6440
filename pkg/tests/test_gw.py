import pytest
from hypothesis import given, strategies as st

from oracles import w_oracle
from qhproj.classical import BundleError, BundleSpec
from qhproj.fano import hypothesis_report
from qhproj.gw import (
    METHODS, GwTable, gw_table, invariant_value, known_invariants, fiber_invariant_vanishes, w_classical_pairing,
    w_double_sum, w_generating_function, w_schubert_integral,
)

B12 = BundleSpec.split(3, (1, 2))
B113 = BundleSpec.split(4, (1, 1, 3))


def test_spec_values():
    assert w_generating_function(B12, 0) == 1
    assert w_generating_function(B12, 1) == 1
    assert w_generating_function(B113, 1) == -1
    assert w_double_sum(B113, 1) == -1
    assert w_double_sum(B12, 1) == 1
    assert w_schubert_integral(B12, 0) == 1
    assert w_schubert_integral(B12, 1) == 1
    assert w_schubert_integral(B113, 2) == -3
    assert w_classical_pairing(B12, 0) == 1
    assert w_classical_pairing(B12, 1) == 1
    for n in range(1, 5):
        assert w_classical_pairing(BundleSpec.split(n, (1, 1)), 0) == 1


def test_table():
    table = gw_table(B113)
    assert table.values == [1, -1, -3]
    assert table.agree and not table.conjectural
    assert GwTable.from_dict(table.to_dict()) == table


def test_conjectural_tagging():
    table = gw_table(BundleSpec.split(6, (1, 1, 2, 2, 3)))
    assert table.conjectural and table.agree
    assert table.values == [w_oracle((1, 1, 2, 2, 3), i) for i in range(5)]


def test_index_range():
    with pytest.raises(IndexError):
        w_generating_function(B12, 2)
    with pytest.raises(IndexError):
        w_double_sum(B12, -1)


def test_section_setup_required():
    with pytest.raises(BundleError):
        w_schubert_integral(BundleSpec.split(3, (2, 3)), 0)
    with pytest.raises(BundleError):
        gw_table(BundleSpec.split(2, (1, 4)))  # c1 = 5 >= 2r
    with pytest.raises(BundleError):
        gw_table(BundleSpec.tangent(3))


small_split = st.builds(
    lambda n, rest: BundleSpec.split(n, (1,) + tuple(rest)),
    st.integers(1, 5), st.lists(st.integers(1, 4), min_size=1, max_size=4),
).filter(lambda b: b.c1 < 2 * b.r)


@given(small_split)
def test_closed_forms_agree_with_oracle(b):
    for i in range(b.c1 - b.r + 1):
        expected = w_oracle(b.m, i)
        assert w_generating_function(b, i) == expected
        assert w_double_sum(b, i) == expected


@given(small_split.filter(lambda b: hypothesis_report(b)["section_count_proved"]))
def test_schubert_route_in_proved_range(b):
    for i in range(b.c1 - b.r + 1):
        assert w_schubert_integral(b, i) == w_oracle(b.m, i)
        assert w_classical_pairing(b, i) == w_oracle(b.m, i)


def test_known_invariants_split():
    b = B12
    inv = {x.source: x for x in known_invariants(b)}
    assert inv["fiber-line"].value == 1 and inv["fiber-line"].insertions == ("xi", "xi", "h^3*xi")
    assert inv["section-leading"].value == 1 and inv["section-leading"].applicable
    assert not inv["tangent-point"].applicable
    l37 = [x for x in known_invariants(b) if x.source == "fiber-vanishing"]
    assert {x.applicable for x in l37} == {True, False}
    assert all(x.value == 0 for x in l37)


def test_known_invariants_tangent():
    b = BundleSpec.tangent(4)
    assert invariant_value(b, "tangent-point") == 4
    quads = [x for x in known_invariants(b) if x.source == "tangent-pairs"]
    assert quads and all(x.value == 1 and x.applicable for x in quads)
    assert invariant_value(b, "section-leading") == 1


def test_fiber_vanishing_flags():
    assert fiber_invariant_vanishes(0, 1, 2) and not fiber_invariant_vanishes(1, 1, 2)


def test_methods_constant():
    assert len(METHODS) == 4
