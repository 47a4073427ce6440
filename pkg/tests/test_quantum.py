import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from qhproj.classical import (
    H, ONE, Q, QUANTUM_SHAPE, QUANTUM_VERIFIED, XI, BundleError, BundleSpec, PresentationError,
    Relation, RingPresentation, classical_normal_form,
)
from qhproj.exact_algebra import IntPoly
from qhproj.fano import HypothesisError
from qhproj.quantum import (
    batyrev_presentation, leading_term_defect, lift, quantum_normal_form, quantum_presentation, quantum_product,
    random_ring_poly, tangent_presentation, theoremB_shape, verify_presentation,
)

B12 = BundleSpec.split(3, (1, 2))
P12 = batyrev_presentation(B12)


def test_batyrev_examples():
    f1, f2 = P12.polys()
    assert f1 == H ** 4 - (XI - 2 * H) * Q ** 3
    assert f2 == (XI - H) * (XI - 2 * H) - Q ** 2
    assert [r.display for r in P12.relations] == ["h^4 = (xi - 2*h)*q^3", "(xi - h)*(xi - 2*h) = q^2"]
    p = batyrev_presentation(BundleSpec.split(4, (1, 1, 3)))
    assert p.polys() == (H ** 5 - (XI - 3 * H) ** 2 * Q ** 3, (XI - H) ** 2 * (XI - 3 * H) - Q ** 3)
    assert p.kind == QUANTUM_VERIFIED
    p = batyrev_presentation(BundleSpec.split(3, (1, 1, 1)))
    assert p.polys() == (H ** 4 - Q ** 4, (XI - H) ** 3 - Q ** 3)


def test_ones_match_chern_form():
    # the expanded form sum (-1)^i c_i h^i xi^(r-i) = q^r for O(1)^r
    for r in range(2, 5):
        b = BundleSpec.split(3, (1,) * r)
        chern_form = sum((-1) ** i * comb(r, i) * H ** i * XI ** (r - i) for i in range(r + 1)) - Q ** r
        assert batyrev_presentation(b).polys()[1] == chern_form


def test_batyrev_conjectural_and_errors():
    p = batyrev_presentation(BundleSpec.split(2, (1, 1, 3)))
    assert p.kind == QUANTUM_SHAPE and p.provenance == "batyrev-conjectural"
    with pytest.raises(BundleError):
        batyrev_presentation(BundleSpec.split(3, (2, 3)))
    with pytest.raises(HypothesisError):
        batyrev_presentation(BundleSpec.split(1, (1, 5)))


def test_tangent_examples():
    f1, f2 = tangent_presentation(2).polys()
    assert f1 == H ** 3 - XI * Q ** 2
    assert f2 == XI ** 2 - 3 * H * XI + 3 * H ** 2 - 2 * Q ** 2
    f1, f2 = tangent_presentation(3).polys()
    assert f1 == H ** 4 - XI * Q ** 3
    assert f2 == XI ** 3 - 4 * H * XI ** 2 + 6 * H ** 2 * XI - 4 * H ** 3
    for n in range(2, 7):
        f1, f2 = tangent_presentation(n).polys()
        assert f1.weighted_degrees() == {n + 1} and f2.weighted_degrees() == {n}
    with pytest.raises(BundleError):
        tangent_presentation(1)


def test_shape_collapses():
    assert theoremB_shape(B12).polys() == P12.polys()
    assert theoremB_shape(B12).kind == QUANTUM_VERIFIED
    for n in range(2, 7):
        assert theoremB_shape(BundleSpec.tangent(n)).polys() == tangent_presentation(n).polys()


def test_shape_generic():
    g = BundleSpec.generic(4, (1, 4, 6, 4), (1, 1, 2), twist_nef=True)
    shape = theoremB_shape(g)
    assert shape.kind == QUANTUM_SHAPE and not shape.determined
    rel1 = shape.relations[0]
    assert rel1.rhs == XI * Q ** 4  # a[0][1] pinned to 1
    assert [name for name, _ in rel1.unknowns] == ["a[1][0]"]
    assert not shape.relations[1].unknowns  # c1 <= n
    with pytest.raises(PresentationError):
        quantum_normal_form(H, shape)
    assert RingPresentation.from_dict(shape.to_dict()) == shape


def test_shape_refuses():
    with pytest.raises(HypothesisError):
        theoremB_shape(BundleSpec.generic(3, (1, 4, 5), (1, 3)))


def test_normal_form_examples():
    nf = quantum_normal_form(H ** 4, P12)
    assert nf.coords == {(0, 1): Q ** 3, (1, 0): -2 * Q ** 3}
    assert quantum_normal_form(XI ** 2, P12).poly == 3 * H * XI - 2 * H ** 2 + Q ** 2
    for i, j in P12.basis:
        assert quantum_normal_form(H ** i * XI ** j, P12).poly == H ** i * XI ** j


def test_product_examples():
    x = quantum_normal_form(XI, P12)
    assert quantum_product(x, x, P12).poly == 3 * H * XI - 2 * H ** 2 + Q ** 2
    one = quantum_normal_form(ONE, P12)
    y = quantum_normal_form(H ** 2 * XI + 5 * H, P12)
    assert quantum_product(one, y, P12) == y
    h3 = quantum_normal_form(H ** 3, P12)
    assert quantum_product(quantum_normal_form(H, P12), h3, P12).poly == (XI - 2 * H) * Q ** 3
    other = tangent_presentation(3)
    with pytest.raises(PresentationError):
        quantum_product(x, quantum_normal_form(XI, other), P12)


PRESENTATIONS = [P12, batyrev_presentation(BundleSpec.split(4, (1, 1, 3))), tangent_presentation(2),
                 tangent_presentation(3), batyrev_presentation(BundleSpec.split(5, (1, 2, 2)))]


@pytest.mark.parametrize("pres", PRESENTATIONS, ids=lambda p: p.bundle.label)
@given(st.integers(0, 10 ** 6))
def test_product_is_associative_and_commutative(pres, seed):
    rng = random.Random(seed)
    x, y, z = (quantum_normal_form(random_ring_poly(rng, 4, 4, 5, 1), pres) for _ in range(3))
    assert quantum_product(x, y, pres) == quantum_product(y, x, pres)
    assert quantum_product(quantum_product(x, y, pres), z, pres) == \
        quantum_product(x, quantum_product(y, z, pres), pres)


@pytest.mark.parametrize("pres", PRESENTATIONS, ids=lambda p: p.bundle.label)
@given(st.integers(0, 10 ** 6))
def test_quantum_minus_classical_in_q_ideal(pres, seed):
    rng = random.Random(seed)
    x = random_ring_poly(rng, 5, 4, 5, 0)
    y = random_ring_poly(rng, 5, 4, 5, 0)
    assert leading_term_defect(x, y, pres).specialize("q", 0).is_zero()


def test_lift():
    c = classical_normal_form(XI, B12)
    assert lift(c, P12).poly == XI


def test_verify_examples():
    rep = verify_presentation(P12, B12)
    assert rep.passed and rep.rank == 8
    rep = verify_presentation(tangent_presentation(2))
    assert rep.passed and rep.rank == 6


def test_tampered_fails():
    t = tangent_presentation(3)
    bad = RingPresentation(t.bundle, (Relation(H ** 4, XI * Q ** 3 + Q ** 4), t.relations[1]), t.kind, "x")
    assert not verify_presentation(bad).passed
    bad = RingPresentation(B12, (Relation(H ** 4, (XI - 3 * H) * Q ** 3), P12.relations[1]), P12.kind, "x")
    rep = verify_presentation(bad)
    assert not rep.passed and not {c.name: c.passed for c in rep.checks}["w_pairing"]
    bad = RingPresentation(B12, (P12.relations[0], Relation(XI ** 2, IntPoly())), P12.kind, "x")
    assert not verify_presentation(bad).passed
    bad = RingPresentation(B12, (Relation(H ** 4, XI * Q ** 2), P12.relations[1]), P12.kind, "x")
    assert not verify_presentation(bad).passed


def test_unknowns_reported_not_raised():
    shape = theoremB_shape(BundleSpec.generic(4, (1, 4, 6, 4), (1, 1, 2), twist_nef=True))
    assert not verify_presentation(shape).passed


@pytest.mark.parametrize("pres", PRESENTATIONS, ids=lambda p: p.bundle.label)
def test_json_round_trip(pres):
    back = RingPresentation.from_dict(pres.to_dict())
    assert back == pres
    assert quantum_presentation(pres.bundle) == pres
