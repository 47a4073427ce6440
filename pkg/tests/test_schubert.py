import pytest
from hypothesis import given, strategies as st

from oracles import expand_line_classes, grassmannian_by_antisymmetrization, grassmannian_by_pieri
from qhproj.classical import BundleError, BundleSpec
from qhproj.exact_algebra import SCHUBERT_GENS, IntPoly
from qhproj.schubert import (
    ALPHA, BETA, HHAT, SchubertError, SymmetricClass, incident_line_class, integrate_grassmannian,
    integrate_mixed, obstruction_euler_class,
)


def prod_classes(ps, n, k=1):
    out = SymmetricClass(IntPoly.const(1, SCHUBERT_GENS), n, k)
    for p in ps:
        out = out * incident_line_class(p, n, k)
    return out


def test_incident_line_examples():
    assert incident_line_class(1, 3).poly == IntPoly.const(1, SCHUBERT_GENS)
    assert incident_line_class(2, 3).poly == ALPHA + BETA
    assert incident_line_class(3, 3).poly == ALPHA ** 2 + ALPHA * BETA + BETA ** 2
    with pytest.raises(SchubertError):
        incident_line_class(4, 3)
    with pytest.raises(SchubertError):
        incident_line_class(0, 3)


def test_grassmannian_examples():
    assert integrate_grassmannian((ALPHA + BETA) ** 2, n=2) == 1
    assert integrate_grassmannian((ALPHA + BETA) ** 4, n=3) == 2
    # linearity: alpha^2 + beta^2 = (alpha + beta)^2 - 2 alpha beta
    assert integrate_grassmannian(ALPHA ** 2 + BETA ** 2, n=2) == \
        integrate_grassmannian((ALPHA + BETA) ** 2, n=2) - 2 * integrate_grassmannian(ALPHA * BETA, n=2)
    assert integrate_grassmannian(ALPHA * BETA, n=2) == 1
    assert integrate_grassmannian(ALPHA ** 2 + BETA ** 2, n=2) == -1


def test_grassmannian_errors():
    with pytest.raises(SchubertError):
        integrate_grassmannian((ALPHA + BETA) ** 3, n=2)
    with pytest.raises(SchubertError):
        integrate_grassmannian(ALPHA ** 2, n=2)


def test_mixed_examples():
    assert integrate_mixed(SymmetricClass(HHAT * (ALPHA + BETA) ** 2, 2, 2)) == 1
    assert integrate_mixed(SymmetricClass((ALPHA + BETA) ** 3, 2, 2)) == 0
    with pytest.raises(SchubertError):
        integrate_mixed(SymmetricClass(HHAT ** 2 * (ALPHA + BETA), 2, 2))


def test_obstruction_examples():
    one = IntPoly.const(1, SCHUBERT_GENS)
    assert obstruction_euler_class(BundleSpec.split(3, (1, 2))).poly == one
    assert obstruction_euler_class(BundleSpec.split(4, (1, 1, 3)), 2).poly == HHAT - ALPHA - BETA
    assert obstruction_euler_class(BundleSpec.split(5, (1, 4)), 1).poly == \
        (HHAT - ALPHA - 2 * BETA) * (HHAT - 2 * ALPHA - BETA)
    with pytest.raises(BundleError):
        obstruction_euler_class(BundleSpec.split(3, (2, 3)))
    with pytest.raises(SchubertError):
        obstruction_euler_class(BundleSpec.split(4, (1, 1, 3)), 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_special_classes_are_dual(n):
    # sigma_a * sigma_b with a + b = 2n - 2 in the 2 x (n-1) box: nonzero only for a = b = n-1
    for a in range(n):
        b = 2 * n - 2 - a
        if b > n - 1:
            continue
        val = integrate_grassmannian(prod_classes([a + 1, b + 1], n))
        assert val == (1 if a == b == n - 1 else 0)


def degree_splits(total, n):
    """Every multiset of line classes (p >= 2) whose degrees p - 1 sum to ``total``."""
    def rec(rem, lo, parts):
        if rem == 0:
            yield tuple(parts)
            return
        for p in range(lo, min(n, rem + 1) + 1):
            if p - 1 <= rem:
                yield from rec(rem - (p - 1), p, parts + [p])
    return list(rec(total, 2, []))


@pytest.mark.parametrize("n", range(2, 7))
def test_matches_oracles(n):
    for ps in degree_splits(2 * n - 2, n):
        ours = integrate_grassmannian(prod_classes(ps, n))
        assert ours == grassmannian_by_antisymmetrization(expand_line_classes(ps), n)
        assert ours == grassmannian_by_pieri(ps, n)


@given(st.integers(2, 5), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_linearity(n, coeffs):
    ps_list = degree_splits(2 * n - 2, n)[:4]
    total = SymmetricClass(IntPoly({}, SCHUBERT_GENS), n)
    expected = 0
    for c, ps in zip(coeffs, ps_list):
        total = total + prod_classes(ps, n).scale(c)
        expected += c * integrate_grassmannian(prod_classes(ps, n))
    assert integrate_grassmannian(total) == expected


def test_symmetry_enforced():
    with pytest.raises(SchubertError):
        SymmetricClass(ALPHA, 2)
