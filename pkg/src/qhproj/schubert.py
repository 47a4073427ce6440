"""Intersection numbers on G(2, n+1) and G(2, n+1) x P^(k-1).

Classes are polynomials in the Chern roots alpha, beta of the dual
tautological subbundle, plus the hyperplane class hhat of P^(k-1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .classical import BundleError, BundleSpec
from .exact_algebra import SCHUBERT_GENS, IntPoly

ALPHA, BETA, HHAT = IntPoly.gens(SCHUBERT_GENS)


class SchubertError(ValueError):
    pass


@dataclass(frozen=True)
class SymmetricClass:
    """A class on G(2, n+1) x P^(k-1); ``k = 1`` means no projective factor.

    The polynomial may carry powers hhat^k and beyond until ``truncated``
    is called; the integrals refuse such input.
    """

    poly: IntPoly
    n: int
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise SchubertError("k must be at least 1")
        poly = self.poly.with_gens(SCHUBERT_GENS)
        object.__setattr__(self, "poly", poly)
        if poly.swap("alpha", "beta") != poly:
            raise SchubertError(f"class {poly} is not symmetric in alpha and beta")

    def truncated(self) -> "SymmetricClass":
        """Drop hhat^k and above, which vanish on P^(k-1)."""
        return SymmetricClass(self.poly.truncate("hhat", self.k - 1), self.n, self.k)

    def __mul__(self, other: "SymmetricClass") -> "SymmetricClass":
        if (self.n, self.k) != (other.n, other.k):
            raise SchubertError("classes live on different spaces")
        return SymmetricClass(self.poly * other.poly, self.n, self.k)

    def __add__(self, other: "SymmetricClass") -> "SymmetricClass":
        if (self.n, self.k) != (other.n, other.k):
            raise SchubertError("classes live on different spaces")
        return SymmetricClass(self.poly + other.poly, self.n, self.k)

    def scale(self, c: int) -> "SymmetricClass":
        return SymmetricClass(self.poly.scale(c), self.n, self.k)

    def __str__(self):
        return self.poly.to_text()


def incident_line_class(p: int, n: int, k: int = 1) -> SymmetricClass:
    """Class of lines meeting a codimension-p linear subspace of P^n.

    Equals (alpha^p - beta^p)/(alpha - beta), written out as a geometric sum.
    """
    if not 1 <= p <= n:
        raise SchubertError(f"p must lie in 1..{n}, got {p}")
    terms = {(t, p - 1 - t, 0): 1 for t in range(p)}
    return SymmetricClass(IntPoly(terms, SCHUBERT_GENS), n, k)


def integrate_grassmannian(P: SymmetricClass | IntPoly, n: int | None = None) -> int:
    """Degree of a class of alpha,beta-degree 2n-2 on G(2, n+1).

    Uses: integral = coefficient of alpha^n beta^n in -(alpha - beta)^2 P / 2.
    """
    if isinstance(P, SymmetricClass):
        if P.poly.degree("hhat") > 0:
            raise SchubertError("class still has a P^(k-1) factor; use integrate_mixed")
        n = P.n
        poly = P.poly
    else:
        if n is None:
            raise SchubertError("n is required for a bare polynomial")
        poly = P.with_gens(SCHUBERT_GENS)
        if poly.degree("hhat") > 0:
            raise SchubertError("class still has a P^(k-1) factor; use integrate_mixed")
        if poly.swap("alpha", "beta") != poly:
            raise SchubertError(f"class {poly} is not symmetric in alpha and beta")
    if poly.is_zero():
        return 0
    degs = poly.weighted_degrees()
    if degs != {2 * n - 2}:
        raise SchubertError(f"integrand has degrees {sorted(degs)}, expected {2 * n - 2} on G(2,{n + 1})")
    c = (-(ALPHA - BETA) ** 2 * poly).coefficient((n, n, 0))
    if c % 2:
        raise SchubertError(f"odd coefficient {c} before halving; input is not a symmetric class")
    return c // 2


def integrate_mixed(P: SymmetricClass) -> int:
    """Degree on G(2, n+1) x P^(k-1): take the hhat^(k-1) coefficient, then integrate."""
    n, k = P.n, P.k
    poly = P.poly
    if poly.degree("hhat") > k - 1:
        raise SchubertError(f"hhat-degree exceeds k-1 = {k - 1}")
    if not poly.is_zero() and poly.weighted_degrees() != {2 * n - 2 + k - 1}:
        raise SchubertError(f"integrand has degrees {sorted(poly.weighted_degrees())}, "
                            f"expected {2 * n - 2 + k - 1}")
    top = poly.coefficient_of_power("hhat", k - 1)
    return integrate_grassmannian(SymmetricClass(top, n, 1))


def obstruction_euler_class(bundle: BundleSpec, k: int | None = None) -> SymmetricClass:
    """Euler class of the obstruction bundle over G(2, n+1) x P^(k-1).

    One linear factor (1+v)(-alpha) + (m_u-2-v)(-beta) + hhat for each
    u > k and 0 <= v <= m_u - 3; an empty product gives 1.
    """
    if bundle.kind != "split":
        raise BundleError("the obstruction class is defined for split bundles")
    if bundle.m1 != 1:
        raise BundleError(f"needs min m_i = 1 (twist by O({1 - bundle.m1}) first)")
    if k is None:
        k = bundle.k
    if k != bundle.k:
        raise SchubertError(f"k must be the multiplicity of m_i = 1, which is {bundle.k}")
    poly = IntPoly.const(1, SCHUBERT_GENS)
    for mu in bundle.m[k:]:
        for v in range(mu - 2):
            poly = poly * ((1 + v) * -ALPHA + (mu - 2 - v) * -BETA + HHAT)
    return SymmetricClass(poly, bundle.n, k)
