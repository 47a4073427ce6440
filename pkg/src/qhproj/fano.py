"""Numerical geometry of P(V): anticanonical degrees, hypothesis gates,
extremal classes, which curve classes can correct a relation, moduli dimensions.

Curve classes are pairs (a, b) standing for a*(h^(n-1) xi^(r-1))_* + b*(h^n xi^(r-2))_*.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .classical import BundleError, BundleSpec


class HypothesisError(ValueError):
    pass


class CurveClass(NamedTuple):
    a: int
    b: int

    def __add__(self, other):
        return CurveClass(self.a + other.a, self.b + other.b)

    def __mul__(self, k: int):
        return CurveClass(k * self.a, k * self.b)

    __rmul__ = __mul__

    def __str__(self):
        return f"({self.a},{self.b})"


def anticanonical_degree(bundle: BundleSpec, A: CurveClass) -> int:
    """-K(A) = a(n + 1 - c1) + r(a c1 + b)."""
    a, b = A
    n, r, c1 = bundle.n, bundle.r, bundle.c1
    return a * (n + 1 - c1) + r * (a * c1 + b)


def xi_degree(bundle: BundleSpec, A: CurveClass) -> int:
    return A.a * bundle.c1 + A.b


# ---------------------------------------------------------------------------
# hypotheses


@dataclass(frozen=True)
class Hypothesis:
    holds: bool | None
    witness: str

    def to_dict(self) -> dict:
        return {"holds": self.holds, "witness": self.witness}


@dataclass
class HypothesisReport:
    bundle: BundleSpec
    entries: dict[str, Hypothesis] = field(default_factory=dict)

    def __getitem__(self, name: str) -> bool | None:
        return self.entries[name].holds

    def to_dict(self) -> dict:
        return {name: h.to_dict() for name, h in self.entries.items()}

    def lines(self) -> list[str]:
        mark = {True: "yes", False: "no", None: "unknown"}
        width = max(map(len, self.entries))
        return [f"{name:<{width}}  {mark[h.holds]:<7}  {h.witness}" for name, h in self.entries.items()]


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _and(*vals):
    if any(v is False for v in vals):
        return False
    if any(v is None for v in vals):
        return None
    return True


def _or(*vals):
    if any(v is True for v in vals):
        return True
    if any(v is None for v in vals):
        return None
    return False


def hypothesis_report(bundle: BundleSpec) -> HypothesisReport:
    """Evaluate every numerical hypothesis used by the theorems, with the arithmetic shown."""
    n, r, c1 = bundle.n, bundle.r, bundle.c1
    nef = bundle.is_twist_nef
    e: dict[str, Hypothesis] = {}

    e["fano_small_c1"] = Hypothesis(c1 <= n + 1, f"c1 = {c1} <= n+1 = {n + 1}")
    e["fano_twist_nef"] = Hypothesis(_and(c1 <= n + r, nef),
                                      f"c1 = {c1} <= n+r = {n + r}, V(-1) nef: {nef}")
    e["fano"] = Hypothesis(_or(e["fano_small_c1"].holds, e["fano_twist_nef"].holds),
                           "either Fano route")
    e["general_shape"] = Hypothesis(_or(c1 <= n, e["fano_twist_nef"].holds),
                             f"c1 = {c1} <= n = {n}, or the twisted route")

    bounds = (Fraction(2 * r), Fraction(n + 1 + 2 * r, 2), Fraction(2 * n + 2 + r, 2))
    e["product_formula_proved"] = Hypothesis(c1 < min(bounds),
                                 f"{c1} < min({', '.join(map(_fmt, bounds))}) = {_fmt(min(bounds))}")
    e["section_count_proved"] = Hypothesis(c1 < min(bounds[:2]),
                               f"{c1} < min({_fmt(bounds[0])}, {_fmt(bounds[1])})")
    min_is_one = bundle.m1 == 1
    e["second_relation_plain"] = Hypothesis(min_is_one and c1 < bounds[2],
                              f"min m_i = {bundle.m1}, {c1} < {_fmt(bounds[2])}")

    cor_i = _and(c1 < 2 * r, _or(2 * c1 <= n + r, _and(2 * c1 <= n + 2 * r, nef)))
    e["first_relation_sharp"] = Hypothesis(cor_i, f"c1 = {c1} < 2r = {2 * r}; 2c1 = {2 * c1} <= n+r = {n + r} "
                                    f"or (<= n+2r = {n + 2 * r} and V(-1) nef: {nef})")
    e["second_relation_sharp"] = Hypothesis(_and(2 * c1 <= 2 * n + r + 1, nef),
                              f"2c1 = {2 * c1} <= 2n+r+1 = {2 * n + r + 1}, V(-1) nef: {nef}")
    e["twist_by_m1_nef"] = Hypothesis(_twist_nef_status(bundle), "xi - h nef" if bundle.m1 == 1 else f"xi - {bundle.m1}*h nef")
    e["small_c1_extremal"] = Hypothesis(2 * c1 <= n + 1, f"2c1 = {2 * c1} <= n+1 = {n + 1}")
    e["leading_pinned"] = Hypothesis(c1 < 2 * r, f"c1 = {c1} < 2r = {2 * r}")
    return HypothesisReport(bundle, e)


def _twist_nef_status(bundle: BundleSpec) -> bool | None:
    # split: V(-m1) is a sum of nef line bundles; tangent: xi - h is nef
    if bundle.kind in ("split", "tangent"):
        return True
    if bundle.m1 == 1:
        return bundle.twist_nef
    return None


# ---------------------------------------------------------------------------
# extremal classes


class ExtremalClasses(NamedTuple):
    A1: CurveClass
    A2: CurveClass
    a2_is_extremal: str  # "yes" | "no" | "unknown"


def extremal_classes(bundle: BundleSpec) -> ExtremalClasses:
    A1 = CurveClass(0, 1)
    A2 = CurveClass(1, bundle.m1 - bundle.c1)
    nef = _twist_nef_status(bundle)
    if nef is True or 2 * bundle.c1 <= bundle.n + 1:
        status = "yes"
    elif nef is False:
        status = "no"
    else:
        status = "unknown"
    return ExtremalClasses(A1, A2, status)


@dataclass(frozen=True)
class ContributingClasses:
    classes: tuple[CurveClass, ...]
    theorem: bool  # False: the unpruned, degree-feasible set ("no-theorem")

    @property
    def flag(self) -> str:
        return "pruned" if self.theorem else "no-theorem"


def contributing_classes(bundle: BundleSpec, deg_sum: int, relation: str = "auto") -> ContributingClasses:
    """Curve classes that may correct a relation of half-degree ``deg_sum``.

    A correction from A has half-degree deg_sum + K(A), which must be >= 0,
    so only effective A = a*A2 + b*A1 with 0 < -K(A) <= deg_sum qualify.
    When the Fano and sharpening hypotheses hold the set is pruned further:
    among classes with h(A) > 0 only A2 survives, and for the first
    relation (a product of h's) multiples of A1 vanish.

    ``relation`` is "first", "second", "generic" or "auto" (inferred from
    deg_sum = n+1 or r when that is unambiguous).
    """
    n, r = bundle.n, bundle.r
    if relation == "auto":
        if deg_sum == n + 1 and deg_sum != r:
            relation = "first"
        elif deg_sum == r and deg_sum != n + 1:
            relation = "second"
        else:
            relation = "generic"
    if relation not in ("first", "second", "generic"):
        raise ValueError(f"unknown relation selector {relation!r}")
    A1, A2, _ = extremal_classes(bundle)
    k1 = anticanonical_degree(bundle, A1)
    k2 = anticanonical_degree(bundle, A2)
    if k1 <= 0 or k2 <= 0:
        raise HypothesisError(f"-K is not positive on the extremal classes of {bundle}")
    feasible = []
    for a in range(deg_sum // k2 + 1):
        for b in range((deg_sum - a * k2) // k1 + 1):
            if a or b:
                feasible.append(a * A2 + b * A1)
    feasible.sort(key=lambda A: (anticanonical_degree(bundle, A), A))

    hyp = hypothesis_report(bundle)
    if relation == "first":
        gate = _and(hyp["general_shape"], hyp["first_relation_sharp"])
    elif relation == "second":
        gate = _and(hyp["general_shape"], hyp["second_relation_sharp"])
    else:
        gate = _and(hyp["general_shape"], _or(hyp["first_relation_sharp"], hyp["second_relation_sharp"]))
    if not gate:
        return ContributingClasses(tuple(feasible), False)
    kept = []
    for A in feasible:
        if A.a > 0:
            if A == A2:
                kept.append(A)
        elif relation != "first":
            kept.append(A)
    return ContributingClasses(tuple(kept), True)


def moduli_dimension(bundle: BundleSpec, m: int) -> int:
    """Dimension of the space of maps in class [h^(n-1) xi^(r-1) + (m - c1) h^n xi^(r-2)]_*."""
    if bundle.kind != "split":
        raise BundleError("moduli dimensions are provided for split bundles")
    n, r, c1 = bundle.n, bundle.r, bundle.c1
    if m < bundle.m1:
        raise ValueError(f"no maps of this class: m = {m} < m_1 = {bundle.m1}")
    if m == bundle.m1:
        return 2 * n + bundle.k
    if m >= bundle.m[-1]:
        return 2 * n + r + r * m - c1
    raise ValueError(f"no dimension formula for m_1 < m = {m} < m_r = {bundle.m[-1]}")


def expected_dimension(bundle: BundleSpec, A: CurveClass) -> int:
    """Expected dimension of maps modulo PSL(2): -K(A) + (n + r - 1) - 3."""
    return anticanonical_degree(bundle, A) + bundle.n + bundle.r - 1 - 3
