"""Quantum cohomology presentations of P(V), reduction, and their verification.

The quantum parameter q stands for e^(-t); a correction from a curve class A
carries q^(-K(A)), so with deg h = deg xi = deg q = 1 both relations are
homogeneous (of degree n+1 and r).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import prod

from .classical import (
    H, ONE, Q, QUANTUM_SHAPE, QUANTUM_VERIFIED, XI, BundleError, BundleSpec,
    NormalForm, PresentationError, Relation, RingPresentation, chern_classes, chern_polynomial,
    classical_normal_form, classical_presentation, integrate_top,
)
from .exact_algebra import RING_GENS, IntPoly
from .fano import HypothesisError, hypothesis_report
from .gw import _mono, gw_table, invariant_value

# ---------------------------------------------------------------------------
# construction


def _factor_text(m: int, e: int) -> str:
    base = "(xi - h)" if m == 1 else f"(xi - {m}*h)"
    return base if e == 1 else f"{base}^{e}"


def _q_text(d: int) -> str:
    return "1" if d == 0 else "q" if d == 1 else f"q^{d}"


def _product_text(factors: list[str], tail: str | None = None) -> str:
    parts = [f for f in factors if f]
    if tail and tail != "1":
        parts.append(tail)
    return "*".join(parts) if parts else "1"


def _signed_term(c: int, a: int, b: int, first: bool) -> str:
    """One term c * xi^a * h^b of a sum ordered by falling xi-degree."""
    mono = "*".join(x for x in (
        "" if b == 0 else "h" if b == 1 else f"h^{b}",
        "" if a == 0 else "xi" if a == 1 else f"xi^{a}") if x) or "1"
    body = mono if abs(c) == 1 and mono != "1" else f"{abs(c)}*{mono}" if mono != "1" else str(abs(c))
    if first:
        return body if c > 0 else f"-{body}"
    return f"+ {body}" if c > 0 else f"- {body}"


def batyrev_presentation(bundle: BundleSpec) -> RingPresentation:
    """h^(n+1) = prod (xi - m_i h)^(m_i - 1) q^(n+1+r-c1) and prod (xi - m_i h) = q^r."""
    if bundle.kind != "split":
        raise BundleError("the product formula is for split bundles")
    if bundle.m1 != 1:
        raise BundleError(f"needs min m_i = 1; twist V by O({1 - bundle.m1}), which leaves P(V) unchanged")
    n, r, c1 = bundle.n, bundle.r, bundle.c1
    d1 = n + 1 + r - c1
    if d1 < 1:
        raise HypothesisError(f"{bundle}: c1 = {c1} >= n+1+r = {n + 1 + r}, P(V) is not Fano")
    counts: dict[int, int] = {}
    for m in bundle.m:
        counts[m] = counts.get(m, 0) + 1

    first = prod(((XI - m * H) ** (m - 1) for m in bundle.m), start=ONE) * Q ** d1
    second = prod((XI - m * H for m in bundle.m), start=ONE)
    disp1 = f"h^{n + 1} = " + _product_text(
        [_factor_text(m, (m - 1) * c) for m, c in sorted(counts.items()) if m > 1], _q_text(d1))
    disp2 = _product_text([_factor_text(m, c) for m, c in sorted(counts.items())]) + f" = {_q_text(r)}"
    hyp = hypothesis_report(bundle)
    proved = hyp["product_formula_proved"]
    return RingPresentation(
        bundle,
        (Relation(H ** (n + 1), first, disp1), Relation(second, Q ** r, disp2)),
        QUANTUM_VERIFIED if proved else QUANTUM_SHAPE,
        "batyrev-proved" if proved else "batyrev-conjectural",
        hyp.to_dict(),
    )


def tangent_presentation(n: int) -> RingPresentation:
    """h^(n+1) = xi q^n and sum (-1)^i C(n+1, i) h^i xi^(n-i) = (1 + (-1)^n) q^n."""
    bundle = BundleSpec.tangent(n)
    lhs2 = chern_polynomial(bundle)
    const = 1 + (-1) ** n
    lhs_text = " ".join(_signed_term(coef, n - j, j, first=(j == 0))
                        for j, coef in enumerate(chern_classes(bundle)[:n + 1]) for coef in [(-1) ** j * coef])
    disp1 = f"h^{n + 1} = xi*{_q_text(n)}"
    disp2 = f"{lhs_text} = {const}*{_q_text(n)}" if const else f"{lhs_text} = 0"
    return RingPresentation(
        bundle,
        (Relation(H ** (n + 1), XI * Q ** n, disp1), Relation(lhs2, const * Q ** n, disp2)),
        QUANTUM_VERIFIED, "tangent-closed-form", hypothesis_report(bundle).to_dict(),
    )


def _unknown(name: str, i: int, j: int, d: int) -> tuple[str, IntPoly]:
    return (f"{name}[{i}][{j}]", IntPoly.monomial((i, j, d)))


def theoremB_shape(bundle: BundleSpec) -> RingPresentation:
    """The general shape of the two quantum relations, with every known coefficient filled in.

    First relation: h^(n+1) = sum_{i+j <= c1-r} a[i][j] h^i xi^j q^(n+1-i-j); when
    the sharpened hypotheses hold only i+j = c1-r survives, with a[0][c1-r] = 1
    whenever c1 < 2r.  For split bundles in the proved range the remaining a's
    are solved from the W_i.  Second relation: the Chern polynomial equals
    q^r plus b-terms of (h, xi)-degree <= c1-n-1.  The tangent bundle is
    resolved from the known invariants.
    """
    hyp = hypothesis_report(bundle)
    if not hyp["general_shape"]:
        raise HypothesisError(f"{bundle}: needs c1 <= n, or c1 <= n+r with V(-1) nef "
                              f"(c1 = {bundle.c1}, n = {bundle.n}, r = {bundle.r})")
    if bundle.kind == "tangent":
        return _tangent_from_invariants(bundle, hyp)

    n, r, c1 = bundle.n, bundle.r, bundle.c1
    top = c1 - r
    known1 = IntPoly()
    unknowns1: list[tuple[str, IntPoly]] = []
    provenance = ["general-shape"]
    if hyp["first_relation_sharp"]:
        d = n + 1 + r - c1
        solved = None
        if bundle.kind == "split" and bundle.m1 == 1 and hyp["section_count_proved"]:
            solved = _a_from_w(bundle)
            provenance.append("a-from-W")
        for i in range(top + 1):
            if solved is not None:
                known1 = known1 + solved[i] * IntPoly.monomial((i, top - i, d))
            elif i == 0:
                known1 = known1 + IntPoly.monomial((0, top, d))
            else:
                unknowns1.append(_unknown("a", i, top - i, d))
    else:
        for s in range(top + 1):
            for i in range(s + 1):
                j = s - i
                if (i, j) == (0, top) and c1 < 2 * r:
                    known1 = known1 + IntPoly.monomial((0, top, n + 1 - s))
                else:
                    unknowns1.append(_unknown("a", i, j, n + 1 - s))

    known2 = Q ** r
    unknowns2: list[tuple[str, IntPoly]] = []
    btop = c1 - n - 1
    if btop >= 0:
        if hyp["second_relation_sharp"]:
            if bundle.kind == "split" and hyp["second_relation_plain"]:
                provenance.append("b-vanish")
            else:
                d = n + 1 + r - c1
                unknowns2 = [_unknown("b", i, btop - i, d) for i in range(btop + 1)]
        else:
            unknowns2 = [_unknown("b", i, s - i, r - s) for s in range(btop + 1) for i in range(s + 1)]

    rel1 = Relation(H ** (n + 1), known1, None, tuple(unknowns1))
    rel2 = Relation(chern_polynomial(bundle), known2, None, tuple(unknowns2))
    kind = QUANTUM_VERIFIED if not unknowns1 and not unknowns2 else QUANTUM_SHAPE
    return RingPresentation(bundle, (rel1, rel2), kind, "+".join(provenance), hyp.to_dict())


def _a_from_w(bundle: BundleSpec) -> list[int]:
    """Solve sum_j a_j <h^j xi^(c1-r-j) h^(n-i) xi^(2r-c1-1+i)> = W_i for the a_j.

    The pairing matrix is lower unitriangular (h^(n+1) = 0 kills j > i).
    """
    n, r, c1 = bundle.n, bundle.r, bundle.c1
    top = c1 - r
    w = gw_table(bundle, methods=("generating-function",)).values
    a: list[int] = []
    for i in range(top + 1):
        dual = H ** (n - i) * XI ** (2 * r - c1 - 1 + i)
        acc = sum(a[j] * integrate_top(H ** j * XI ** (top - j) * dual, bundle) for j in range(i))
        diag = integrate_top(H ** i * XI ** (top - i) * dual, bundle)
        if diag != 1:
            raise ArithmeticError(f"pairing matrix is not unitriangular at {i}: {diag}")
        a.append(w[i] - acc)
    return a


def _tangent_from_invariants(bundle: BundleSpec, hyp) -> RingPresentation:
    """Assemble h^(n+1) = (a1 h + xi) q^n and the second constant 1 + b0 from invariant values."""
    n = bundle.n
    c = chern_classes(bundle)
    a1p = invariant_value(bundle, "tangent-pairs", (_mono(1, 0), _mono(n - 1, 0)))
    a3p = invariant_value(bundle, "section-leading")
    a2p = invariant_value(bundle, "tangent-point") - c[1] * a3p
    a1 = a1p + a2p

    def b2(i):
        if i == 0:
            pair = (_mono(n - 1, 0), _mono(1, 0))
        elif i == n:
            pair = (_mono(0, 1), _mono(0, n - 1))
        else:
            pair = (_mono(n - i, 0), _mono(0, i))
        return invariant_value(bundle, "tangent-pairs", pair)

    b0 = sum((-1) ** i * c[i] * b2(n - i) for i in range(n + 1))
    rel1 = Relation(H ** (n + 1), (a1 * H + a3p * XI) * Q ** n)
    rel2 = Relation(chern_polynomial(bundle), (1 + b0) * Q ** n)
    return RingPresentation(bundle, (rel1, rel2), QUANTUM_VERIFIED, "general-shape+known-invariants",
                            hyp.to_dict())


def quantum_presentation(bundle: BundleSpec) -> RingPresentation:
    if bundle.kind == "tangent":
        return tangent_presentation(bundle.n)
    if bundle.kind == "split":
        return batyrev_presentation(bundle)
    return theoremB_shape(bundle)


# ---------------------------------------------------------------------------
# arithmetic in the presented ring


def quantum_normal_form(p: IntPoly, pres: RingPresentation) -> NormalForm:
    if not pres.determined:
        raise PresentationError("presentation has undetermined coefficients")
    return NormalForm(pres.reducer.reduce(p.with_gens(RING_GENS)), pres)


def quantum_product(x: NormalForm, y: NormalForm, pres: RingPresentation | None = None) -> NormalForm:
    pres = pres or x.presentation
    if x.presentation != pres or y.presentation != pres:
        raise PresentationError("factors belong to different presentations")
    return quantum_normal_form(x.poly * y.poly, pres)


def lift(nf: NormalForm, pres: RingPresentation) -> NormalForm:
    """Reinterpret a normal form (e.g. a classical one) in another presentation."""
    if nf.presentation.bundle != pres.bundle:
        raise PresentationError("normal forms belong to different bundles")
    return quantum_normal_form(nf.poly, pres)


# ---------------------------------------------------------------------------
# verification


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail", "detail": self.detail}


@dataclass
class VerificationReport:
    bundle: BundleSpec
    kind: str
    rank: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"bundle": self.bundle.to_dict(), "kind": self.kind, "rank": self.rank,
                "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def random_ring_poly(rng: random.Random, max_deg: int, n_terms: int = 6, coeff: int = 9,
                     q_deg: int = 2) -> IntPoly:
    terms = {}
    for _ in range(n_terms):
        a = rng.randint(0, max_deg)
        b = rng.randint(0, max_deg - a)
        terms[(a, b, rng.randint(0, q_deg))] = rng.randint(-coeff, coeff)
    return IntPoly(terms)


def verify_presentation(pres: RingPresentation, bundle: BundleSpec | None = None, *,
                        samples: int = 40, seed: int = 0) -> VerificationReport:
    """Run the structural checks on a fully determined presentation.

    Failures are recorded in the report, never raised.
    """
    bundle = bundle or pres.bundle
    n, r = bundle.n, bundle.r
    report = VerificationReport(bundle, pres.kind, pres.rank)
    add = report.checks.append
    if not pres.determined:
        add(Check("determined", False, "presentation has undetermined coefficients"))
        return report
    f1, f2 = pres.polys()

    # grading
    g1, g2 = f1.weighted_degrees(), f2.weighted_degrees()
    add(Check("homogeneity", g1 == {n + 1} and g2 == {r},
              f"first relation degrees {sorted(g1)} (want {n + 1}), second {sorted(g2)} (want {r})"))

    # q -> 0 recovers the ordinary relations
    c1_, c2_ = classical_presentation(bundle).polys()
    s1, s2 = f1.specialize("q", 0), f2.specialize("q", 0)
    add(Check("classical_limit", s1 == c1_.with_gens(RING_GENS) and s2 == c2_.with_gens(RING_GENS),
              f"q=0 gives {s1} ; {s2}"))

    # reduction: well-founded rules, S-polynomial, confluence, spanning
    try:
        red = pres.reducer
    except ValueError as exc:
        add(Check("rewrite_rules", False, str(exc)))
        return report
    add(Check("rewrite_rules", True, "leads h^(n+1), xi^r with unit coefficients"))
    spoly = XI ** r * f1 - H ** (n + 1) * f2
    s_nf = red.reduce(spoly)
    add(Check("s_polynomial", s_nf.is_zero(), f"normal form of the S-polynomial: {s_nf}"))
    rel_nf = (red.reduce(f1), red.reduce(f2))
    add(Check("relations_vanish", all(x.is_zero() for x in rel_nf), "both relations reduce to 0"))

    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        p = random_ring_poly(rng, n + r + 2)
        ref = red.reduce(p)
        if any(red.reduce_random(p, rng) != ref for _ in range(2)):
            bad += 1
    add(Check("confluence", bad == 0, f"{samples} random elements, {bad} disagreements"))

    outside = []
    span = set()
    for a in range(2 * n + 1):
        for b in range(2 * r + 1):
            nf = red.monomial_nf(a, b)
            for (i, j, _), _c in nf:
                span.add((i, j))
                if i > n or j >= r:
                    outside.append((a, b))
    basis = set(pres.basis)
    ok_rank = not outside and span <= basis and len(basis) == (n + 1) * r
    add(Check("rank", ok_rank, f"monomials h^a xi^b (a<={2 * n}, b<={2 * r}) reduce onto "
                                f"{len(basis)} basis elements" + (f"; escapes at {outside[:3]}" if outside else "")))

    # leading-term shape
    hyp = hypothesis_report(bundle)
    c1 = bundle.c1
    d_a2 = n + 1 + r - c1
    if hyp["first_relation_sharp"] and hyp["general_shape"]:
        qs = {e[2] for e, _ in f1 if e[2] > 0}
        add(Check("q_powers_first", qs <= {d_a2}, f"q-powers {sorted(qs)}, allowed {{{d_a2}}}"))
    if hyp["second_relation_sharp"] and hyp["general_shape"]:
        allowed = {r} | ({d_a2} if c1 > n else set())
        qs = {e[2] for e, _ in f2 if e[2] > 0}
        add(Check("q_powers_second", qs <= allowed, f"q-powers {sorted(qs)}, allowed {sorted(allowed)}"))

    # pairing identity tying the first relation to the W_i
    if bundle.kind == "split" and bundle.m1 == 1 and c1 < 2 * r:
        corr = f1.coefficient_of_power("q", d_a2)
        corr = -corr  # f1 = h^(n+1) - (correction) q^d
        w = gw_table(bundle, methods=("generating-function",)).values
        got = [integrate_top(corr * H ** (n - i) * XI ** (2 * r - c1 - 1 + i), bundle)
               for i in range(c1 - r + 1)]
        add(Check("w_pairing", got == w, f"pairings {got}, W {w}"))
    return report


def leading_term_defect(x: IntPoly, y: IntPoly, pres: RingPresentation) -> IntPoly:
    """Quantum product minus the lifted classical product; lies in (q) in a correct ring."""
    quantum = quantum_normal_form(x * y, pres).poly
    classical = classical_normal_form(x.specialize("q", 0) * y.specialize("q", 0), pres.bundle).poly
    return quantum - quantum_normal_form(classical, pres).poly
