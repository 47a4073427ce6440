"""Ordinary cohomology of P(V) over P^n: Z[h, xi] modulo h^(n+1) and the Chern relation.

Also home to the pieces every ring in the package shares: the bundle
description, ring presentations, normal forms and the rewriting engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb, prod
from typing import Iterable, Mapping, Sequence

from .exact_algebra import RING_GENS, IntPoly, binomial_power_series

CLASSICAL = "classical"
QUANTUM_VERIFIED = "quantum-verified"
QUANTUM_SHAPE = "quantum-shape"
KINDS = (CLASSICAL, QUANTUM_VERIFIED, QUANTUM_SHAPE)

H, XI, Q = IntPoly.gens(RING_GENS)
ONE = IntPoly.const(1)


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class BundleSpec:
    """The bundle V over P^n.

    ``split``: V = O(m_1) + ... + O(m_r) with 1 <= m_1 <= ... <= m_r, r >= 2.
    ``tangent``: V = T_{P^n}, n >= 2, so r = n.
    ``generic``: any other ample V, described only by its Chern numbers,
    its generic splitting type and whether V(-1) is nef.  Only the
    presentation-shape machinery accepts it.
    """

    kind: str
    n: int
    m: tuple[int, ...] = ()
    chern: tuple[int, ...] = ()
    twist_nef: bool | None = None

    def __post_init__(self):
        if self.kind not in ("split", "tangent", "generic"):
            raise BundleError(f"unknown bundle kind {self.kind!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise BundleError(f"base dimension must be a positive integer, got {self.n!r}")
        if self.kind == "tangent":
            if self.n < 2:
                raise BundleError("the tangent bundle case needs n >= 2")
            if self.m or self.chern:
                raise BundleError("tangent bundles take no splitting data")
            return
        if len(self.m) < 2:
            raise BundleError(f"rank must be at least 2, got m={self.m}")
        if any(mi < 1 for mi in self.m):
            raise BundleError(f"ampleness needs every m_i >= 1, got m={self.m}")
        if list(self.m) != sorted(self.m):
            raise BundleError(f"m must be nondecreasing, got m={self.m}")
        if self.kind == "split":
            if self.chern:
                raise BundleError("split bundles derive their Chern classes from m")
        else:
            if len(self.chern) != len(self.m) + 1 or self.chern[0] != 1:
                raise BundleError("generic bundles need Chern numbers c_0 = 1, c_1, ..., c_r")
            if self.chern[1] != sum(self.m):
                raise BundleError("c_1 must equal the sum of the splitting type")

    @classmethod
    def split(cls, n: int, m: Iterable[int]) -> "BundleSpec":
        return cls("split", n, tuple(sorted(int(x) for x in m)))

    @classmethod
    def tangent(cls, n: int) -> "BundleSpec":
        return cls("tangent", n)

    @classmethod
    def generic(cls, n: int, chern: Sequence[int], splitting: Iterable[int],
                twist_nef: bool | None = None) -> "BundleSpec":
        return cls("generic", n, tuple(sorted(splitting)), tuple(chern), twist_nef)

    @property
    def r(self) -> int:
        return self.n if self.kind == "tangent" else len(self.m)

    @property
    def splitting_type(self) -> tuple[int, ...]:
        """Splitting type on a generic line."""
        if self.kind == "tangent":
            return (1,) * (self.n - 1) + (2,)
        return self.m

    @property
    def c1(self) -> int:
        return sum(self.splitting_type)

    @property
    def m1(self) -> int:
        return self.splitting_type[0]

    @property
    def k(self) -> int:
        """Multiplicity of the smallest splitting degree."""
        return self.splitting_type.count(self.m1)

    @property
    def is_twist_nef(self) -> bool | None:
        """Whether V(-1) is nef."""
        if self.kind == "split":
            return True
        if self.kind == "tangent":
            return True
        return self.twist_nef

    @property
    def label(self) -> str:
        if self.kind == "tangent":
            return f"tangent:n={self.n}"
        ms = ",".join(map(str, self.m))
        if self.kind == "split":
            return f"split:n={self.n},m={ms}"
        cs = ",".join(map(str, self.chern))
        return f"generic:n={self.n},m={ms},c={cs},nef={self.twist_nef}"

    def __str__(self):
        return self.label

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "n": self.n}
        if self.kind != "tangent":
            d["m"] = list(self.m)
        if self.kind == "generic":
            d["chern"] = list(self.chern)
            d["twist_nef"] = self.twist_nef
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "BundleSpec":
        return cls(d["kind"], int(d["n"]), tuple(d.get("m", ())), tuple(d.get("chern", ())),
                   d.get("twist_nef"))


def chern_classes(bundle: BundleSpec) -> tuple[int, ...]:
    """Integers c_0..c_r with c_i(V) = c_i h^i."""
    if bundle.kind == "split":
        return tuple(sum(prod(s) for s in combinations(bundle.m, i)) for i in range(bundle.r + 1))
    if bundle.kind == "tangent":
        return tuple(comb(bundle.n + 1, i) for i in range(bundle.n + 1))
    return bundle.chern


def segre_classes(bundle: BundleSpec, order: int) -> tuple[int, ...]:
    """s_0..s_order where sum (-1)^i s_i t^i = prod 1/(1 - m_u t)."""
    if bundle.kind != "split":
        raise BundleError("Segre classes are provided for split bundles only")
    series = binomial_power_series([(m, -1) for m in bundle.m], order)
    return tuple((-1) ** i * c for i, c in enumerate(series.coefficients))


def chern_polynomial(bundle: BundleSpec) -> IntPoly:
    """sum_i (-1)^i c_i h^i xi^(r-i), the left side of the second relation."""
    c = chern_classes(bundle)
    r = bundle.r
    return sum(((-1) ** i * c[i] * H ** i * XI ** (r - i) for i in range(r + 1)), IntPoly())


# ---------------------------------------------------------------------------
# rewriting


def _key(exps: tuple[int, ...]) -> tuple[int, int]:
    # (h, xi)-degree first, then xi-degree; q never takes part in the order
    return (exps[0] + exps[1], exps[1])


@dataclass(frozen=True)
class RewriteRule:
    """``h^a xi^b -> tail`` read off a relation whose coefficient at the lead is +-1."""

    lead: tuple[int, int]
    tail: IntPoly

    @classmethod
    def from_relation(cls, f: IntPoly, lead: tuple[int, int]) -> "RewriteRule":
        f = f.with_gens(RING_GENS)
        c = f.coefficient((lead[0], lead[1], 0))
        if c not in (1, -1):
            raise ValueError(f"relation {f} has coefficient {c} at its leading monomial; need +-1")
        if c == -1:
            f = -f
        mono = IntPoly.monomial((lead[0], lead[1], 0))
        tail = mono - f
        lead_key = _key((lead[0], lead[1], 0))
        for exps, _ in tail:
            if _key(exps) >= lead_key:
                raise ValueError(f"relation {f}: term with exponents {exps} is not below the lead")
        return cls(lead, tail)

    def applies(self, exps: tuple[int, ...]) -> bool:
        return exps[0] >= self.lead[0] and exps[1] >= self.lead[1]

    def apply(self, exps: tuple[int, ...], coeff: int) -> IntPoly:
        rest = IntPoly.monomial((exps[0] - self.lead[0], exps[1] - self.lead[1], exps[2]), coeff)
        return rest * self.tail


class Reducer:
    """Normal forms modulo two rewrite rules (xi-rule tried before h-rule).

    Monomial normal forms are memoized per instance.
    """

    def __init__(self, xi_rule: RewriteRule, h_rule: RewriteRule):
        self.rules = (xi_rule, h_rule)
        self._cache: dict[tuple[int, int], IntPoly] = {}

    def monomial_nf(self, a: int, b: int) -> IntPoly:
        hit = self._cache.get((a, b))
        if hit is not None:
            return hit
        exps = (a, b, 0)
        for rule in self.rules:
            if rule.applies(exps):
                out = IntPoly()
                da, db = a - rule.lead[0], b - rule.lead[1]
                for (i, j, k), c in rule.tail:
                    out = out + self.monomial_nf(da + i, db + j) * (c * Q ** k)
                break
        else:
            out = IntPoly.monomial(exps)
        self._cache[(a, b)] = out
        return out

    def reduce(self, p: IntPoly) -> IntPoly:
        p = p.with_gens(RING_GENS)
        out = IntPoly()
        for (a, b, k), c in p:
            out = out + self.monomial_nf(a, b) * (c * Q ** k)
        return out

    def is_reduced(self, p: IntPoly) -> bool:
        return not any(rule.applies(e) for e, _ in p.with_gens(RING_GENS) for rule in self.rules)

    def reduce_random(self, p: IntPoly, rng: random.Random, max_steps: int = 1_000_000) -> IntPoly:
        """Rewrite one randomly chosen term by one randomly chosen applicable rule at a time."""
        terms = dict(p.with_gens(RING_GENS).terms)
        for _ in range(max_steps):
            reducible = [e for e in terms if any(rule.applies(e) for rule in self.rules)]
            if not reducible:
                return IntPoly(terms)
            e = rng.choice(reducible)
            rule = rng.choice([rule for rule in self.rules if rule.applies(e)])
            c = terms.pop(e)
            for e2, c2 in rule.apply(e, c):
                v = terms.get(e2, 0) + c2
                if v:
                    terms[e2] = v
                else:
                    terms.pop(e2, None)
        raise RuntimeError("rewriting did not terminate")


# ---------------------------------------------------------------------------
# presentations and normal forms


@dataclass(frozen=True)
class Relation:
    """``lhs = rhs + sum(name * monomial)``; the unknowns only occur in shapes."""

    lhs: IntPoly
    rhs: IntPoly
    display: str | None = None
    unknowns: tuple[tuple[str, IntPoly], ...] = ()

    @property
    def poly(self) -> IntPoly:
        if self.unknowns:
            raise PresentationError("relation has undetermined coefficients")
        return self.lhs - self.rhs

    def text(self) -> str:
        rhs = self.rhs.to_text()
        extra = " + ".join(f"{name}*{mono}" if mono != ONE else name for name, mono in self.unknowns)
        if extra:
            rhs = extra if rhs == "0" else f"{rhs} + {extra}"
        return f"{self.lhs} = {rhs}"

    def to_dict(self) -> dict:
        d = {"lhs": self.lhs.to_text(), "rhs": self.rhs.to_text()}
        if self.display:
            d["display"] = self.display
        if self.unknowns:
            d["unknowns"] = [{"name": name, "monomial": mono.to_text()} for name, mono in self.unknowns]
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "Relation":
        unknowns = tuple((u["name"], IntPoly.parse(u["monomial"])) for u in d.get("unknowns", ()))
        return cls(IntPoly.parse(d["lhs"]), IntPoly.parse(d["rhs"]), d.get("display"), unknowns)


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class RingPresentation:
    """Two relations in h, xi (and q) with the monomial basis h^i xi^j, i <= n, j < r."""

    bundle: BundleSpec
    relations: tuple[Relation, Relation]
    kind: str = CLASSICAL
    provenance: str = "classical"
    hypotheses: Mapping = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PresentationError(f"unknown presentation kind {self.kind!r}")

    @property
    def n(self) -> int:
        return self.bundle.n

    @property
    def r(self) -> int:
        return self.bundle.r

    @property
    def generators(self) -> tuple[str, ...]:
        return ("h", "xi") if self.kind == CLASSICAL else RING_GENS

    @property
    def basis(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n + 1) for j in range(self.r)]

    @property
    def rank(self) -> int:
        return (self.n + 1) * self.r

    @property
    def determined(self) -> bool:
        return not any(rel.unknowns for rel in self.relations)

    def polys(self) -> tuple[IntPoly, IntPoly]:
        return tuple(rel.poly for rel in self.relations)

    @cached_property
    def reducer(self) -> Reducer:
        if not self.determined:
            raise PresentationError("cannot reduce modulo a presentation with unknown coefficients")
        f1, f2 = self.polys()
        return Reducer(RewriteRule.from_relation(f2, (0, self.r)),
                       RewriteRule.from_relation(f1, (self.n + 1, 0)))

    def to_dict(self) -> dict:
        return {
            "bundle": self.bundle.to_dict(),
            "generators": list(self.generators),
            "relations": [rel.to_dict() for rel in self.relations],
            "basis": [basis_label(i, j) for i, j in self.basis],
            "kind": self.kind,
            "provenance": self.provenance,
            "hypotheses": dict(self.hypotheses),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "RingPresentation":
        rels = tuple(Relation.from_dict(x) for x in d["relations"])
        return cls(BundleSpec.from_dict(d["bundle"]), rels, d["kind"], d.get("provenance", ""),
                   d.get("hypotheses", {}))


def basis_label(i: int, j: int) -> str:
    text = IntPoly.monomial((i, j, 0)).to_text()
    return text


@dataclass(frozen=True)
class NormalForm:
    """A reduced element: an IntPoly whose (h, xi)-part lies on the basis."""

    poly: IntPoly
    presentation: RingPresentation = field(repr=False)

    @property
    def coords(self) -> dict[tuple[int, int], IntPoly]:
        """Basis slot (i, j) -> coefficient, a polynomial in q (generators h, xi, q)."""
        out: dict[tuple[int, int], IntPoly] = {}
        for (i, j, k), c in self.poly:
            out[(i, j)] = out.get((i, j), IntPoly()) + c * Q ** k
        return out

    def int_coords(self) -> dict[tuple[int, int], int]:
        if self.poly.degree("q") > 0:
            raise PresentationError("normal form has q-dependent coordinates")
        return {(i, j): c for (i, j, _), c in self.poly}

    def __str__(self):
        return self.poly.to_text()

    def to_dict(self) -> dict:
        return {
            "normal_form": self.poly.to_text(),
            "coords": {basis_label(i, j): c.to_text() for (i, j), c in sorted(self.coords.items())},
        }


def classical_presentation(bundle: BundleSpec) -> RingPresentation:
    r1 = Relation(H ** (bundle.n + 1), IntPoly())
    r2 = Relation(chern_polynomial(bundle), IntPoly())
    return RingPresentation(bundle, (r1, r2), CLASSICAL, "classical")


def _as_classical_poly(p: IntPoly) -> IntPoly:
    p = p.with_gens(RING_GENS)
    if p.degree("q") > 0:
        raise PresentationError("classical ring elements cannot involve q")
    return p


def classical_normal_form(p: IntPoly, bundle: BundleSpec) -> NormalForm:
    pres = _classical_cached(bundle)
    return NormalForm(pres.reducer.reduce(_as_classical_poly(p)), pres)


_CLASSICAL_CACHE: dict[BundleSpec, RingPresentation] = {}


def _classical_cached(bundle: BundleSpec) -> RingPresentation:
    pres = _CLASSICAL_CACHE.get(bundle)
    if pres is None:
        pres = _CLASSICAL_CACHE[bundle] = classical_presentation(bundle)
    return pres


def integrate_top(p: IntPoly, bundle: BundleSpec) -> int:
    """Coefficient of h^n xi^(r-1) in the normal form (the point class)."""
    nf = classical_normal_form(p, bundle)
    return nf.poly.coefficient((bundle.n, bundle.r - 1, 0))
