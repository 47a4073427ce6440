"""The correction coefficients W_i of the first quantum relation, four ways.

W_i is the 3-point invariant of the section class A2 with insertions
h^nt, h^(n+1-nt), h^(n-i) xi^(2r-c1-1+i), nt = floor((n+1)/2).  The routes:

* generating function: coefficient of t^i in prod (1 - m_u t)^(m_u - 2);
* double sum: the binomial/composition sum it came from;
* Schubert integral over G(2, n+1) x P^(k-1) with the obstruction Euler class;
* classical pairing: integral of prod (xi - m_u h)^(m_u - 1) h^(n-i) xi^(2r-c1-1+i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod
from typing import Mapping

from .classical import H, XI, BundleError, BundleSpec, integrate_top
from .exact_algebra import binomial_power_series
from .fano import hypothesis_report
from .schubert import HHAT, SymmetricClass, incident_line_class, integrate_mixed, obstruction_euler_class

GENERATING_FUNCTION = "generating-function"
DOUBLE_SUM = "double-sum"
SCHUBERT_INTEGRAL = "schubert-integral"
CLASSICAL_PAIRING = "classical-pairing"
METHODS = (GENERATING_FUNCTION, DOUBLE_SUM, SCHUBERT_INTEGRAL, CLASSICAL_PAIRING)


def _check_index(bundle: BundleSpec, i: int):
    if bundle.kind != "split":
        raise BundleError("W_i is defined here for split bundles")
    top = bundle.c1 - bundle.r
    if not 0 <= i <= top:
        raise IndexError(f"i must lie in 0..c1-r = {top}, got {i}")


def _check_section_setup(bundle: BundleSpec):
    if bundle.m1 != 1:
        raise BundleError(f"needs min m_i = 1 (twist by O({1 - bundle.m1}) first)")
    if bundle.c1 >= 2 * bundle.r:
        raise BundleError(f"needs c1 < 2r, got c1 = {bundle.c1}, r = {bundle.r}")


def w_generating_function(bundle: BundleSpec, i: int) -> int:
    _check_index(bundle, i)
    series = binomial_power_series([(m, m - 2) for m in bundle.m], i)
    return series[i]


def _compositions(total: int, caps: list[int]):
    """Tuples (j_1..j_s) with sum ``total`` and 0 <= j_u <= caps[u]."""
    if not caps:
        if total == 0:
            yield ()
        return
    for j in range(min(total, caps[0]) + 1):
        for rest in _compositions(total - j, caps[1:]):
            yield (j,) + rest


def w_double_sum(bundle: BundleSpec, i: int) -> int:
    _check_index(bundle, i)
    _check_section_setup(bundle)
    r, c1 = bundle.r, bundle.c1
    heavy = bundle.m[bundle.k:]
    top = 2 * r - c1 - 1 + i
    total = 0
    for j in range(i + 1):
        inner = 0
        for js in _compositions(j, [m - 2 for m in heavy]):
            inner += prod(comb(m - 2, ju) * (m - 1) ** ju for m, ju in zip(heavy, js))
        total += comb(top, i - j) * (-1) ** j * inner
    return total


def schubert_integrand(bundle: BundleSpec, i: int) -> SymmetricClass:
    """The class on G(2, n+1) x P^(k-1) whose degree is W_i (before hhat^k = 0)."""
    _check_index(bundle, i)
    _check_section_setup(bundle)
    n, r, c1, k = bundle.n, bundle.r, bundle.c1, bundle.k
    nt = (n + 1) // 2
    top = 2 * r - c1 - 1 + i
    point_lines = incident_line_class(nt, n, k) * incident_line_class(n + 1 - nt, n, k)
    # restriction of h^(n-i) xi^top to P^n x P^(k-1), where xi restricts to h + hhat;
    # h^p vanishes for p > n, which cuts the sum at j = i; h^0 pushes forward to 0
    third = SymmetricClass(0 * HHAT, n, k)
    for j in range(max(0, i - n + 1), i + 1):
        piece = incident_line_class(n - i + j, n, k) * SymmetricClass(HHAT ** (top - j), n, k)
        third = third + piece.scale(comb(top, j))
    return point_lines * third * obstruction_euler_class(bundle, k)


def w_schubert_integral(bundle: BundleSpec, i: int) -> int:
    return integrate_mixed(schubert_integrand(bundle, i).truncated())


def w_classical_pairing(bundle: BundleSpec, i: int) -> int:
    _check_index(bundle, i)
    r, c1, n = bundle.r, bundle.c1, bundle.n
    if c1 >= 2 * r:
        raise BundleError(f"needs c1 < 2r, got c1 = {c1}, r = {r}")
    f = prod(((XI - m * H) ** (m - 1) for m in bundle.m), start=H ** 0)
    return integrate_top(f * H ** (n - i) * XI ** (2 * r - c1 - 1 + i), bundle)


_ROUTES = {
    GENERATING_FUNCTION: w_generating_function,
    DOUBLE_SUM: w_double_sum,
    SCHUBERT_INTEGRAL: w_schubert_integral,
    CLASSICAL_PAIRING: w_classical_pairing,
}


# ---------------------------------------------------------------------------
# tables


@dataclass
class GwEntry:
    i: int
    methods: dict[str, int]
    conjectural: bool

    @property
    def value(self) -> int:
        return self.methods[GENERATING_FUNCTION]

    @property
    def agree(self) -> bool:
        return len(set(self.methods.values())) == 1

    def to_dict(self) -> dict:
        return {"i": self.i, "value": self.value, "methods": dict(self.methods),
                "agree": self.agree, "conjectural": self.conjectural}


@dataclass
class GwTable:
    bundle: BundleSpec
    entries: list[GwEntry] = field(default_factory=list)

    @property
    def values(self) -> list[int]:
        return [e.value for e in self.entries]

    @property
    def agree(self) -> bool:
        return all(e.agree for e in self.entries)

    @property
    def conjectural(self) -> bool:
        return any(e.conjectural for e in self.entries)

    def to_dict(self) -> dict:
        return {"bundle": self.bundle.to_dict(), "values": [e.to_dict() for e in self.entries]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "GwTable":
        entries = [GwEntry(int(e["i"]), {k: int(v) for k, v in e["methods"].items()},
                           bool(e["conjectural"])) for e in d["values"]]
        return cls(BundleSpec.from_dict(d["bundle"]), entries)


def gw_table(bundle: BundleSpec, methods=METHODS) -> GwTable:
    """W_0..W_(c1-r) by every requested route.

    Entries outside the proved range (c1 < min(2r, (n+1+2r)/2)) are tagged
    conjectural rather than withheld.
    """
    if bundle.kind != "split":
        raise BundleError("W_i is defined here for split bundles")
    _check_section_setup(bundle)
    conjectural = not hypothesis_report(bundle)["section_count_proved"]
    table = GwTable(bundle)
    for i in range(bundle.c1 - bundle.r + 1):
        table.entries.append(GwEntry(i, {name: _ROUTES[name](bundle, i) for name in methods}, conjectural))
    return table


# ---------------------------------------------------------------------------
# invariants taken as known values


@dataclass(frozen=True)
class KnownInvariant:
    source: str
    curve: str
    insertions: tuple[str, str, str]
    value: int
    applicable: bool
    condition: str

    def to_dict(self) -> dict:
        return {"source": self.source, "curve": self.curve, "insertions": list(self.insertions),
                "value": self.value, "applicable": self.applicable, "condition": self.condition}


def _mono(i: int, j: int) -> str:
    parts = [f"h^{i}" if i > 1 else "h" if i == 1 else "", f"xi^{j}" if j > 1 else "xi" if j == 1 else ""]
    return "*".join(p for p in parts if p) or "1"


def known_invariants(bundle: BundleSpec) -> list[KnownInvariant]:
    """Gromov-Witten values fixed by geometric arguments, flagged by applicability."""
    n, r, c1 = bundle.n, bundle.r, bundle.c1
    hyp = hypothesis_report(bundle)
    tangent = bundle.kind == "tangent"
    out = [KnownInvariant("fiber-line", "A1", ("xi", _mono(0, r - 1), _mono(n, r - 1)), 1, True,
                          "always")]
    for q1 in range(r):
        for q2 in range(q1, r):
            vanishes = q1 + q2 < r
            out.append(KnownInvariant("fiber-vanishing", "b*A1, b>=1",
                                      (f"h^p1*xi^{q1}", f"h^p2*xi^{q2}", "any"),
                                      0, vanishes, f"q1 + q2 = {q1 + q2} < r = {r}"))
    l38 = bool(hyp["leading_pinned"] and hyp["general_shape"])
    if c1 < 2 * r:
        third = _mono(n, 2 * r - c1 - 1)
    else:
        third = f"h^{n}*xi^(2r-c1-1)"
    out.append(KnownInvariant("section-leading", "A2", ("h", _mono(n, 0), third), 1, l38,
                              "c1 < 2r and V Fano with the twisted route"))
    out.append(KnownInvariant("tangent-point", "A2", ("h", _mono(n, 0), _mono(n - 1, n - 1)), n, tangent,
                              "tangent bundle"))
    for j, k, s, t in _quadruples(n):
        out.append(KnownInvariant("tangent-pairs", "A2", (_mono(j, k), _mono(s, t), _mono(n, n - 1)), 1,
                                  tangent, "tangent bundle; j+k+s+t = n, max(j,k) > 0, max(s,t) > 0"))
    return out


def _quadruples(n: int):
    for j in range(n + 1):
        for k in range(n + 1 - j):
            for s in range(n + 1 - j - k):
                t = n - j - k - s
                if max(j, k) > 0 and max(s, t) > 0:
                    yield j, k, s, t


def fiber_invariant_vanishes(q1: int, q2: int, r: int) -> bool:
    """Invariants of b*A1 with insertions h^p1 xi^q1, h^p2 xi^q2, anything vanish when q1+q2 < r."""
    return q1 + q2 < r


def invariant_value(bundle: BundleSpec, source: str, insertions: tuple[str, str] | None = None) -> int:
    """Look up one applicable known value; ``insertions`` picks among the tangent-pairs entries."""
    for inv in known_invariants(bundle):
        if inv.source != source or not inv.applicable:
            continue
        if insertions is None or tuple(sorted(inv.insertions[:2])) == tuple(sorted(insertions)):
            return inv.value
    raise KeyError(f"no applicable {source} invariant for {bundle} with {insertions}")
