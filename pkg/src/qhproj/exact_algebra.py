"""Sparse integer polynomials and truncated integer power series.

Everything here is exact: coefficients are Python ints, so nothing ever
overflows or rounds.  Values are immutable once built.
"""

from __future__ import annotations

import ast
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

RING_GENS = ("h", "xi", "q")
SCHUBERT_GENS = ("alpha", "beta", "hhat")

# spellings accepted by the parser besides the canonical names
_ALIASES = {"ξ": "xi", "α": "alpha", "β": "beta", "ĥ": "hhat"}


class GeneratorMismatch(ValueError):
    pass


def _grlex_key(exps: tuple[int, ...]):
    return (-sum(exps), tuple(-e for e in exps))


class IntPoly:
    """Polynomial with integer coefficients in an ordered set of generators.

    Terms are kept as a map from exponent tuples to nonzero ints.

    >>> h, xi = IntPoly.gens(("h", "xi"))
    >>> str((h + xi) * (h - xi))
    'h^2 - xi^2'
    """

    __slots__ = ("_gens", "_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None,
                 gens: Sequence[str] = RING_GENS):
        gens = tuple(gens)
        if len(set(gens)) != len(gens):
            raise ValueError(f"repeated generator in {gens}")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(gens):
                raise ValueError(f"exponent vector {exps} does not match generators {gens}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self._gens = gens
        self._terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def const(cls, c: int, gens: Sequence[str] = RING_GENS) -> "IntPoly":
        return cls({(0,) * len(gens): c}, gens)

    @classmethod
    def monomial(cls, exps: Sequence[int] | Mapping[str, int], coeff: int = 1,
                 gens: Sequence[str] = RING_GENS) -> "IntPoly":
        gens = tuple(gens)
        if isinstance(exps, Mapping):
            exps = _exps_from_mapping(exps, gens)
        return cls({tuple(exps): coeff}, gens)

    @classmethod
    def gen(cls, name: str, gens: Sequence[str] = RING_GENS) -> "IntPoly":
        return cls.monomial({name: 1}, 1, gens)

    @classmethod
    def gens(cls, gens: Sequence[str] = RING_GENS) -> tuple["IntPoly", ...]:
        return tuple(cls.gen(g, gens) for g in gens)

    @classmethod
    def parse(cls, text: str, gens: Sequence[str] = RING_GENS) -> "IntPoly":
        """Parse a polynomial written with ``+ - * ^`` and parentheses.

        Accepts the canonical text form produced by ``str`` and anything
        else built from integers and generator names.
        """
        gens = tuple(gens)
        src = text.strip()
        for alias, name in _ALIASES.items():
            src = src.replace(alias, name)
        src = src.replace("^", "**").replace("−", "-")
        if not src:
            raise ValueError("empty polynomial text")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None
        return _eval_ast(tree.body, gens, text)

    # -- basic accessors ------------------------------------------------

    @property
    def generators(self) -> tuple[str, ...]:
        return self._gens

    @property
    def terms(self) -> Mapping[tuple[int, ...], int]:
        return MappingProxyType(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def index(self, name: str) -> int:
        try:
            return self._gens.index(name)
        except ValueError:
            raise GeneratorMismatch(f"{name!r} is not among {self._gens}") from None

    def coefficient(self, exps: Sequence[int] | Mapping[str, int]) -> int:
        if isinstance(exps, Mapping):
            exps = _exps_from_mapping(exps, self._gens)
        return self._terms.get(tuple(exps), 0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * len(self._gens), 0)

    def degree(self, name: str | None = None) -> int:
        """Largest exponent of ``name`` (total degree when omitted); -1 for zero."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e) for e in self._terms)
        i = self.index(name)
        return max(e[i] for e in self._terms)

    def weighted_degrees(self, weights: Sequence[int] | None = None) -> set[int]:
        weights = weights or (1,) * len(self._gens)
        return {sum(w * e for w, e in zip(weights, exps)) for exps in self._terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return len(self.weighted_degrees(weights)) <= 1

    # -- generator bookkeeping ------------------------------------------

    def with_gens(self, gens: Sequence[str]) -> "IntPoly":
        """Re-express over another generator list.

        Generators absent from ``gens`` must not occur in the polynomial.
        """
        gens = tuple(gens)
        if gens == self._gens:
            return self
        pos = []
        for i, g in enumerate(self._gens):
            if g in gens:
                pos.append((i, gens.index(g)))
            elif any(e[i] for e in self._terms):
                raise GeneratorMismatch(f"{g!r} occurs but is missing from {gens}")
        out = {}
        for exps, c in self._terms.items():
            new = [0] * len(gens)
            for i, j in pos:
                new[j] = exps[i]
            out[tuple(new)] = c
        return IntPoly(out, gens)

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            if other._gens != self._gens:
                raise GeneratorMismatch(f"generator sets differ: {self._gens} vs {other._gens}")
            return other
        if isinstance(other, int):
            return IntPoly.const(other, self._gens)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exps, c in other._terms.items():
            v = out.get(exps, 0) + c
            if v:
                out[exps] = v
            else:
                out.pop(exps, None)
        return _raw(out, self._gens)

    __radd__ = __add__

    def __neg__(self):
        return _raw({e: -c for e, c in self._terms.items()}, self._gens)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return _raw(out, self._gens)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = IntPoly.const(1, self._gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "IntPoly":
        return _raw({e: v * c for e, v in self._terms.items()} if c else {}, self._gens)

    def exact_div(self, d: int) -> "IntPoly":
        out = {}
        for e, c in self._terms.items():
            quot, rem = divmod(c, d)
            if rem:
                raise ArithmeticError(f"coefficient {c} not divisible by {d}")
            out[e] = quot
        return _raw(out, self._gens)

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other, self._gens)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._gens == other._gens and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._gens, frozenset(self._terms.items())))
        return self._hash

    # -- substitutions --------------------------------------------------

    def specialize(self, name: str, value: int) -> "IntPoly":
        """Substitute an integer for one generator (the generator stays in the list)."""
        i = self.index(name)
        out: dict[tuple[int, ...], int] = {}
        for exps, c in self._terms.items():
            e = list(exps)
            k = e[i]
            e[i] = 0
            e = tuple(e)
            out[e] = out.get(e, 0) + c * value ** k
        return IntPoly(out, self._gens)

    def coefficient_of_power(self, name: str, k: int) -> "IntPoly":
        """The coefficient of ``name^k``, as a polynomial free of ``name``."""
        i = self.index(name)
        out = {}
        for exps, c in self._terms.items():
            if exps[i] == k:
                e = list(exps)
                e[i] = 0
                out[tuple(e)] = c
        return _raw(out, self._gens)

    def truncate(self, name: str, max_power: int) -> "IntPoly":
        """Drop every term whose ``name``-exponent exceeds ``max_power``."""
        i = self.index(name)
        return _raw({e: c for e, c in self._terms.items() if e[i] <= max_power}, self._gens)

    def swap(self, a: str, b: str) -> "IntPoly":
        i, j = self.index(a), self.index(b)
        out = {}
        for exps, c in self._terms.items():
            e = list(exps)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return _raw(out, self._gens)

    def evaluate(self, values: Mapping[str, int]) -> int:
        total = 0
        for exps, c in self._terms.items():
            term = c
            for g, e in zip(self._gens, exps):
                if e:
                    term *= values[g] ** e
            total += term
        return total

    # -- text -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]))

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        """Canonical text: terms in graded-lex order, e.g. ``h^2*xi^3*q - 3*h*xi``."""
        if not self._terms:
            return "0"
        pieces = []
        for k, (exps, c) in enumerate(self.sorted_terms()):
            mono = "*".join(g if e == 1 else f"{g}^{e}" for g, e in zip(self._gens, exps) if e)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if k == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"IntPoly({self.to_text()!r}, gens={self._gens})"


def _raw(terms: dict, gens: tuple[str, ...]) -> IntPoly:
    # trusted fast path: terms already clean
    p = IntPoly.__new__(IntPoly)
    p._gens = gens
    p._terms = terms
    p._hash = None
    return p


def _exps_from_mapping(exps: Mapping[str, int], gens: tuple[str, ...]) -> tuple[int, ...]:
    unknown = set(exps) - set(gens)
    if unknown:
        raise GeneratorMismatch(f"unknown generators {sorted(unknown)} for {gens}")
    return tuple(int(exps.get(g, 0)) for g in gens)


def _eval_ast(node, gens, text) -> IntPoly:
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left, gens, text)
        if isinstance(node.op, ast.Pow):
            k = _int_literal(node.right, text)
            return left ** k
        right = _eval_ast(node.right, gens, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
    elif isinstance(node, ast.UnaryOp):
        val = _eval_ast(node.operand, gens, text)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
    elif isinstance(node, ast.Constant) and type(node.value) is int:
        return IntPoly.const(node.value, gens)
    elif isinstance(node, ast.Name):
        if node.id not in gens:
            raise ValueError(f"unknown generator {node.id!r} in {text!r}; expected one of {gens}")
        return IntPoly.gen(node.id, gens)
    raise ValueError(f"unsupported syntax in polynomial {text!r}")


def _int_literal(node, text) -> int:
    if isinstance(node, ast.Constant) and type(node.value) is int and node.value >= 0:
        return node.value
    raise ValueError(f"exponents must be nonnegative integer literals in {text!r}")


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if a.generators != b.generators:
        raise GeneratorMismatch(f"generator sets differ: {a.generators} vs {b.generators}")
    return a * b


# ---------------------------------------------------------------------------
# truncated power series in one variable t


class IntSeries:
    """Power series ``sum c_i t^i`` known exactly up to ``t^order``."""

    __slots__ = ("coefficients", "order")

    def __init__(self, coefficients: Iterable[int], order: int | None = None):
        coeffs = [int(c) for c in coefficients]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = (coeffs + [0] * (order + 1))[: order + 1]
        self.coefficients = tuple(coeffs)
        self.order = order

    @classmethod
    def one(cls, order: int) -> "IntSeries":
        return cls([1], order)

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i <= self.order else 0

    def _check(self, other: "IntSeries"):
        if not isinstance(other, IntSeries):
            raise TypeError("expected an IntSeries")
        return min(self.order, other.order)

    def __add__(self, other: "IntSeries") -> "IntSeries":
        order = self._check(other)
        return IntSeries([self[i] + other[i] for i in range(order + 1)], order)

    def __neg__(self):
        return IntSeries([-c for c in self.coefficients], self.order)

    def __sub__(self, other: "IntSeries") -> "IntSeries":
        return self + (-other)

    def __mul__(self, other: "IntSeries") -> "IntSeries":
        order = self._check(other)
        a, b = self.coefficients, other.coefficients
        out = [0] * (order + 1)
        for i in range(order + 1):
            if a[i]:
                for j in range(order + 1 - i):
                    out[i + j] += a[i] * b[j]
        return IntSeries(out, order)

    def reciprocal(self) -> "IntSeries":
        c0 = self.coefficients[0]
        if c0 not in (1, -1):
            raise ZeroDivisionError("series reciprocal needs constant term +1 or -1")
        a = self.coefficients
        inv = [0] * (self.order + 1)
        inv[0] = c0  # 1/c0 == c0 for a unit
        for k in range(1, self.order + 1):
            s = sum(a[j] * inv[k - j] for j in range(1, k + 1))
            inv[k] = -c0 * s
        return IntSeries(inv, self.order)

    def __eq__(self, other):
        if not isinstance(other, IntSeries):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.coefficients, self.order))

    def to_text(self, var: str = "t") -> str:
        exps = {(i,): c for i, c in enumerate(self.coefficients)}
        body = IntPoly(exps, (var,)).to_text()
        return f"{body} + O({var}^{self.order + 1})"

    def __repr__(self):
        return f"IntSeries({list(self.coefficients)}, order={self.order})"


def binomial_power_series(factors: Iterable[tuple[int, int]], order: int) -> IntSeries:
    """Expand ``prod (1 - m t)^e`` to ``t^order``; negative ``e`` go through a reciprocal."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    result = IntSeries.one(order)
    for m, e in factors:
        k = abs(e)
        base = IntSeries([comb(k, j) * (-m) ** j for j in range(min(k, order) + 1)], order)
        result = result * (base if e >= 0 else base.reciprocal())
    return result


def coefficient_of(p: Union[IntPoly, IntSeries], exponent) -> int:
    """Exact coefficient of a monomial (poly) or of ``t^exponent`` (series); 0 when absent."""
    if isinstance(p, IntSeries):
        return p[int(exponent)]
    if isinstance(exponent, int):
        exponent = (exponent,)
    return p.coefficient(exponent)
