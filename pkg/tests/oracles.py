"""Independent reference computations used to cross-check the package.

Nothing here imports qhproj; polynomials are plain dicts and every
routine is the most direct computation available.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, prod


def gen_binom(e: int, j: int) -> int:
    """Binomial coefficient C(e, j) for any integer e (j >= 0)."""
    return prod(e - t for t in range(j)) // prod(range(1, j + 1)) if j else 1


def series_of_product(factors, order):
    """Coefficients of prod (1 - m t)^e up to t^order by repeated truncated convolution."""
    out = [1] + [0] * order
    for m, e in factors:
        f = [gen_binom(e, j) * (-m) ** j for j in range(order + 1)]
        out = [sum(out[a] * f[i - a] for a in range(i + 1)) for i in range(order + 1)]
    return out


def elementary(ms, i):
    return sum(prod(c) for c in combinations(ms, i))


def complete(ms, i):
    return sum(prod(c) for c in combinations_with_replacement(ms, i))


def w_oracle(ms, i):
    return series_of_product([(m, m - 2) for m in ms], i)[i]


# --- Grassmannian G(2, n+1) ------------------------------------------------


def expand_line_classes(ps):
    """Dict (i, j) -> coefficient of alpha^i beta^j in prod_p (alpha^p - beta^p)/(alpha - beta)."""
    poly = {(0, 0): 1}
    for p in ps:
        nxt = {}
        for (i, j), c in poly.items():
            for t in range(p):
                key = (i + t, j + p - 1 - t)
                nxt[key] = nxt.get(key, 0) + c
        poly = nxt
    return poly


def grassmannian_by_antisymmetrization(poly, n):
    """Degree of a symmetric class: the coefficient of alpha^n beta^(n-1) in (alpha - beta) * P."""
    total = 0
    for (i, j), c in poly.items():
        if (i + 1, j) == (n, n - 1):
            total += c
        if (i, j + 1) == (n, n - 1):
            total -= c
    return total


def grassmannian_by_pieri(ps, n):
    """Multiply special Schubert classes sigma_(p-1) by Pieri's rule in the 2 x (n-1) box."""
    cls = {(0, 0): 1}
    for p in ps:
        s = p - 1
        nxt = {}
        for (a, b), c in cls.items():
            for d in range(b, a + 1):
                e = a + b + s - d
                if a <= e <= n - 1:
                    nxt[(e, d)] = nxt.get((e, d), 0) + c
        cls = nxt
    return cls.get((n - 1, n - 1), 0)


# --- linear algebra ----------------------------------------------------------


def det(matrix):
    m = [[Fraction(x) for x in row] for row in matrix]
    size = len(m)
    sign, out = 1, Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        out *= m[col][col]
        for r in range(col + 1, size):
            f = m[r][col] / m[col][col]
            for c in range(col, size):
                m[r][c] -= f * m[col][c]
    result = sign * out
    assert result.denominator == 1
    return int(result)


def binom_sum_tangent(n):
    """1 + sum (-1)^i C(n+1, i) for i = 0..n."""
    return 1 + sum((-1) ** i * comb(n + 1, i) for i in range(n + 1))
