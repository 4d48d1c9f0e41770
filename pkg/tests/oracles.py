"""Independent reference computations used as test oracles.

None of these reuse package internals: field arithmetic goes through sympy
radicals, series through sympy, counts through brute force.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import sympy as sp

ZETA = sp.sqrt(2) / 2 + sp.I * sp.sqrt(2) / 2


def scalar_to_sympy(s) -> sp.Expr:
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * ZETA ** k for k, c in enumerate(s.c)))


def sympy_equal(a: sp.Expr, b: sp.Expr) -> bool:
    return sp.simplify(sp.expand(a - b)) == 0


@lru_cache(maxsize=None)
def strict_partition_count(d2: int) -> int:
    """Subsets of {1..d2} summing to d2 (doubled fermion degrees)."""
    parts = range(1, d2 + 1)
    return sum(1 for r in range(d2 + 1) for c in combinations(parts, r) if sum(c) == d2)


def odd_partition_count(d2: int) -> int:
    """Partitions of d2 into odd parts, by plain recursion."""
    def count(n, largest):
        if n == 0:
            return 1
        return sum(count(n - p, p) for p in range(1, min(n, largest) + 1) if p % 2)
    return count(d2, d2)


def tensor_count(d2: int) -> int:
    return sum(strict_partition_count(a) * odd_partition_count(d2 - a) for a in range(d2 + 1))


def q_product(n2: int) -> list:
    """prod (1 - t^{2n-1})^{-2} through t^{n2}, via sympy series."""
    t = sp.symbols("t")
    expr = sp.Integer(1)
    for k in range(1, n2 + 1, 2):
        expr *= (1 - t ** k) ** -2
    ser = sp.series(expr, t, 0, n2 + 1).removeO()
    return [int(ser.coeff(t, k)) for k in range(n2 + 1)]


def schur_recursive(n: int, xs: list):
    """n S_n = sum_{k=1}^n x_k S_{n-k}; works on sympy expressions or Fractions."""
    S = [sp.Integer(1)]
    for m in range(1, n + 1):
        S.append(sp.expand(sum(xs[k - 1] * S[m - k] for k in range(1, m + 1)) / m))
    return S[n]


def central_series(chi: dict, n: Fraction) -> dict:
    """S(n) and T(n) read off chi(z) = sum chi_m z^{-m-1} with sympy, z = w^2.

    S from 1/2((chi1)^2 - (chi2)^2 + d chi1/dz), T from chi2; chi1/chi2 are the
    integral/half-integral index parts.
    """
    w = sp.symbols("w")
    chi1 = sum(sp.nsimplify(c) * w ** int(-2 * m - 2) for m, c in chi.items() if Fraction(m).denominator == 1)
    chi2 = sum(sp.nsimplify(c) * w ** int(-2 * m - 2) for m, c in chi.items() if Fraction(m).denominator == 2)
    dchi1 = sp.diff(chi1, w) / (2 * w)
    S_series = sp.expand((chi1 ** 2 - chi2 ** 2 + dchi1) / 2)
    S_chi1_only = sp.expand((chi1 ** 2 + dchi1) / 2)
    power = int(-2 * Fraction(n) - 4)
    return {"S": S_series.coeff(w, power), "S_chi1": S_chi1_only.coeff(w, power),
            "T": sp.expand(chi2).coeff(w, int(-2 * Fraction(n) - 2))}
