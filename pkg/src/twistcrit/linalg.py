"""Exact linear algebra over Q(zeta_8) and over polynomial rings.

Vectors are sparse dicts ``key -> coefficient``; keys only need to be
hashable and mutually orderable.
"""
from __future__ import annotations

from typing import Sequence

from .scalars import MultiPoly, Scalar, is_unit


class SingularSystemError(ArithmeticError):
    def __init__(self, message: str, pivot: int):
        super().__init__(message)
        self.pivot = pivot


class EchelonBasis:
    """Incrementally maintained reduced basis of a span of sparse vectors."""

    def __init__(self):
        self._rows: dict = {}          # pivot key -> row normalized to 1 at pivot

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: c for k, c in vec.items() if c}
        while v:
            hit = [k for k in v if k in self._rows]
            if not hit:
                break
            k = max(hit)
            c = v[k]
            for kk, cc in self._rows[k].items():
                s = v.get(kk, 0) - c * cc
                if s:
                    v[kk] = s
                else:
                    v.pop(kk, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; False when it already lies in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = max(v)
        inv = 1 / Scalar.coerce(v[p])
        self._rows[p] = {k: c * inv for k, c in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def rank(vectors: Sequence[dict]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)


def solve_unit_pivots(matrix: list, rhs: list) -> list:
    """Solve a square system using only invertible (constant) pivots.

    Works over Q(zeta_8) and over polynomial rings as long as a unit pivot
    exists at each elimination step; otherwise raises SingularSystemError
    naming the column where uniqueness could not be established.
    """
    n = len(matrix)
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    used = [False] * n
    pivot_row_of = [None] * n
    for col in range(n):
        prow = next((r for r in range(n) if not used[r] and is_unit(a[r][col])), None)
        if prow is None:
            raise SingularSystemError(f"no invertible pivot in column {col}", col)
        used[prow] = True
        pivot_row_of[col] = prow
        inv = _unit_inverse(a[prow][col])
        a[prow] = [x * inv for x in a[prow]]
        for r in range(n):
            if r != prow and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[prow])]
    return [a[pivot_row_of[c]][n] for c in range(n)]


def _unit_inverse(x):
    if isinstance(x, MultiPoly):
        return x.constant_value().inverse()
    return Scalar.coerce(x).inverse()


def det_bareiss(matrix: list):
    """Fraction-free determinant; entries must support exact ``/``."""
    n = len(matrix)
    if n == 0:
        return Scalar.coerce(1)
    a = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return a[k][k] * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num / prev if prev is not None else num
            a[i][k] = a[i][k] * 0
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def nullspace(columns: list, rows: list, entry) -> list:
    """Kernel of the matrix ``entry(row, col)`` as a list of dicts ``col -> coeff``."""
    matrix = []
    for r in rows:
        row = {c: entry(r, c) for c in columns}
        matrix.append({c: v for c, v in row.items() if v})
    # Gauss-Jordan over the columns in given order
    pivot_cols = []
    reduced = []
    for row in matrix:
        v = dict(row)
        for pc, prow in zip(pivot_cols, reduced):
            if pc in v:
                f = v[pc]
                for k, x in prow.items():
                    s = v.get(k, 0) - f * x
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
        if not v:
            continue
        pc = min(v, key=columns.index)
        inv = 1 / Scalar.coerce(v[pc])
        v = {k: x * inv for k, x in v.items()}
        for i, prow in enumerate(reduced):
            if pc in prow:
                f = prow[pc]
                for k, x in v.items():
                    s = prow.get(k, 0) - f * x
                    if s:
                        prow[k] = s
                    else:
                        prow.pop(k, None)
        pivot_cols.append(pc)
        reduced.append(v)
    free = [c for c in columns if c not in pivot_cols]
    basis = []
    for fc in free:
        vec = {fc: Scalar.coerce(1)}
        for pc, prow in zip(pivot_cols, reduced):
            if fc in prow:
                vec[pc] = -prow[fc]
        basis.append(vec)
    return basis
