"""Graded dimensions, the principal q-product, and combinatorial bases.

All series are indexed by doubled degree, i.e. by powers of q^{1/2}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine import APlusModes, lam_of, vacuum_space
from .fock import (FERMION, TENSOR, FockSpace, FockVector, HalfInt, _odd_parts, _strict_parts,
                   doubled, fmt_half)
from .linalg import EchelonBasis
from .superalg import TwistedCharacter


@dataclass(frozen=True)
class QSeries:
    coeffs: tuple
    cutoff2: int

    def __post_init__(self):
        if len(self.coeffs) != self.cutoff2 + 1:
            raise ValueError("QSeries length must be 2*cutoff + 1")

    @property
    def cutoff(self) -> HalfInt:
        return HalfInt.from_doubled(self.cutoff2)

    def __getitem__(self, d):
        return self.coeffs[doubled(d)]

    def as_table(self) -> dict:
        return {fmt_half(k): c for k, c in enumerate(self.coeffs)}


def qseries_product(cutoff) -> QSeries:
    """prod_{n >= 1} (1 - q^{n-1/2})^{-2}, truncated; t = q^{1/2}."""
    n2 = doubled(cutoff)
    series = [1] + [0] * n2
    for odd in range(1, n2 + 1, 2):
        for _ in range(2):              # (1 - t^odd)^{-1} = sum_k t^{k odd}
            for k in range(odd, n2 + 1):
                series[k] += series[k - odd]
    return QSeries(tuple(series), n2)


def _convolve(a: list, b: list) -> list:
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(len(a))]


def kernel_excluded2(lam) -> tuple:
    """Doubled creation index removed in Ker Phi(1/2 - lam); empty if none applies."""
    lam = Fraction(lam)
    n = Fraction(1, 2) - lam
    if n <= 0 or (2 * n).denominator != 1:
        return ()
    return (-int(2 * n),)


def graded_dims(kind: str, cutoff, chi: TwistedCharacter | None = None,
                sector_i: int = 1, sector_j: int = 1) -> QSeries:
    """kind: fermion, kernel, tensor, kernel-tensor, omega."""
    c2 = doubled(cutoff)
    if kind == "fermion":
        return QSeries(tuple(FockSpace(FERMION).dims2(c2)), c2)
    if kind == "tensor":
        return QSeries(tuple(FockSpace(TENSOR).dims2(c2)), c2)
    if kind in ("kernel", "kernel-tensor"):
        lam = lam_of(chi) if chi is not None else None
        if lam is None:
            raise ValueError("kernel submodules need chi = lam/z")
        ex = kernel_excluded2(lam.to_rational())
        space = FockSpace(FERMION if kind == "kernel" else TENSOR, ex)
        return QSeries(tuple(space.dims2(c2)), c2)
    if kind == "omega":
        dims = vacuum_space(chi, sector_i, sector_j, HalfInt.from_doubled(c2))["dims"]
        return QSeries(tuple(dims[fmt_half(k)] for k in range(c2 + 1)), c2)
    raise ValueError(f"unknown module kind {kind!r}")


@dataclass(frozen=True)
class BasisPattern:
    """t = None for generic, an int >= 0 for the excluded family; p2 shifts G(p - n)."""

    t: int | None = None
    p2: int = 0

    def __post_init__(self):
        if self.t is not None and self.t < 0:
            raise ValueError("t must be generic or a nonnegative integer")

    @property
    def excluded(self) -> HalfInt | None:
        return None if self.t is None else HalfInt(Fraction(self.t, 2) + Fraction(1, 2))

    @classmethod
    def for_lambda(cls, lam) -> "BasisPattern":
        t = -2 * Fraction(lam)
        if t.denominator == 1 and t >= 0:
            return cls(int(t))
        return cls(None)


def enumerate_basis(pattern: BasisPattern, cutoff) -> tuple:
    """Counts and monomials G(p-n_1)...G(p-n_r) h(-m_1)...h(-m_s) v by degree.

    Monomials are pairs (n-parts, m-parts) of doubled positive integers.
    """
    c2 = doubled(cutoff)
    ex = frozenset() if pattern.excluded is None else frozenset({pattern.excluded.doubled})
    monos = []
    counts = []
    for d2 in range(c2 + 1):
        here = []
        for g in range(d2 + 1):
            for ns in _strict_parts(g, g, ex):
                for ms in _odd_parts(d2 - g, d2 - g):
                    here.append((ns, ms))
        counts.append(len(here))
        monos.append(here)
    return QSeries(tuple(counts), c2), monos


def verify_basis_independence(chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1,
                              cutoff=2) -> dict:
    """Build the enumerated monomials with A+ and h modes and row-reduce per degree."""
    lam = lam_of(chi)
    if lam is None:
        raise ValueError("basis check needs chi = lam/z")
    pattern = BasisPattern.for_lambda(lam.to_rational())
    counts, monos = enumerate_basis(pattern, cutoff)
    ap = APlusModes(chi, sector_i, sector_j)
    kind = "tensor" if pattern.t is None else "kernel-tensor"
    dims = graded_dims(kind, cutoff, chi)
    rows = []
    for d2, batch in enumerate(monos):
        basis = EchelonBasis()
        for ns, ms in batch:
            v = FockVector.vacuum(TENSOR)
            for m2 in reversed(ms):
                v = ap.mod.h(HalfInt.from_doubled(-m2), v)
            for n2 in reversed(ns):
                v = ap.mode(HalfInt.from_doubled(pattern.p2 - n2), v)
            basis.add(v.terms)
        rows.append({"degree": fmt_half(d2), "enumerated": counts.coeffs[d2],
                     "rank": len(basis), "dim": dims.coeffs[d2],
                     "ok": len(basis) == counts.coeffs[d2] == dims.coeffs[d2]})
    return {"pattern": {"t": pattern.t, "excluded": None if pattern.excluded is None
                        else str(pattern.excluded)},
            "rows": rows, "ok": all(r["ok"] for r in rows)}


def character_table(cutoff) -> list:
    prod = qseries_product(cutoff)
    enum, _ = enumerate_basis(BasisPattern(None), cutoff)
    fock = graded_dims("tensor", cutoff)
    return [{"degree": fmt_half(k), "product": prod.coeffs[k], "enumerated": enum.coeffs[k],
             "fock": fock.coeffs[k],
             "match": prod.coeffs[k] == enum.coeffs[k] == fock.coeffs[k]}
            for k in range(prod.cutoff2 + 1)]
