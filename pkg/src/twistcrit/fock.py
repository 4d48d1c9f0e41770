"""Graded Fock spaces for the twisted Clifford and Heisenberg algebras.

Monomials are stored with *doubled* mode indices so every key is a tuple of
plain ints:

* fermion: strictly increasing negative ints, ``(-3, -1)`` is
  ``Phi(-3/2) Phi(-1/2) |0>``;
* boson: weakly increasing negative odd ints, ``(-1, -1)`` is ``a(-1/2)^2 |0>``;
* tensor: a pair ``(fermion, boson)``; the boson factor is even so no sign
  is attached to the pair.

The degree of a monomial is minus the sum of its modes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Callable, Iterable, Iterator

from .scalars import INV_SQRT_MINUS_TWO, ONE, ZERO, Scalar

FERMION = "fermion"
BOSON = "boson"
TENSOR = "tensor"
SPACES = (FERMION, BOSON, TENSOR)


@total_ordering
class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    __slots__ = ("doubled",)

    def __init__(self, value=0):
        if isinstance(value, HalfInt):
            d = value.doubled
        elif isinstance(value, int):
            d = 2 * value
        elif isinstance(value, Fraction):
            d = 2 * value
            if d.denominator != 1:
                raise ValueError(f"{value} is not a half-integer")
            d = int(d)
        elif isinstance(value, str):
            return HalfInt.__init__(self, Fraction(value.strip()))
        else:
            raise TypeError(f"cannot make a half-integer from {value!r}")
        self.doubled = d

    @classmethod
    def from_doubled(cls, d: int) -> "HalfInt":
        obj = object.__new__(cls)
        obj.doubled = d
        return obj

    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __add__(self, other):
        return HalfInt.from_doubled(self.doubled + half(other).doubled)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt.from_doubled(self.doubled - half(other).doubled)

    def __rsub__(self, other):
        return HalfInt.from_doubled(half(other).doubled - self.doubled)

    def __neg__(self):
        return HalfInt.from_doubled(-self.doubled)

    def __abs__(self):
        return HalfInt.from_doubled(abs(self.doubled))

    def __eq__(self, other):
        try:
            return self.doubled == half(other).doubled
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.doubled < half(other).doubled

    def __hash__(self):
        return hash(("HalfInt", self.doubled))

    def __str__(self):
        return fmt_half(self.doubled)

    def __repr__(self):
        return f"HalfInt({fmt_half(self.doubled)!r})"


def half(x) -> HalfInt:
    return x if isinstance(x, HalfInt) else HalfInt(x)


def doubled(x) -> int:
    """Doubled integer representation of any half-integer-like value."""
    if isinstance(x, HalfInt):
        return x.doubled
    return HalfInt(x).doubled


def fmt_half(d: int) -> str:
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


# ---------------------------------------------------------------------------
# monomials

def degree2(space: str, mono) -> int:
    """Doubled degree of a monomial."""
    if space == TENSOR:
        return -sum(mono[0]) - sum(mono[1])
    return -sum(mono)


def fmt_monomial(space: str, mono) -> str:
    if space == TENSOR:
        f, b = mono
        return f"{fmt_monomial(FERMION, f)[:-3]}(x){fmt_monomial(BOSON, b)}"
    if space == FERMION:
        return "".join(f"Phi({fmt_half(m)})" for m in mono) + "|0>"
    out = []
    i = 0
    while i < len(mono):
        j = i
        while j < len(mono) and mono[j] == mono[i]:
            j += 1
        p = j - i
        out.append(f"a({fmt_half(mono[i])})" + (f"^{p}" if p > 1 else ""))
        i = j
    return "".join(out) + "|0>"


class FockVector:
    """Sparse linear combination of monomials of one space."""

    __slots__ = ("space", "terms")

    def __init__(self, space: str, terms: dict | None = None):
        self.space = space
        self.terms = {} if terms is None else {m: c for m, c in terms.items() if c}

    @classmethod
    def vacuum(cls, space: str) -> "FockVector":
        key = ((), ()) if space == TENSOR else ()
        return cls(space, {key: ONE})

    @classmethod
    def monomial(cls, space: str, mono, coeff=ONE) -> "FockVector":
        return cls(space, {mono: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        _accumulate(out, other.terms)
        res = FockVector(self.space)
        res.terms = out
        return res

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, c) -> "FockVector":
        res = FockVector(self.space)
        if c:
            res.terms = {m: v * c for m, v in self.terms.items()}
            res.terms = {m: v for m, v in res.terms.items() if v}
        return res

    __rmul__ = __mul__

    def coefficient(self, mono):
        return self.terms.get(mono, ZERO)

    def degrees2(self) -> set:
        return {degree2(self.space, m) for m in self.terms}

    def component(self, d) -> "FockVector":
        d2 = doubled(d)
        return FockVector(self.space, {m: c for m, c in self.terms.items()
                                       if degree2(self.space, m) == d2})

    def is_scalar_multiple_of_vacuum(self) -> bool:
        return all(not any(m) if self.space != TENSOR else m == ((), ())
                   for m in self.terms)

    def __repr__(self):
        return f"FockVector({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            parts.append(f"({self.terms[m]}){fmt_monomial(self.space, m)}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {fmt_monomial(self.space, m): self.terms[m].to_json() if hasattr(self.terms[m], "to_json")
                else str(self.terms[m]) for m in sorted(self.terms)}


def _accumulate(out: dict, terms: dict, scale=None) -> None:
    for m, c in terms.items():
        if scale is not None:
            c = c * scale
        if m in out:
            s = out[m] + c
            if s:
                out[m] = s
            else:
                del out[m]
        elif c:
            out[m] = c


def linear_extend(fn: Callable, vec: FockVector, out_space: str | None = None) -> FockVector:
    """Extend ``fn(mono) -> dict[mono, coeff]`` linearly over ``vec``."""
    out: dict = {}
    for m, c in vec.terms.items():
        _accumulate(out, fn(m), c)
    res = FockVector(out_space or vec.space)
    res.terms = out
    return res


# ---------------------------------------------------------------------------
# twisted Clifford action

def epsilon(sector: int) -> Scalar:
    """Zero-mode constant (-1)^i / sqrt(-2)."""
    if sector not in (1, 2):
        raise ValueError("twist sector must be 1 or 2")
    return INV_SQRT_MINUS_TWO * (-1) ** sector


@lru_cache(maxsize=None)
def phi_mono(r2: int, mono: tuple, sector: int) -> tuple:
    """Phi(r2/2) on a fermion monomial, as a tuple of (monomial, coeff) pairs.

    Phi(0) is epsilon times the fermion parity: it squares to -1/2 and
    anticommutes with every other mode.
    """
    if r2 == 0:
        e = epsilon(sector)
        return ((mono, e if len(mono) % 2 == 0 else -e),)
    if r2 < 0:
        if r2 in mono:
            return ()
        pos = 0
        while pos < len(mono) and mono[pos] < r2:
            pos += 1
        sign = -1 if pos % 2 else 1
        return ((mono[:pos] + (r2,) + mono[pos:], Scalar.coerce(sign)),)
    try:
        pos = mono.index(-r2)
    except ValueError:
        return ()
    sign = -1 if pos % 2 else 1
    contraction = 1 if r2 % 2 else -1          # {Phi(r), Phi(-r)} = -(-1)^{2r}
    return ((mono[:pos] + mono[pos + 1:], Scalar.coerce(sign * contraction)),)


def phi_apply(r, v: FockVector, sector: int) -> FockVector:
    r2 = doubled(r)
    if v.space == FERMION:
        return linear_extend(lambda m: dict(phi_mono(r2, m, sector)), v)
    if v.space == TENSOR:
        return linear_extend(lambda m: {(f, m[1]): c for f, c in phi_mono(r2, m[0], sector)}, v)
    raise ValueError("phi_apply needs a fermionic or tensor vector")


# ---------------------------------------------------------------------------
# twisted Heisenberg action

@lru_cache(maxsize=None)
def heis_mono(n2: int, mono: tuple) -> tuple:
    """alpha(n2/2) on a boson monomial for unit pairing: ((monomial, coeff),)."""
    if n2 % 2 == 0:
        raise ValueError("twisted Heisenberg modes live in 1/2 + Z")
    if n2 < 0:
        pos = 0
        while pos < len(mono) and mono[pos] < n2:
            pos += 1
        return ((mono[:pos] + (n2,) + mono[pos:], 1),)
    count = mono.count(-n2)
    if not count:
        return ()
    pos = mono.index(-n2)
    return ((mono[:pos] + mono[pos + 1:], Fraction(count * n2, 2)),)


def heisenberg_apply(n, v: FockVector, pairing=-1) -> FockVector:
    """alpha(n) with [alpha(m), alpha(n)] = m delta_{m+n,0} pairing."""
    n2 = doubled(n)
    pairing = Scalar.coerce(pairing)

    def act(mono):
        out = {}
        for m, c in heis_mono(n2, mono):
            out[m] = pairing * c if n2 > 0 else Scalar.coerce(c)
        return out

    if v.space == BOSON:
        return linear_extend(act, v)
    if v.space == TENSOR:
        return linear_extend(lambda m: {(m[0], b): c for b, c in act(m[1]).items()}, v)
    raise ValueError("heisenberg_apply needs a bosonic or tensor vector")


# ---------------------------------------------------------------------------
# graded bases

@lru_cache(maxsize=None)
def _strict_parts(total: int, largest: int, excluded: frozenset) -> tuple:
    """Partitions of ``total`` into distinct parts <= largest, parts not excluded."""
    if total == 0:
        return ((),)
    out = []
    for p in range(min(total, largest), 0, -1):
        if p in excluded:
            continue
        for rest in _strict_parts(total - p, p - 1, excluded):
            out.append((p,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _odd_parts(total: int, largest: int) -> tuple:
    """Partitions of ``total`` into odd parts <= largest (weakly decreasing)."""
    if total == 0:
        return ((),)
    out = []
    top = min(total, largest)
    if top % 2 == 0:
        top -= 1
    for p in range(top, 0, -2):
        for rest in _odd_parts(total - p, p):
            out.append((p,) + rest)
    return tuple(out)


def fermion_basis2(d2: int, excluded: Iterable[int] = ()) -> list:
    """Fermion monomials of doubled degree ``d2``; ``excluded`` holds doubled creation indices."""
    ex = frozenset(-e for e in excluded)
    monos = [tuple(-p for p in parts) for parts in _strict_parts(d2, d2, ex)]
    return sorted(monos)


def boson_basis2(d2: int) -> list:
    return sorted(tuple(-p for p in parts) for parts in _odd_parts(d2, d2))


def tensor_basis2(d2: int, fermion_excluded: Iterable[int] = ()) -> list:
    out = []
    for a in range(d2 + 1):
        for f in fermion_basis2(a, fermion_excluded):
            for b in boson_basis2(d2 - a):
                out.append((f, b))
    return sorted(out)


def graded_basis(space: str, d, sector: int = 1) -> list:
    """Canonical monomials of degree exactly ``d``, lexicographically ordered.

    The twist sector does not change the underlying vector space; it is
    accepted for symmetry with the operator API.
    """
    d2 = doubled(d)
    if d2 < 0:
        raise ValueError("degree must be nonnegative")
    if space == FERMION:
        return fermion_basis2(d2)
    if space == BOSON:
        return boson_basis2(d2)
    if space == TENSOR:
        return tensor_basis2(d2)
    raise ValueError(f"unknown space {space!r}")


@dataclass(frozen=True)
class FockSpace:
    """A graded space with an optional excluded fermion creation mode."""

    kind: str = FERMION
    excluded2: tuple = ()

    def basis2(self, d2: int) -> list:
        if self.kind == FERMION:
            return fermion_basis2(d2, self.excluded2)
        if self.kind == BOSON:
            return boson_basis2(d2)
        return tensor_basis2(d2, self.excluded2)

    def basis_upto2(self, d2: int) -> list:
        return [m for k in range(d2 + 1) for m in self.basis2(k)]

    def dims2(self, cutoff2: int) -> list:
        return [len(self.basis2(k)) for k in range(cutoff2 + 1)]


# ---------------------------------------------------------------------------
# defining relations

def check_clifford(cutoff, mode_bound, sector: int = 1) -> dict:
    """{Phi(r), Phi(s)} = -(-1)^{2r} delta_{r+s,0} on fermion basis vectors."""
    vectors = [FockVector.monomial(FERMION, m) for m in FockSpace(FERMION).basis_upto2(doubled(cutoff))]
    b2 = doubled(mode_bound)
    checked, violations = 0, []
    for r2 in range(-b2, b2 + 1):
        for s2 in range(-b2, b2 + 1):
            expected = 0 if r2 + s2 else (1 if r2 % 2 else -1)
            r, s = HalfInt.from_doubled(r2), HalfInt.from_doubled(s2)
            for v in vectors:
                lhs = phi_apply(r, phi_apply(s, v, sector), sector) + phi_apply(s, phi_apply(r, v, sector), sector)
                checked += 1
                if lhs != v * expected:
                    violations.append({"modes": [str(r), str(s)], "vector": str(v)})
    return {"checked": checked, "violations": violations}


def check_heisenberg(cutoff, mode_bound, pairing=-1) -> dict:
    """[a(m), a(n)] = m delta_{m+n,0} pairing on boson basis vectors."""
    vectors = [FockVector.monomial(BOSON, m) for m in FockSpace(BOSON).basis_upto2(doubled(cutoff))]
    b2 = doubled(mode_bound)
    modes = [HalfInt.from_doubled(k) for k in range(-b2, b2 + 1) if k % 2]
    checked, violations = 0, []
    for m in modes:
        for n in modes:
            expected = m.to_fraction() * pairing if m + n == 0 else 0
            for v in vectors:
                lhs = (heisenberg_apply(m, heisenberg_apply(n, v, pairing), pairing)
                       - heisenberg_apply(n, heisenberg_apply(m, v, pairing), pairing))
                checked += 1
                if lhs != v * expected:
                    violations.append({"modes": [str(m), str(n)], "vector": str(v)})
    return {"checked": checked, "violations": violations}
