"""Exact coefficients: the cyclotomic field Q(zeta_8), polynomials over it, Schur polynomials.

Every number that appears in the module computations lives in Q(zeta) with
zeta = exp(i pi / 4), stored as ``c0 + c1 zeta + c2 zeta^2 + c3 zeta^3`` and
reduced with ``zeta^4 = -1``.  Fixed square roots::

    sqrt(-1) = zeta^2,   sqrt(2) = zeta - zeta^3,   sqrt(-2) = zeta + zeta^3
"""
from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import factorial, gcd
from typing import Iterable, Sequence, Union

Rational = Fraction



def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot coerce {x!r} to a rational")


def _norm(n0: int, n1: int, n2: int, n3: int, d: int) -> "Scalar":
    g = gcd(n0, n1, n2, n3, d)
    if d < 0:
        g = -g
    obj = object.__new__(Scalar)
    if g != 1:
        obj.n = (n0 // g, n1 // g, n2 // g, n3 // g)
        obj.d = d // g
    else:
        obj.n = (n0, n1, n2, n3)
        obj.d = d
    return obj


class Scalar:
    """Element of Q(zeta_8).  Immutable; equality is component-wise.

    Stored as four integer numerators over one positive denominator in
    lowest terms, which keeps products on plain ints.
    """

    __slots__ = ("n", "d")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        fr = [_frac(x) for x in (c0, c1, c2, c3)]
        d = 1
        for x in fr:
            d = d * x.denominator // gcd(d, x.denominator)
        s = _norm(*(int(x * d) for x in fr), d)
        self.n, self.d = s.n, s.d

    @property
    def c(self) -> tuple:
        return tuple(Fraction(x, self.d) for x in self.n)

    @classmethod
    def _raw(cls, c: tuple) -> "Scalar":
        return cls(*c)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return _norm(x, 0, 0, 0, 1)
        f = _frac(x)
        return _norm(f.numerator, 0, 0, 0, f.denominator)

    # -- queries -----------------------------------------------------------
    def is_rational(self) -> bool:
        n = self.n
        return not (n[1] or n[2] or n[3])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.n[0], self.d)

    def __bool__(self) -> bool:
        n = self.n
        return bool(n[0] or n[1] or n[2] or n[3])

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.n == other.n and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.n[0], self.d) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.n[0], self.d))
        return hash((self.n, self.d))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.coerce(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        a, b = self.n, other.n
        da, db = self.d, other.d
        if da == db:
            return _norm(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], da)
        return _norm(a[0] * db + b[0] * da, a[1] * db + b[1] * da,
                     a[2] * db + b[2] * da, a[3] * db + b[3] * da, da * db)

    __radd__ = __add__

    def __neg__(self):
        a = self.n
        return _norm(-a[0], -a[1], -a[2], -a[3], self.d)

    def __sub__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            a = self.n
            return _norm(a[0] * other, a[1] * other, a[2] * other, a[3] * other, self.d)
        if isinstance(other, Fraction):
            p, q = other.numerator, other.denominator
            a = self.n
            return _norm(a[0] * p, a[1] * p, a[2] * p, a[3] * p, self.d * q)
        if not isinstance(other, Scalar):
            return NotImplemented
        a, b = self.n, other.n
        d = self.d * other.d
        if not (b[1] or b[2] or b[3]):
            x = b[0]
            return _norm(a[0] * x, a[1] * x, a[2] * x, a[3] * x, d)
        if not (a[1] or a[2] or a[3]):
            x = a[0]
            return _norm(b[0] * x, b[1] * x, b[2] * x, b[3] * x, d)
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        # zeta^4 = -1 folds degrees 4..6 back with a sign
        return _norm(a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
                     a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
                     a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
                     a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0, d)

    __rmul__ = __mul__

    def conj5(self) -> "Scalar":
        """Galois image under zeta -> -zeta."""
        a = self.n
        return _norm(a[0], -a[1], a[2], -a[3], self.d)

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_8)")
        if self.is_rational():
            return _norm(self.d, 0, 0, 0, self.n[0])
        # self * conj5(self) lies in Q(i); finish with complex conjugation
        m = self * self.conj5()
        x, y, dm = m.n[0], m.n[2], m.d
        norm = x * x + y * y
        m_inv = _norm(x * dm, 0, -y * dm, 0, norm)
        return self.conj5() * m_inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar.coerce(other) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- display / serialization -------------------------------------------
    def __repr__(self) -> str:
        return f"Scalar({', '.join(str(x) for x in self.c)})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.to_rational())
        parts = []
        for k, x in enumerate(self.c):
            if not x:
                continue
            unit = ["", "zeta", "zeta^2", "zeta^3"][k]
            parts.append(f"({x}){unit}" if unit else str(x))
        return " + ".join(parts)

    def to_json(self):
        if self.is_rational():
            return str(self.to_rational())
        return [str(x) for x in self.c]

    @classmethod
    def from_json(cls, data) -> "Scalar":
        if isinstance(data, (str, int)) and not isinstance(data, bool):
            return cls.coerce(_frac(data))
        if isinstance(data, list) and len(data) == 4:
            return cls(*(_frac(x) for x in data))
        raise ValueError(f"bad scalar serialization: {data!r}")


ZERO = Scalar()
ONE = Scalar(1)
ZETA = Scalar(0, 1)
I = Scalar(0, 0, 1)                      # sqrt(-1)
SQRT2 = Scalar(0, 1, 0, -1)
SQRT_MINUS_TWO = Scalar(0, 1, 0, 1)
INV_SQRT_MINUS_TWO = Scalar(0, Fraction(-1, 2), 0, Fraction(-1, 2))
INV_SQRT2 = SQRT2 / 2


def scalar_arith(a, b, op: str) -> Scalar:
    a, b = Scalar.coerce(a), Scalar.coerce(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        if not b:
            raise ZeroDivisionError("division by zero in Q(zeta_8)")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Multivariate polynomials

Monomial = tuple  # sorted tuple of (variable name, exponent > 0)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_div(m1: Monomial, m2: Monomial):
    """m1 / m2 if m2 divides m1, else None."""
    d = dict(m1)
    for v, e in m2:
        left = d.get(v, 0) - e
        if left < 0:
            return None
        if left:
            d[v] = left
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _lex_cmp(m1: Monomial, m2: Monomial) -> int:
    # lex order: the alphabetically first variable dominates
    d1, d2 = dict(m1), dict(m2)
    for v in sorted(set(d1) | set(d2)):
        e1, e2 = d1.get(v, 0), d2.get(v, 0)
        if e1 != e2:
            return 1 if e1 > e2 else -1
    return 0


_lex_key = cmp_to_key(_lex_cmp)


class MultiPoly:
    """Polynomial with Q(zeta_8) coefficients in named commuting variables."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Scalar.coerce(c)
                if c:
                    clean[tuple(sorted(m))] = c
        self.terms = clean

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls({((name, 1),): ONE})

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({(): c})

    @classmethod
    def coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return cls.const(x)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Scalar:
        return self.terms.get((), ZERO)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Scalar)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        res = MultiPoly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = MultiPoly()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar, MultiPoly)):
            return self + (-MultiPoly.coerce(other))
        return NotImplemented

    def __rsub__(self, other):
        return MultiPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Scalar.coerce(other)
            if not other:
                return MultiPoly()
            res = MultiPoly()
            res.terms = {m: c * other for m, c in self.terms.items()}
            return res
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, ZERO) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        res = MultiPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MultiPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def leading(self):
        m = max(self.terms, key=_lex_key)
        return m, self.terms[m]

    def __truediv__(self, other):
        """Exact division; raises ValueError if ``other`` does not divide ``self``."""
        if isinstance(other, (int, Fraction, Scalar)):
            inv = Scalar.coerce(other).inverse()
            return self * inv
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self * other.constant_value().inverse()
        quotient = MultiPoly()
        rem = self
        lm, lc = other.leading()
        lc_inv = lc.inverse()
        while rem:
            m, c = rem.leading()
            q = _mono_div(m, lm)
            if q is None:
                raise ValueError("inexact polynomial division")
            t = MultiPoly({q: c * lc_inv})
            quotient = quotient + t
            rem = rem - t * other
        return quotient

    def evaluate(self, values: dict):
        total = ZERO
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                term = term * (Scalar.coerce(values[v]) ** e)
            total = total + term
        return total

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, key=_lex_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            cs = str(c) if c.is_rational() else f"({c})"
            if not mono:
                out.append(cs)
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{cs}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


Ring = Union[Scalar, MultiPoly]


def is_unit(x) -> bool:
    """Nonzero constant (invertible without leaving the coefficient ring)."""
    if isinstance(x, MultiPoly):
        return x.is_constant() and bool(x)
    return bool(x)


# ---------------------------------------------------------------------------
# Schur polynomials: exp(sum_k x_k z^k / k) = sum_n S_n z^n

def _series_mul(a: list, b: list, n: int) -> list:
    out = [0] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if not ai:
            continue
        for j in range(n + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def schur(n: int, args: Sequence = ()) -> Ring:
    """S_n(x_1, ..., x_n); missing arguments are zero.

    Computed as the z^n coefficient of sum_j f^j / j! with f = sum x_k z^k / k.
    """
    if n < 0:
        raise ValueError("schur index must be nonnegative")
    xs = list(args)[:n] + [0] * max(0, n - len(args))
    f = [0] + [xs[k - 1] * Fraction(1, k) for k in range(1, n + 1)]
    total = [1] + [0] * n
    power = [1] + [0] * n
    for j in range(1, n + 1):
        power = _series_mul(power, f, n)
        coeff = Fraction(1, factorial(j))
        total = [t + p * coeff if p else t for t, p in zip(total, power)]
    res = total[n]
    if isinstance(res, (int, Fraction)):
        return Scalar.coerce(res)
    return res


def symbols(names: Iterable[str]) -> list:
    return [MultiPoly.var(v) for v in names]
