"""The twisted superalgebra action on F^{T_i}(chi).

G(z) = d/dz Phi(z) + chi(z) Phi(z) with Phi(z) = sum_r Phi(r) z^{-r-1/2} and
G(z) = sum_t G(t) z^{-t-3/2}, so that

    G(t) = (-t - 1/2) Phi(t) + sum_m chi_m Phi(t - m),

where chi_m is the coefficient of z^{-m-1} in chi(z).  Coefficients may be
Scalars or MultiPolys (symbolic chi).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .fock import (FERMION, FockSpace, FockVector, HalfInt, _accumulate, doubled,
                   epsilon, fmt_half, phi_apply, phi_mono)
from .linalg import EchelonBasis, SingularSystemError, det_bareiss, solve_unit_pivots
from .scalars import ONE, ZERO, MultiPoly, Scalar, schur

CENTRAL_CHARGE = -3


class TheoremViolation(AssertionError):
    """Independent criteria that must agree did not."""


class ChiFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TwistedCharacter:
    """chi(z) = sum_m coeffs[m] z^{-m-1}, m in (1/2)Z, finitely many terms.

    ``coeffs`` maps doubled mode indices to coefficients.
    """

    coeffs: tuple = ()          # sorted ((m2, coeff), ...) with coeff != 0
    sector: int = 1

    def __post_init__(self):
        if self.sector not in (1, 2):
            raise ValueError("twist sector must be 1 or 2")

    @classmethod
    def from_map(cls, coeffs: dict, sector: int = 1) -> "TwistedCharacter":
        items = []
        for m, c in coeffs.items():
            if not isinstance(c, MultiPoly):
                c = Scalar.coerce(c)
            if c:
                items.append((doubled(m), c))
        return cls(tuple(sorted(items)), sector)

    @classmethod
    def lam(cls, lam, sector: int = 1) -> "TwistedCharacter":
        """chi(z) = lam / z."""
        return cls.from_map({0: lam}, sector)

    @classmethod
    def symbolic(cls, chi0, modes: Iterable, sector: int = 1, name: str = "chi") -> "TwistedCharacter":
        """chi_0 fixed, chi_m a free variable ``chi(m)`` for each listed m."""
        coeffs = {0: chi0}
        for m in modes:
            coeffs[m] = MultiPoly.var(f"{name}({fmt_half(doubled(m))})")
        return cls.from_map(coeffs, sector)

    def with_sector(self, sector: int) -> "TwistedCharacter":
        return TwistedCharacter(self.coeffs, sector)

    @property
    def mapping2(self) -> dict:
        return dict(self.coeffs)

    def __getitem__(self, m):
        return self.mapping2.get(doubled(m), ZERO)

    @property
    def p2(self):
        """Doubled largest index with nonzero coefficient (None for chi = 0)."""
        return max((m for m, _ in self.coeffs), default=None)

    @property
    def p(self):
        p2 = self.p2
        return None if p2 is None else HalfInt.from_doubled(p2)

    def integral_part(self) -> "TwistedCharacter":
        return TwistedCharacter(tuple((m, c) for m, c in self.coeffs if m % 2 == 0), self.sector)

    def half_part(self) -> "TwistedCharacter":
        return TwistedCharacter(tuple((m, c) for m, c in self.coeffs if m % 2), self.sector)

    def is_symbolic(self) -> bool:
        return any(isinstance(c, MultiPoly) for _, c in self.coeffs)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {"sector": self.sector,
                "chi": {fmt_half(m): c.to_json() for m, c in self.coeffs}}

    @classmethod
    def from_json(cls, data) -> "TwistedCharacter":
        if not isinstance(data, dict):
            raise ChiFormatError("chi file must hold a JSON object")
        sector = data.get("sector", 1)
        if sector not in (1, 2):
            raise ChiFormatError(f"'sector': expected 1 or 2, got {sector!r}")
        raw = data.get("chi")
        if not isinstance(raw, dict):
            raise ChiFormatError("'chi': expected an object mapping modes to scalars")
        coeffs = {}
        for key, val in raw.items():
            try:
                m = doubled(Fraction(key))
            except (ValueError, ZeroDivisionError):
                raise ChiFormatError(f"'chi'.{key!r}: mode is not a half-integer") from None
            try:
                coeffs[m] = Scalar.from_json(val)
            except (ValueError, TypeError):
                raise ChiFormatError(f"'chi'.{key!r}: bad scalar {val!r}") from None
        items = tuple(sorted((m, c) for m, c in coeffs.items() if c))
        return cls(items, sector)

    @classmethod
    def load(cls, path) -> "TwistedCharacter":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ChiFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_json(data)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})z^{fmt_half(-m - 2)}" for m, c in sorted(self.coeffs, reverse=True))


# ---------------------------------------------------------------------------
# the module F^{T_i}(chi)

class SuperModule:
    """F^{T_i}(chi) with cached G-mode action on fermion monomials."""

    def __init__(self, chi: TwistedCharacter):
        self.chi = chi
        self.sector = chi.sector
        self.eps = epsilon(chi.sector)
        self._cache: dict = {}

    def g_coeffs(self, t2: int) -> dict:
        """G(t) = sum_a c[a] Phi(a) as a dict doubled a -> c."""
        c: dict = {}
        top = Fraction(-t2 - 1, 2)
        if top:
            c[t2] = Scalar.coerce(top)
        for m2, x in self.chi.coeffs:
            a = t2 - m2
            c[a] = c[a] + x if a in c else x
        return {a: v for a, v in c.items() if v}

    def g_mono(self, t2: int, mono: tuple) -> dict:
        key = (t2, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        top = max((-x for x in mono), default=0)
        for a, ca in self.g_coeffs(t2).items():
            if a > top:
                continue
            for m, s in phi_mono(a, mono, self.sector):
                _accumulate(out, {m: s}, ca)
        self._cache[key] = out
        return out

    def g_apply(self, t, v: FockVector) -> FockVector:
        t2 = doubled(t)
        if v.space == FERMION:
            out: dict = {}
            for m, c in v.terms.items():
                _accumulate(out, self.g_mono(t2, m), c)
            return FockVector(FERMION, out)
        out = {}
        for (f, b), c in v.terms.items():
            _accumulate(out, {(m, b): x for m, x in self.g_mono(t2, f).items()}, c)
        return FockVector(v.space, out)

    def phi_apply(self, r, v: FockVector) -> FockVector:
        return phi_apply(r, v, self.sector)

    def vacuum(self) -> FockVector:
        return FockVector.vacuum(FERMION)

    # -- anticommutators ---------------------------------------------------
    def anticommutator_on(self, r, s, v: FockVector) -> FockVector:
        return self.g_apply(r, self.g_apply(s, v)) + self.g_apply(s, self.g_apply(r, v))

    def anticommutator_scalar(self, r, s, cutoff) -> dict:
        """{G(r), G(s)} on every basis vector up to ``cutoff``.

        Returns ``{"scalar": value}`` when the operator is a common scalar and
        ``{"scalar": None, "discrepancy": ...}`` otherwise.
        """
        space = FockSpace(FERMION)
        value = None
        checked = 0
        for mono in space.basis_upto2(doubled(cutoff)):
            v = FockVector.monomial(FERMION, mono)
            w = self.anticommutator_on(r, s, v)
            lam = w.coefficient(mono)
            if value is None:
                value = lam
            if lam != value or w != v * lam:
                return {"scalar": None, "checked": checked,
                        "discrepancy": {"vector": str(v), "image": str(w)}}
            checked += 1
        return {"scalar": value if value is not None else ZERO, "checked": checked}

    def vacuum_anticommutator(self, r, s):
        w = self.anticommutator_on(r, s, self.vacuum())
        return w.coefficient(())

    # -- central data ------------------------------------------------------
    def extract_central(self, n_range2: Iterable[int]) -> "CentralData":
        """Read S(n), T(m) off vacuum anticommutators for doubled indices in range."""
        S, T = {}, {}
        for n2 in n_range2:
            if n2 % 2 == 0:
                r2 = 1                      # r = 1/2: (-1)^{2r+1} = +1
                val = self.vacuum_anticommutator(HalfInt.from_doubled(r2),
                                                 HalfInt.from_doubled(n2 - r2))
                r = Fraction(r2, 2)
                central = Fraction(CENTRAL_CHARGE, 3) * (r * r - Fraction(1, 4)) if n2 == 0 else 0
                S[n2] = (val - central) * Fraction(1, 2)
            else:
                r2, s2 = 0, n2              # r - s = -n, (-1)^{2r+1} = -1
                val = self.vacuum_anticommutator(HalfInt.from_doubled(r2),
                                                 HalfInt.from_doubled(s2))
                # {G(r),G(s)} = (-1)^{2r+1} * (-(r - s) T(r+s))
                T[n2] = val * Fraction(1, Fraction(r2 - s2, 2))
        return CentralData(S={k: v for k, v in S.items() if v},
                           T={k: v for k, v in T.items() if v})


def g_mode_apply(t, v: FockVector, chi: TwistedCharacter) -> FockVector:
    return SuperModule(chi).g_apply(t, v)


def anticommutator_scalar(r, s, chi: TwistedCharacter, cutoff) -> dict:
    return SuperModule(chi).anticommutator_scalar(r, s, cutoff)


def anticommutator_formula(r, s, chi: TwistedCharacter):
    """{G(r),G(s)} from the Clifford relations alone (no Fock space)."""
    mod = SuperModule(chi)
    cr, cs = mod.g_coeffs(doubled(r)), mod.g_coeffs(doubled(s))
    total = ZERO
    for a, x in cr.items():
        y = cs.get(-a)
        if y is not None:
            total = total + x * y * (1 if a % 2 else -1)
    return total


@dataclass
class CentralData:
    """Central values keyed by doubled index; C is the central charge."""

    S: dict = field(default_factory=dict)
    T: dict = field(default_factory=dict)
    C: int = CENTRAL_CHARGE

    def S_at(self, n):
        return self.S.get(doubled(n), ZERO)

    def T_at(self, m):
        return self.T.get(doubled(m), ZERO)


def _pair_sum(chi2: dict, n2: int, parity: int):
    total = ZERO
    for a, x in chi2.items():
        if a % 2 != parity:
            continue
        y = chi2.get(n2 - a)
        if y is not None:
            total = total + x * y
    return total


def central_S_expected(chi: TwistedCharacter, span2: Iterable[int] | None = None) -> CentralData:
    """S(n) from 1/2((chi^(1))^2 + d/dz chi^(1)); T from chi^(2)."""
    cm = chi.mapping2
    ints = [m for m in cm if m % 2 == 0]
    if span2 is None:
        lo = 2 * min(ints, default=0) - 4
        hi = 2 * max(ints, default=0) + 4
        span2 = range(lo - lo % 2, hi + 1, 2)
    S = {}
    for n2 in span2:
        if n2 % 2:
            continue
        val = _pair_sum(cm, n2, 0) + cm.get(n2, ZERO) * Fraction(-n2 - 2, 2)
        val = val * Fraction(1, 2)
        if val:
            S[n2] = val
    T = {m: c for m, c in cm.items() if m % 2}
    return CentralData(S=S, T=T)


def central_S_module(chi: TwistedCharacter, n2: int):
    """S(n) actually realized on F^{T_i}(chi): the chi^(2) square enters with a minus sign."""
    cm = chi.mapping2
    base = central_S_expected(chi, [n2]).S_at(HalfInt.from_doubled(n2))
    return base - _pair_sum(cm, n2, 1) * Fraction(1, 2)


# ---------------------------------------------------------------------------
# boundary case chi_0 = ell + 1/2

def ell_of(chi: TwistedCharacter):
    """ell = chi_0 - 1/2 as a HalfInt when chi is in the boundary family, else None."""
    if chi.p2 is not None and chi.p2 > 0:
        return None
    c0 = chi[0]
    if isinstance(c0, MultiPoly) or not c0.is_rational():
        return None
    ell = c0.to_rational() - Fraction(1, 2)
    if (2 * ell).denominator != 1 or ell <= 0:
        return None
    return HalfInt(ell)


@dataclass
class EllParams:
    ell: HalfInt
    a: list = field(default_factory=list)      # a_{-1/2}, ..., a_{-ell}
    b: list = field(default_factory=list)      # b_{-1/2}, ..., b_{-2 ell + 1/2}


def _require_ell(chi: TwistedCharacter) -> HalfInt:
    ell = ell_of(chi)
    if ell is None:
        raise ValueError("needs p = 0 and chi_0 = ell + 1/2 with ell in (1/2)Z, ell > 0")
    return ell


def solve_P_ell(chi: TwistedCharacter, cutoff=None) -> tuple:
    """The singular vector P_ell; returns (EllParams with ``a`` filled, P_ell).

    P_ell = Phi(-ell)1 + sum_{k<2 ell} a_{-k/2} Phi(-ell + k/2)1 + a_{-ell} 1,
    fixed by G(r) P = 0 (0 < r < ell) and (G(0) + ell eps) P = 0.
    """
    ell = _require_ell(chi)
    L2 = ell.doubled
    mod = SuperModule(chi)
    unknowns = [((-L2 + k),) if k < L2 else () for k in range(1, L2 + 1)]
    lead = FockVector.monomial(FERMION, (-L2,))

    def functionals(vec: FockVector) -> list:
        rows = [mod.g_apply(HalfInt.from_doubled(r2), vec).coefficient(()) for r2 in range(1, L2)]
        last = mod.g_apply(0, vec) + vec * (mod.eps * ell.to_fraction())
        rows.append(last.coefficient(()))
        return rows

    columns = [functionals(FockVector.monomial(FERMION, u)) for u in unknowns]
    rhs = [-x for x in functionals(lead)]
    matrix = [[columns[j][i] for j in range(L2)] for i in range(L2)]
    try:
        a = solve_unit_pivots(matrix, rhs)
    except SingularSystemError as exc:
        raise SingularSystemError(f"P_ell system singular at pivot {exc.pivot}", exc.pivot) from None
    P = lead
    for coeff, u in zip(a, unknowns):
        P = P + FockVector.monomial(FERMION, u, coeff)
    _verify_P(mod, P, ell, cutoff if cutoff is not None else ell)
    return EllParams(ell=ell, a=a), P


def _verify_P(mod: SuperModule, P: FockVector, ell: HalfInt, cutoff) -> None:
    for r2 in range(1, doubled(cutoff) + 1):
        if mod.g_apply(HalfInt.from_doubled(r2), P):
            raise TheoremViolation(f"G({fmt_half(r2)}) P_ell != 0")
    if mod.g_apply(0, P) + P * (mod.eps * ell.to_fraction()):
        raise TheoremViolation("(G(0) + ell eps) P_ell != 0")


def p_ell_is_annihilated(chi: TwistedCharacter, P: FockVector, cutoff) -> bool:
    try:
        _verify_P(SuperModule(chi), P, _require_ell(chi), cutoff)
    except TheoremViolation:
        return False
    return True


def script_P_indices(ell: HalfInt) -> list:
    """Doubled indices -ell, ..., ell - 1/2 of the G modes in script P."""
    return list(range(-ell.doubled, ell.doubled))


def solve_script_P_ell(chi: TwistedCharacter) -> tuple:
    """script P_ell = sum_s x_s G(s) with x_{-ell} = 1.

    Returns (EllParams with ``b`` filled, script P 1, script P^2 1 as a scalar).
    """
    ell = _require_ell(chi)
    mod = SuperModule(chi)
    idx = script_P_indices(ell)
    A = {(r, s): mod.vacuum_anticommutator(HalfInt.from_doubled(r), HalfInt.from_doubled(s))
         for r in idx for s in idx}
    rest = idx[1:]
    matrix = [[A[(r, s)] for s in rest] for r in rest]
    rhs = [-A[(r, idx[0])] for r in rest]
    try:
        b = solve_unit_pivots(matrix, rhs)
    except SingularSystemError as exc:
        raise SingularSystemError(f"script-P system singular at pivot {exc.pivot}", exc.pivot) from None
    coeffs = [ONE] + b
    vac = mod.vacuum()

    def apply_P(v):
        out = FockVector(FERMION)
        for x, s in zip(coeffs, idx):
            out = out + mod.g_apply(HalfInt.from_doubled(s), v) * x
        return out

    P1 = apply_P(vac)
    P2 = apply_P(P1)
    if not P2.is_scalar_multiple_of_vacuum():
        raise TheoremViolation("script P^2 1 is not a multiple of the vacuum")
    return EllParams(ell=ell, b=b), P1, P2.coefficient(())


def build_A_matrix(chi: TwistedCharacter, ell) -> tuple:
    """The 2 ell x 2 ell matrix A(chi) and its Bareiss determinant."""
    ell = HalfInt(ell) if not isinstance(ell, HalfInt) else ell
    n = ell.doubled
    if n <= 0:
        raise ValueError("ell must be positive")
    Lf = ell.to_fraction()
    central = central_S_expected(chi, range(-2 * n - 2, 1, 2))
    symbolic = chi.is_symbolic()

    def entry(i, k):
        if k >= i:
            x = central.S_at(-(k - i + 1)) * 2
        elif k == i - 1:
            x = Scalar.coerce(Lf * Lf - (Lf - i) * (Lf - i))
        else:
            x = ZERO
        return MultiPoly.coerce(x) if symbolic else x

    M = [[entry(i, k) for k in range(n)] for i in range(n)]
    return M, det_bareiss(M)


def schur_criterion(chi: TwistedCharacter, ell):
    """S_{2 ell}(-2 chi_{-1}, -2 chi_{-2}, ...) on the integral part of chi."""
    n = doubled(ell)
    args = [chi[-k] * -2 for k in range(1, n + 1)]
    return schur(n, args)


# ---------------------------------------------------------------------------
# classification

def _in_half_z(x) -> bool:
    if isinstance(x, MultiPoly) or not x.is_rational():
        return False
    return (2 * x.to_rational()).denominator == 1


def irreducibility_report(chi: TwistedCharacter) -> dict:
    report = {"chi": chi.to_json(), "p": None if chi.p2 is None else fmt_half(chi.p2),
              "ell": None, "det_A": None, "schur": None, "Psq": None,
              "agree": True, "witness": None}
    if chi.p2 is not None and chi.p2 > 0:
        report.update(case="1.1", irreducible=True)
        return report
    c0 = chi[0]
    if not _in_half_z(c0) or c0 == Fraction(1, 2):
        report.update(case="1.2", irreducible=True)
        return report
    c0 = c0.to_rational()
    if c0 <= 0:
        witness = FockVector.monomial(FERMION, (int(2 * c0 - 1),))
        report.update(case="reducible", irreducible=False,
                      witness=str(witness))
        return report
    ell = HalfInt(c0 - Fraction(1, 2))
    _, det = build_A_matrix(chi, ell)
    sch = schur_criterion(chi, ell)
    params, P1, psq = solve_script_P_ell(chi)
    flags = (bool(det), bool(sch), bool(psq))
    agree = len(set(flags)) == 1
    report.update(case="1.3", ell=str(ell), det_A=det.to_json(), schur=sch.to_json(),
                  Psq=psq.to_json(), agree=agree, irreducible=flags[0])
    if not agree:
        raise TheoremViolation(f"criteria disagree for chi={chi}: det={det}, schur={sch}, Psq={psq}")
    if not flags[0]:
        _, P = solve_P_ell(chi)
        report["witness"] = str(P)
    return report


def strict_sequences2(total_max2: int, excluded2: Iterable[int] = ()) -> list:
    """Strictly decreasing tuples of positive doubled parts with sum <= total_max2."""
    ex = set(excluded2)
    out = []

    def rec(prefix, largest, remaining):
        out.append(tuple(prefix))
        for p in range(min(largest, remaining), 0, -1):
            if p in ex:
                continue
            prefix.append(p)
            rec(prefix, p - 1, remaining - p)
            prefix.pop()

    rec([], total_max2, total_max2)
    return out


def cyclic_span_check(chi: TwistedCharacter, cutoff) -> dict:
    """Span of G(p-n_1)...G(p-n_r)1 against the filtration F_{<= d}."""
    mod = SuperModule(chi)
    c2 = doubled(cutoff)
    p2 = max(chi.p2 or 0, 0)
    seqs = strict_sequences2(c2)
    basis = EchelonBasis()
    per_degree = []
    space = FockSpace(FERMION)
    for d2 in range(c2 + 1):
        for seq in (s for s in seqs if sum(s) == d2):
            v = mod.vacuum()
            for n2 in reversed(seq):
                v = mod.g_apply(HalfInt.from_doubled(p2 - n2), v)
            basis.add(v.terms)
        dim = len(space.basis_upto2(d2))
        per_degree.append({"degree": fmt_half(d2), "dim": dim, "rank": len(basis),
                           "missing": dim - len(basis)})
    report = {"full_span": all(row["missing"] == 0 for row in per_degree),
              "per_degree": per_degree, "witness": None, "witness_in_span": None}
    c0 = chi[0]
    if (chi.p2 is None or chi.p2 <= 0) and _in_half_z(c0) and c0.to_rational() <= 0:
        w2 = int(2 * c0.to_rational()) - 1
        if -w2 <= c2:
            witness = FockVector.monomial(FERMION, (w2,))
            report["witness"] = str(witness)
            report["witness_in_span"] = basis.contains(witness.terms)
    return report


def relation_value(chi: TwistedCharacter, r, s):
    """{G(r),G(s)} predicted by the relations with C = -3 and the realized S, T."""
    r2, s2 = doubled(r), doubled(s)
    sign = 1 if r2 % 2 else -1                  # (-1)^{2r+1}
    n2 = r2 + s2
    if n2 % 2:
        return chi.mapping2.get(n2, ZERO) * Fraction(-(r2 - s2), 2) * sign
    val = central_S_module(chi, n2) * 2
    if n2 == 0:
        r = Fraction(r2, 2)
        val = val + Fraction(CENTRAL_CHARGE, 3) * (r * r - Fraction(1, 4))
    return val * sign


def centrality_check(chi: TwistedCharacter, cutoff, mode_bound=Fraction(5, 2)) -> dict:
    """Every {G(r),G(s)}, |r|,|s| <= mode_bound, is scalar on degrees <= cutoff and fits the relations.

    ``offsets`` records S_realized - S_expected per integral mode.
    """
    mod = SuperModule(chi)
    b2 = doubled(mode_bound)
    checked, violations = 0, []
    for r2 in range(-b2, b2 + 1):
        for s2 in range(r2, b2 + 1):
            r, s = HalfInt.from_doubled(r2), HalfInt.from_doubled(s2)
            res = mod.anticommutator_scalar(r, s, cutoff)
            checked += res["checked"]
            if res["scalar"] is None:
                violations.append({"modes": [str(r), str(s)], "issue": "not scalar",
                                   **res["discrepancy"]})
            elif res["scalar"] != relation_value(chi, r, s):
                violations.append({"modes": [str(r), str(s)], "issue": "off pattern",
                                   "value": str(res["scalar"])})
    offsets = {}
    for n2 in range(-2 * b2, 2 * b2 + 1, 2):
        diff = central_S_module(chi, n2) - central_S_expected(chi, [n2]).S_at(HalfInt.from_doubled(n2))
        if diff:
            offsets[fmt_half(n2)] = diff.to_json()
    return {"checked": checked, "violations": violations, "offsets": offsets}
