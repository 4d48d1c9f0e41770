"""The twisted affine algebra at the critical level on F^{T_i}(chi) (x) F_{-1}^{T_j}.

The boson factor carries beta with <beta, beta> = -1.  Lattice vertex
operators are expanded as finite operator sums on each monomial, and every
mode of index n shifts the degree by -n (for chi = lam/z).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

from .fock import (FERMION, TENSOR, FockSpace, FockVector, HalfInt, _accumulate,
                   _odd_parts, doubled, fmt_half, heis_mono)
from .linalg import EchelonBasis, nullspace
from .scalars import I, INV_SQRT2, ONE, ZERO, Scalar
from .superalg import SuperModule, TwistedCharacter, central_S_expected

LEVEL = -2                  # K acts as this scalar
BETA_PAIRING = -1
H_HALF_PAIRING = Fraction(LEVEL, 2)     # [h(m),h(n)] = 2m K delta  =>  <h/2,h/2> = K/2


@dataclass(frozen=True)
class LatticeGenerator:
    """alpha(m) = scale * beta(m) + shift(m), ``shift`` a finite scalar map on doubled m."""

    name: str
    scale: int = 1
    shift: tuple = ()

    @property
    def pairing(self):
        return BETA_PAIRING * self.scale * self.scale

    def shift_at(self, m2: int):
        return dict(self.shift).get(m2, ZERO)


BETA = LatticeGenerator("beta")


def h_half(chi: TwistedCharacter) -> LatticeGenerator:
    """h/2 = -beta + T, with T the half-integral part of chi."""
    return LatticeGenerator("h-half", -1, tuple(central_S_expected(chi).T.items()))


def _beta_mono(n2: int, bmono: tuple) -> dict:
    """beta(n) with pairing -1 on a boson monomial."""
    out = {}
    for m, c in heis_mono(n2, bmono):
        out[m] = Scalar.coerce(c * BETA_PAIRING if n2 > 0 else c)
    return out


def _scalar_exp(coeffs: dict, top2: int) -> dict:
    """exp(sum_k coeffs[k2] z^{k}) up to doubled power top2; keys are doubled powers >= 0."""
    series = {0: ONE}
    term = {0: ONE}
    for n in range(1, top2 + 1):
        nxt = {}
        for a, x in term.items():
            for k, y in coeffs.items():
                if a + k <= top2:
                    nxt[a + k] = nxt.get(a + k, ZERO) + x * y * Fraction(1, n)
        term = {k: v for k, v in nxt.items() if v}
        if not term:
            break
        for k, v in term.items():
            series[k] = series.get(k, ZERO) + v
    return {k: v for k, v in series.items() if v}


def _multiplicities(parts: tuple) -> dict:
    mult: dict = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    return mult


class EtwExponential:
    """E^-_tw(-alpha, z) (direction -1) or E^+_tw(-alpha, z) (direction +1).

    E^-: exp(sum_k alpha(-k)/k z^k);  E^+: exp(-sum_k alpha(k)/k z^{-k}),
    k over positive half-odd integers.  ``apply(c2, bmono)`` is the z^{c}
    coefficient on a boson monomial; for E^+ only c <= 0 occurs.
    """

    def __init__(self, gen: LatticeGenerator, direction: int):
        if direction not in (1, -1):
            raise ValueError("direction is +1 or -1")
        self.gen = gen
        self.direction = direction
        scal = {}
        for m2, t in gen.shift:
            if direction == -1 and m2 < 0:
                scal[-m2] = t * Fraction(2, -m2)
            elif direction == 1 and m2 > 0 and t:
                raise ValueError("E^+ with a nonzero positive-mode shift does not truncate")
        self._scalar = scal
        self._cache: dict = {}

    def _operator_part(self, c2: int, bmono: tuple) -> dict:
        s = self.gen.scale
        if self.direction == -1:
            out = {}
            for parts in _odd_parts(c2, c2):
                coeff = Fraction(1)
                for p, m in _multiplicities(parts).items():
                    coeff *= Fraction(2 * s, p) ** m / factorial(m)
                mono = tuple(sorted(bmono + tuple(-p for p in parts)))
                out[mono] = out.get(mono, ZERO) + coeff
            return out
        a2 = -c2
        out: dict = {}
        for parts in _odd_parts(a2, a2):
            coeff = Fraction(1)
            for p, m in _multiplicities(parts).items():
                coeff *= Fraction(-2 * s, p) ** m / factorial(m)
            vec = {bmono: Scalar.coerce(coeff)}
            for p in parts:
                nxt: dict = {}
                for mono, x in vec.items():
                    _accumulate(nxt, _beta_mono(p, mono), x)
                vec = nxt
                if not vec:
                    break
            _accumulate(out, vec)
        return out

    def apply(self, c2: int, bmono: tuple) -> dict:
        key = (c2, bmono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        if self.direction == -1:
            if c2 >= 0:
                for k2, x in _scalar_exp(self._scalar, c2).items():
                    _accumulate(out, self._operator_part(c2 - k2, bmono), x)
        elif c2 <= 0 and -c2 <= -sum(bmono):
            out = self._operator_part(c2, bmono)
        out = {m: Scalar.coerce(x) for m, x in out.items() if x}
        self._cache[key] = out
        return out


def etw_exponential(gen: LatticeGenerator, direction: int) -> EtwExponential:
    return EtwExponential(gen, direction)


def lattice_constant(sector_j: int) -> Scalar:
    """-(2 sqrt(-1))^{-<beta,beta>} (-1)^j."""
    return I * (-2 * (-1) ** sector_j)


class YtwLattice:
    """Y_tw(e^{sign beta}, z) = const E^-_tw E^+_tw; ``apply(k2, bmono)`` is the z^k coefficient."""

    def __init__(self, sign: int, sector_j: int):
        gen = LatticeGenerator("beta", sign)
        self.minus = EtwExponential(gen, -1)
        self.plus = EtwExponential(gen, 1)
        self.const = lattice_constant(sector_j)
        self._cache: dict = {}

    def apply(self, k2: int, bmono: tuple) -> dict:
        key = (k2, bmono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        deg2 = -sum(bmono)
        for a2 in range(0, deg2 + 1):
            if k2 + a2 < 0:
                continue
            for mono, x in self.plus.apply(-a2, bmono).items():
                _accumulate(out, self.minus.apply(k2 + a2, mono), x * self.const)
        self._cache[key] = out
        return out


def ytw_lattice(sign: int, sector_j: int) -> YtwLattice:
    return YtwLattice(sign, sector_j)


# ---------------------------------------------------------------------------
# modes

@dataclass
class Weight:
    c0: Scalar
    c1: Scalar

    @classmethod
    def from_j(cls, j) -> "Weight":
        """(K/2)(Lambda0 + Lambda1) + j (Lambda1 - Lambda0)."""
        j = Scalar.coerce(j)
        half = Scalar.coerce(Fraction(LEVEL, 2))
        return cls(half - j, half + j)

    @property
    def level(self):
        return self.c0 + self.c1

    def to_json(self) -> dict:
        return {"Lambda0": self.c0.to_json(), "Lambda1": self.c1.to_json()}

    def __str__(self):
        return f"({self.c0})Lambda0 + ({self.c1})Lambda1"


class Sl2ThetaModule:
    """Modes x+(n), x-(m), h(m) on F^{T_i}(chi) (x) F_{-1}^{T_j}."""

    def __init__(self, chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1):
        self.chi = chi.with_sector(sector_i)
        self.sector_i, self.sector_j = sector_i, sector_j
        self.fermions = SuperModule(self.chi)
        self.y_plus = YtwLattice(1, sector_j)
        self.T = central_S_expected(self.chi).T
        self.p2 = max(self.chi.p2 or 0, 0)
        self._xcache: dict = {}

    # X_+(z) = (1/sqrt 2) G(z) (x) Y_tw(e^beta, z) z^{1/2}
    def _xplus_mono(self, e2: int, mono: tuple) -> dict:
        key = (e2, mono)
        hit = self._xcache.get(key)
        if hit is not None:
            return hit
        f, b = mono
        df2, db2 = -sum(f), -sum(b)
        out: dict = {}
        for t2 in range(-db2 - e2 - 2, df2 + self.p2 + 1):
            k2 = e2 + t2 + 2
            gf = self.fermions.g_mono(t2, f)
            if not gf:
                continue
            yb = self.y_plus.apply(k2, b)
            for ff, x in gf.items():
                for bb, y in yb.items():
                    _accumulate(out, {(ff, bb): x * y * INV_SQRT2})
        self._xcache[key] = out
        return out

    def X_plus(self, e, v: FockVector) -> FockVector:
        """Coefficient of z^e in X_+(z)."""
        e2 = doubled(e)
        out: dict = {}
        for m, c in v.terms.items():
            _accumulate(out, self._xplus_mono(e2, m), c)
        return FockVector(TENSOR, out)

    def X_minus(self, e, v: FockVector) -> FockVector:
        """X_-(z) is X_+(z) under z^{1/2} -> -z^{1/2}."""
        w = self.X_plus(e, v)
        return w if doubled(e) % 2 == 0 else -w

    def x_plus(self, n, v: FockVector) -> FockVector:
        n2 = doubled(n)
        if n2 % 2:
            raise ValueError("x+ modes are integral")
        return self.X_plus(HalfInt.from_doubled(-n2 - 2), v) * 2

    def x_minus(self, m, v: FockVector) -> FockVector:
        m2 = doubled(m)
        if m2 % 2 == 0:
            raise ValueError("x- modes are half-integral")
        return self.X_plus(HalfInt.from_doubled(-m2 - 2), v) * 2

    def h(self, m, v: FockVector) -> FockVector:
        m2 = doubled(m)
        if m2 % 2 == 0:
            raise ValueError("h modes are half-integral")
        out: dict = {}
        for (f, b), c in v.terms.items():
            _accumulate(out, {(f, bb): x * -2 for bb, x in _beta_mono(m2, b).items()}, c)
        w = FockVector(TENSOR, out)
        t = self.T.get(m2)
        return w + v * (t * 2) if t else w

    def mode(self, kind: str, index) -> Callable:
        fn = {"x+": self.x_plus, "x-": self.x_minus, "h": self.h}[kind]
        return lambda v: fn(index, v)

    def vacuum(self) -> FockVector:
        return FockVector.vacuum(TENSOR)


def sl2_theta_modes(chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1) -> Sl2ThetaModule:
    return Sl2ThetaModule(chi, sector_i, sector_j)


def _x_minus_alternative(mod: Sl2ThetaModule, e, v: FockVector) -> FockVector:
    """X_-(z) = (1/sqrt 2)(G^(1) - G^(2))(z) (x) Y_tw(e^{-beta}, z)(-z^{1/2}).

    G^(1) collects the half-integral G(t), G^(2) the integral ones.
    """
    y_minus = YtwLattice(-1, mod.sector_j)
    e2 = doubled(e)
    out: dict = {}
    for (f, b), c in v.terms.items():
        df2, db2 = -sum(f), -sum(b)
        for t2 in range(-db2 - e2 - 2, df2 + mod.p2 + 1):
            gf = mod.fermions.g_mono(t2, f)
            if not gf:
                continue
            sign = -1 if t2 % 2 else 1          # (G1 - G2) and the -z^{1/2}
            yb = y_minus.apply(e2 + t2 + 2, b)
            for ff, x in gf.items():
                for bb, y in yb.items():
                    _accumulate(out, {(ff, bb): x * y * INV_SQRT2 * sign}, c)
    return FockVector(TENSOR, out)


def _mode_indices(kind: str, bound2: int) -> list:
    parity = 0 if kind == "x+" else 1
    return [HalfInt.from_doubled(k) for k in range(-bound2, bound2 + 1) if k % 2 == parity]


def verify_sl2_theta(chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1,
                     cutoff=2, mode_bound=1, module: Sl2ThetaModule | None = None) -> dict:
    """Check the six bracket relations on every tensor basis vector of degree <= cutoff."""
    mod = module or Sl2ThetaModule(chi, sector_i, sector_j)
    K = LEVEL
    b2 = doubled(mode_bound)
    vectors = [FockVector.monomial(TENSOR, m) for m in FockSpace(TENSOR).basis_upto2(doubled(cutoff))]

    def delta(a, b):
        return 1 if a + b == 0 else 0

    # (name, kind_a, kind_b, rhs(a, b, v))
    relations = [
        ("[h,h]", "h", "h", lambda a, b, v: v * (2 * a.to_fraction() * delta(a, b) * K)),
        ("[h,x+]", "h", "x+", lambda a, b, v: mod.x_minus(a + b, v) * 2),
        ("[h,x-]", "h", "x-", lambda a, b, v: mod.x_plus(a + b, v) * 2),
        ("[x+,x+]", "x+", "x+", lambda a, b, v: v * (2 * a.to_fraction() * delta(a, b) * K)),
        ("[x+,x-]", "x+", "x-", lambda a, b, v: mod.h(a + b, v) * -2),
        ("[x-,x-]", "x-", "x-", lambda a, b, v: v * (-2 * a.to_fraction() * delta(a, b) * K)),
    ]
    checked = 0
    violations = []
    for name, ka, kb, rhs in relations:
        for a in _mode_indices(ka, b2):
            for b in _mode_indices(kb, b2):
                A, B = mod.mode(ka, a), mod.mode(kb, b)
                for v in vectors:
                    lhs = A(B(v)) - B(A(v))
                    checked += 1
                    if lhs != rhs(a, b, v):
                        violations.append({"relation": name, "modes": [str(a), str(b)],
                                           "vector": str(v)})
    return {"relations_checked": checked, "violations": violations,
            "sectors": [mod.sector_i, mod.sector_j]}


# ---------------------------------------------------------------------------
# highest weights and vacuum spaces

def lam_of(chi: TwistedCharacter):
    """lam when chi = lam/z, else None."""
    if any(m != 0 for m, _ in chi.coeffs):
        return None
    return chi[0]


def highest_weight_data(chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1,
                        submodule: bool = False) -> Weight:
    """Weight of the module generated by 1 (x) 1 from the x+(0) eigenvalue.

    ``submodule`` restricts to Ker Phi(1/2 - lam); the highest weight vector
    is still the vacuum, so only membership is checked.
    """
    lam = lam_of(chi)
    if lam is None:
        raise ValueError("highest weights need chi = lam/z")
    mod = Sl2ThetaModule(chi, sector_i, sector_j)
    vac = mod.vacuum()
    if submodule:
        kernel_mode = Fraction(1, 2) - lam.to_rational()
        if mod.fermions.phi_apply(kernel_mode, FockVector.vacuum(FERMION)):
            raise ValueError("vacuum is not in the kernel submodule")
    w = mod.x_plus(0, vac)
    j = w.coefficient(((), ()))
    if w != vac * j:
        raise ValueError("degree-0 vector is not an x+(0) eigenvector")
    return Weight.from_j(j)


def _kernel_basis(mod: Sl2ThetaModule, d2: int) -> list:
    monos = FockSpace(TENSOR).basis2(d2)
    images = {}
    for mono in monos:
        v = FockVector.monomial(TENSOR, mono)
        for n2 in range(1, d2 + 2, 2):
            for out, c in mod.h(HalfInt.from_doubled(n2), v).terms.items():
                images[(n2, out), mono] = c
    rows = sorted({r for r, _ in images})
    return nullspace(monos, rows, lambda r, c: images.get((r, c), ZERO))


def vacuum_space(chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1, cutoff=3) -> dict:
    """Graded pieces of Omega = {v : h(n) v = 0, n > 0}."""
    T = central_S_expected(chi).T
    if any(m > 0 for m in T):
        raise ValueError("Omega is graded only when T(n) = 0 for n > 0")
    mod = Sl2ThetaModule(chi, sector_i, sector_j)
    dims, bases = {}, {}
    for d2 in range(doubled(cutoff) + 1):
        basis = _kernel_basis(mod, d2)
        dims[fmt_half(d2)] = len(basis)
        bases[fmt_half(d2)] = [FockVector(TENSOR, {m: c for m, c in vec.items() if c}) for vec in basis]
    return {"dims": dims, "basis": bases}


class APlusModes:
    """A+(z) = E^-_tw(-h/2, z) X_+(z) E^+_tw(-h/2, z); A-(z) by z^{1/2} -> -z^{1/2}."""

    def __init__(self, chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1):
        self.mod = Sl2ThetaModule(chi, sector_i, sector_j)
        gen = h_half(self.mod.chi)
        self.e_minus = EtwExponential(gen, -1)
        self.e_plus = EtwExponential(gen, 1)

    def _boson_op(self, op: EtwExponential, c2: int, v: FockVector) -> FockVector:
        out: dict = {}
        for (f, b), x in v.terms.items():
            _accumulate(out, {(f, bb): y for bb, y in op.apply(c2, b).items()}, x)
        return FockVector(TENSOR, out)

    def apply(self, e, v: FockVector) -> FockVector:
        """Coefficient of z^e in A+(z) applied to v."""
        e2 = doubled(e)
        total = FockVector(TENSOR)
        dmax = max((-sum(f) - sum(b) for f, b in v.terms), default=0)
        for a2 in range(0, dmax + 1):
            w = self._boson_op(self.e_plus, -a2, v)
            if not w:
                continue
            dw = max(-sum(f) - sum(b) for f, b in w.terms)
            for c2 in range(0, dw + e2 + 3 + 1):
                u = self.mod.X_plus(HalfInt.from_doubled(e2 - c2 + a2), w)
                if u:
                    total = total + self._boson_op(self.e_minus, c2, u)
        return total

    def mode(self, n, v: FockVector) -> FockVector:
        """A+(n): coefficient of z^{-n-1}."""
        return self.apply(HalfInt.from_doubled(-doubled(n) - 2), v)

    def minus_mode(self, n, v: FockVector) -> FockVector:
        w = self.mode(n, v)
        return w if doubled(n) % 2 == 0 else -w


def a_plus_modes(chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1) -> APlusModes:
    return APlusModes(chi, sector_i, sector_j)


def a_plus_constant(sector_j: int) -> Scalar:
    """The scalar with A+(n) = const * G(n) (x) 1 on Omega when T = 0."""
    return lattice_constant(sector_j) * INV_SQRT2


def omega_preservation(chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1,
                       cutoff=2, mode_bound=1) -> dict:
    """A+(n) Omega_d lands in Omega; when chi^(2) = 0 also A+(n) = const G(n) (x) 1 there."""
    vac = vacuum_space(chi, sector_i, sector_j, cutoff + mode_bound)
    ap = APlusModes(chi, sector_i, sector_j)
    const = a_plus_constant(sector_j)
    compare = not ap.mod.T
    checked, failures = 0, []
    h_checks = [HalfInt.from_doubled(n2) for n2 in range(1, doubled(cutoff + mode_bound) + 2, 2)]
    for d2 in range(doubled(cutoff) + 1):
        for v in vac["basis"][fmt_half(d2)]:
            for n2 in range(-doubled(mode_bound), doubled(mode_bound) + 1):
                n = HalfInt.from_doubled(n2)
                w = ap.mode(n, v)
                checked += 1
                if any(ap.mod.h(m, w) for m in h_checks):
                    failures.append({"mode": str(n), "vector": str(v), "issue": "leaves Omega"})
                if not compare:
                    continue
                expected = FockVector(TENSOR)
                for (f, b), c in v.terms.items():
                    g = ap.mod.fermions.g_mono(n2, f)
                    expected = expected + FockVector(TENSOR, {(ff, b): x * c * const for ff, x in g.items()})
                if w != expected:
                    failures.append({"mode": str(n), "vector": str(v), "issue": "differs from const*G"})
    return {"checked": checked, "failures": failures, "constant": const.to_json(),
            "compared_with_G": compare}


def tensor_cyclic_span(chi: TwistedCharacter, sector_i: int = 1, sector_j: int = 1, cutoff=2) -> dict:
    """Span of 1 (x) 1 under x+, x-, h modes, truncated at degree ``cutoff`` (chi = lam/z)."""
    if lam_of(chi) is None:
        raise ValueError("the truncated span is graded only for chi = lam/z")
    mod = Sl2ThetaModule(chi, sector_i, sector_j)
    c2 = doubled(cutoff)
    ops = [(k, i) for k in ("x+", "x-", "h") for i in _mode_indices(k, c2)]
    basis = EchelonBasis()
    frontier = [mod.vacuum()]
    basis.add(frontier[0].terms)
    while frontier:
        nxt = []
        for v in frontier:
            for kind, idx in ops:
                w = mod.mode(kind, idx)(v)
                w = FockVector(TENSOR, {m: c for m, c in w.terms.items() if -sum(m[0]) - sum(m[1]) <= c2})
                if w and basis.add(w.terms):
                    nxt.append(w)
        frontier = nxt
    dims = [len(FockSpace(TENSOR).basis2(d)) for d in range(c2 + 1)]
    return {"rank": len(basis), "dim": sum(dims), "full": len(basis) == sum(dims)}
