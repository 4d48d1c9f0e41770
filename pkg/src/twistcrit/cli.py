"""Command-line front end.

Exit codes: 0 pass, 1 check failure, 2 input error, 3 theorem-consistency
violation.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import affine, characters, fock, superalg
from .fock import HalfInt
from .linalg import SingularSystemError
from .superalg import ChiFormatError, TheoremViolation, TwistedCharacter

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_THEOREM = 0, 1, 2, 3
DEFAULT_CUTOFF = {"verify": "4", "character": "5/2", "bases": "2", "vacuum": "3",
                  "irreducible": "3", "pell": "4", "report": "2"}


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    chi_file: str | None
    cutoff: HalfInt
    sectors: tuple
    output: str = "text"
    seed: int = 0
    t: int | None = None

    def chi(self, default: TwistedCharacter | None = None) -> TwistedCharacter:
        if self.chi_file is None:
            if default is None:
                raise InputError(f"{self.command}: --chi is required")
            return default.with_sector(self.sectors[0])
        try:
            chi = TwistedCharacter.load(self.chi_file)
        except FileNotFoundError:
            raise InputError(f"{self.chi_file}: no such file") from None
        except ChiFormatError as exc:
            raise InputError(f"{self.chi_file}: {exc}") from None
        return chi.with_sector(self.sectors[0])


def parse_cutoff(text: str) -> HalfInt:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a half-integer: {text!r}") from None
    if (2 * value).denominator != 1 or value < 0:
        raise argparse.ArgumentTypeError(f"cutoff must be a nonnegative half-integer: {text!r}")
    return HalfInt(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistcrit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--chi", dest="chi_file", help="JSON file with the twisted character")
    common.add_argument("--cutoff", type=parse_cutoff, help="degree cutoff, e.g. 4 or 5/2")
    common.add_argument("--sector-i", type=int, choices=(1, 2), default=1)
    common.add_argument("--sector-j", type=int, choices=(1, 2), default=1)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="relation and centrality checks")
    sub.add_parser("irreducible", parents=[common], help="irreducibility report")
    sub.add_parser("pell", parents=[common], help="singular vectors P_ell and script P_ell")
    sub.add_parser("character", parents=[common], help="q-product against graded dimensions")
    bases = sub.add_parser("bases", parents=[common], help="basis enumeration and independence")
    bases.add_argument("--t", type=int, default=None, help="nonnegative integer t; omit for generic")
    sub.add_parser("vacuum", parents=[common], help="vacuum space dimensions")
    sub.add_parser("report", parents=[common], help="summary of all checks")
    return parser


def _emit(cfg: RunConfig, payload: dict, lines: list) -> None:
    if cfg.output == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# commands

def cmd_verify(cfg: RunConfig) -> int:
    chi = cfg.chi(TwistedCharacter.lam(Fraction(1, 2)))
    c = cfg.cutoff
    i, j = cfg.sectors
    bound = min(c.to_fraction(), 4)
    cliff = fock.check_clifford(c, bound, i)
    heis = fock.check_heisenberg(c, bound)
    central = superalg.centrality_check(chi, c, min(c.to_fraction(), Fraction(5, 2)))
    sl2 = affine.verify_sl2_theta(chi, i, j, cutoff=c, mode_bound=min(bound, 1))
    parts = {"clifford": cliff, "heisenberg": heis, "centrality": central, "sl2_theta": sl2}
    ok = not any(p["violations"] for p in parts.values())
    payload = {"chi": chi.to_json(), "cutoff": str(c), "ok": ok,
               **{k: {"checked": v.get("checked", v.get("relations_checked")),
                      "violations": v["violations"][:20]} for k, v in parts.items()},
               "normal_ordering_offsets": central["offsets"]}
    lines = [f"chi = {chi}  (sectors {i},{j}, cutoff {c})"]
    for name, v in parts.items():
        n = v.get("checked", v.get("relations_checked"))
        lines.append(f"{name:12s} {n:6d} checked  {len(v['violations'])} violations")
    if central["offsets"]:
        lines.append(f"S offsets from the chi^(1) formula: {central['offsets']}")
    lines.append("PASS" if ok else "FAIL")
    _emit(cfg, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_irreducible(cfg: RunConfig) -> int:
    chi = cfg.chi()
    rep = superalg.irreducibility_report(chi)
    span = superalg.cyclic_span_check(chi, cfg.cutoff)
    rep["cyclic_span"] = {"full": span["full_span"], "witness_in_span": span["witness_in_span"]}
    if rep["irreducible"] and not span["full_span"]:
        raise TheoremViolation("irreducible by criterion but the cyclic span misses vectors")
    lines = [f"chi = {chi}", f"case {rep['case']}: {'irreducible' if rep['irreducible'] else 'reducible'}"]
    if rep["case"] == "1.3":
        lines.append(f"ell = {rep['ell']}  det A = {rep['det_A']}  Schur = {rep['schur']}  "
                     f"P^2 = {rep['Psq']}  agree = {rep['agree']}")
    if rep["witness"]:
        lines.append(f"witness: {rep['witness']}  (in cyclic span: {span['witness_in_span']})")
    _emit(cfg, rep, lines)
    return EXIT_OK


def cmd_pell(cfg: RunConfig) -> int:
    chi = cfg.chi()
    try:
        params, P = superalg.solve_P_ell(chi, cfg.cutoff)
        sparams, P1, psq = superalg.solve_script_P_ell(chi)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    ell = params.ell
    consistent = P1 == P * (Fraction(2) * ell.to_fraction())
    if not consistent:
        raise TheoremViolation("script P_ell 1 differs from 2 ell P_ell")
    payload = {"ell": str(ell), "a": [x.to_json() for x in params.a],
               "b": [x.to_json() for x in sparams.b], "P_ell": P.to_json(), "Psq": psq.to_json(),
               "annihilated_up_to": str(cfg.cutoff)}
    lines = [f"ell = {ell}", f"P_ell = {P}", f"b = {[str(x) for x in sparams.b]}",
             f"script P^2 1 = ({psq}) 1", f"G(r) P_ell = 0 for 0 < r <= {cfg.cutoff}"]
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_character(cfg: RunConfig) -> int:
    table = characters.character_table(cfg.cutoff)
    ok = all(r["match"] for r in table)
    lines = ["degree | product | enumerated | fock-dims | match"]
    lines += [f"{r['degree']:>6} | {r['product']:>7} | {r['enumerated']:>10} | {r['fock']:>9} | {r['match']}"
              for r in table]
    if not ok:
        bad = next(r for r in table if not r["match"])
        lines.append(f"first mismatch at degree {bad['degree']}")
    _emit(cfg, {"rows": table, "ok": ok}, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bases(cfg: RunConfig) -> int:
    if cfg.chi_file is not None:
        chi = cfg.chi()
    elif cfg.t is not None:
        if cfg.t < 0:
            raise InputError("--t must be nonnegative")
        chi = TwistedCharacter.lam(Fraction(-cfg.t, 2), cfg.sectors[0])
    else:
        chi = TwistedCharacter.lam(Fraction(1, 3), cfg.sectors[0])
    try:
        rep = characters.verify_basis_independence(chi, *cfg.sectors, cutoff=cfg.cutoff)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    pat = rep["pattern"]
    lines = [f"chi = {chi}  t = {'generic' if pat['t'] is None else pat['t']}"
             + (f"  (n_i != {pat['excluded']})" if pat["excluded"] else ""),
             "degree | enumerated | rank | dim | ok"]
    lines += [f"{r['degree']:>6} | {r['enumerated']:>10} | {r['rank']:>4} | {r['dim']:>3} | {r['ok']}"
              for r in rep["rows"]]
    if not rep["ok"]:
        bad = next(r for r in rep["rows"] if not r["ok"])
        lines.append(f"first mismatch at degree {bad['degree']}")
    _emit(cfg, rep, lines)
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_vacuum(cfg: RunConfig) -> int:
    chi = cfg.chi(TwistedCharacter.lam(Fraction(1, 3)))
    try:
        omega = characters.graded_dims("omega", cfg.cutoff, chi, *cfg.sectors)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    ferm = characters.graded_dims("fermion", cfg.cutoff)
    pres = affine.omega_preservation(chi, *cfg.sectors, cutoff=min(cfg.cutoff.to_fraction(), 2))
    ok = omega.coeffs == ferm.coeffs and not pres["failures"]
    rows = [{"degree": k, "omega": omega.as_table()[k], "fermion": ferm.as_table()[k]}
            for k in omega.as_table()]
    lines = ["degree | Omega | F(chi)"] + [f"{r['degree']:>6} | {r['omega']:>5} | {r['fermion']:>6}" for r in rows]
    lines.append(f"A+ preserves Omega: {not pres['failures']}  (A+(n) = ({affine.a_plus_constant(cfg.sectors[1])}) G(n) on Omega)")
    _emit(cfg, {"rows": rows, "a_plus": pres, "ok": ok}, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_report(cfg: RunConfig) -> int:
    """Irreducibility of the given chi plus a seeded criterion-equivalence sweep."""
    rng = random.Random(cfg.seed)
    sweep = []
    for _ in range(20):
        ell = Fraction(rng.randint(1, 4), 2)
        coeffs = {0: ell + Fraction(1, 2)}
        for k in range(1, int(2 * ell) + 1):
            coeffs[-k] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        rep = superalg.irreducibility_report(TwistedCharacter.from_map(coeffs))
        sweep.append(rep["agree"])
    payload = {"seed": cfg.seed, "sweep_agree": all(sweep), "sweep_size": len(sweep),
               "character": characters.character_table(cfg.cutoff)}
    lines = [f"seed {cfg.seed}: {len(sweep)} random chi, criteria agree: {all(sweep)}"]
    if cfg.chi_file is not None:
        rep = superalg.irreducibility_report(cfg.chi())
        payload["irreducible"] = rep
        lines.append(f"chi: case {rep['case']}, irreducible = {rep['irreducible']}")
    lines.append("character match: " + str(all(r["match"] for r in payload["character"])))
    _emit(cfg, payload, lines)
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "irreducible": cmd_irreducible, "pell": cmd_pell,
            "character": cmd_character, "bases": cmd_bases, "vacuum": cmd_vacuum,
            "report": cmd_report}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    cutoff = args.cutoff if args.cutoff is not None else parse_cutoff(DEFAULT_CUTOFF[args.command])
    cfg = RunConfig(command=args.command, chi_file=args.chi_file, cutoff=cutoff,
                    sectors=(args.sector_i, args.sector_j),
                    output="json" if args.json else "text", seed=args.seed,
                    t=getattr(args, "t", None))
    try:
        return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TheoremViolation, SingularSystemError) as exc:
        print(f"theorem-consistency violation: {exc}", file=sys.stderr)
        return EXIT_THEOREM


if __name__ == "__main__":
    sys.exit(main())
