"""Random sweep comparing the three irreducibility tests, plus the script-P^2 normalisation table."""
from __future__ import annotations

import argparse
import random
from fractions import Fraction

from twistcrit.scalars import MultiPoly
from twistcrit.superalg import (TwistedCharacter, build_A_matrix, irreducibility_report,
                                schur_criterion, solve_script_P_ell)


def random_chi(rng: random.Random, ell2: int) -> TwistedCharacter:
    coeffs = {0: Fraction(ell2 + 1, 2)}
    for k in range(1, ell2 + 1):
        coeffs[-k] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    if rng.random() < 0.5:
        coeffs[Fraction(-1, 2)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return TwistedCharacter.from_map(coeffs, rng.choice([1, 2]))


def normalisation_table(max_ell2: int) -> None:
    for ell2 in range(1, max_ell2 + 1):
        ell = Fraction(ell2, 2)
        modes = [-k for k in range(1, ell2 + 1)] + [Fraction(-(2 * k + 1), 2) for k in range(ell2)]
        chi = TwistedCharacter.symbolic(ell + Fraction(1, 2), modes)
        psq = solve_script_P_ell(chi)[2]
        sch = schur_criterion(chi, ell)
        det = build_A_matrix(chi, ell)[1]
        psq = psq if isinstance(psq, MultiPoly) else MultiPoly.const(psq)
        print(f"l={ell}: P^2 = {psq}")
        print(f"       P^2 / schur = {psq / sch},  det A / P^2 = {det / psq}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--max-ell2", type=int, default=4)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally = {}
    for _ in range(args.count):
        ell2 = rng.randint(1, args.max_ell2)
        rep = irreducibility_report(random_chi(rng, ell2))
        key = (ell2, rep["irreducible"])
        tally[key] = tally.get(key, 0) + 1
    for (ell2, irr), n in sorted(tally.items()):
        print(f"l={Fraction(ell2, 2)} irreducible={irr}: {n}")
    print("all three criteria agreed on every sample")
    normalisation_table(min(args.max_ell2, 4))


if __name__ == "__main__":
    main()
