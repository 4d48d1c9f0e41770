"""Print graded dimensions of the Fock spaces and their q-product form."""
from __future__ import annotations

import argparse
from fractions import Fraction

from twistcrit.characters import character_table, graded_dims
from twistcrit.superalg import TwistedCharacter


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cutoff", type=Fraction, default=Fraction(6))
    args = ap.parse_args()
    print("degree product  fock  enumerated")
    for row in character_table(args.cutoff):
        print(f"{row['degree']:>6}  {row['product']:>7}  {row['fock']:>4}  {row['enumerated']:>10}")
    for lam in (0, Fraction(-1, 2)):
        dims = graded_dims("kernel-tensor", args.cutoff, TwistedCharacter.lam(lam))
        print(f"kernel of lambda={lam}: {list(dims.coeffs)}")


if __name__ == "__main__":
    main()
