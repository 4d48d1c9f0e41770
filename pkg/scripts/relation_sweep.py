"""Check the twisted sl2 brackets on every sample chi and sector pair."""
from __future__ import annotations

import argparse
import json
import time
from fractions import Fraction
from pathlib import Path

from twistcrit.affine import verify_sl2_theta
from twistcrit.superalg import TwistedCharacter

CHI_DIR = Path(__file__).resolve().parents[1] / "chi"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cutoff", type=Fraction, default=Fraction(3))
    ap.add_argument("--mode-bound", type=Fraction, default=Fraction(1))
    args = ap.parse_args()
    failed = 0
    for path in sorted(CHI_DIR.glob("*.json")):
        chi = TwistedCharacter.load(path)
        for i in (1, 2):
            for j in (1, 2):
                start = time.time()
                rep = verify_sl2_theta(chi, i, j, cutoff=args.cutoff, mode_bound=args.mode_bound)
                failed += bool(rep["violations"])
                print(f"{path.stem:<18} ({i},{j}) checked {rep['relations_checked']:>6} "
                      f"violations {len(rep['violations'])}  {time.time() - start:.1f}s")
                if rep["violations"]:
                    print(json.dumps(rep["violations"][:3], default=str))
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
