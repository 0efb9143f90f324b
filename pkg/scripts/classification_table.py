#!/usr/bin/env python3
"""Print the associate-quotient classification table.

Each row is a canonical identification pattern on the six-cycle of
fundamental-element relations, with the partial field it certifies to.
Pass --full to route every raw identification subset through its closure.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pfkit.confine import classify_associate_quotients


def main():
    full = "--full" in sys.argv[1:]
    rows = classify_associate_quotients(full=full)
    tally = {}
    for r in rows:
        blocks = " ".join("{" + ",".join(str(x) for x in sorted(b)) + "}"
                          for b in sorted(r.partition, key=sorted))
        flag = "" if r.verified or r.target == "GF(3)-collapse" else "  UNVERIFIED"
        print(f"{blocks:40s} -> {r.target}{flag}")
        tally[r.target] = tally.get(r.target, 0) + 1
    print()
    for target in sorted(tally):
        print(f"{target}: {tally[target]}")


if __name__ == "__main__":
    main()
