#!/usr/bin/env python3
"""Scan the corner-square prediction for two-block shapes (k, 1).

For each k the orthogonal pairing table of shape (k, 1) is built and the
square of the corner cross value at offset 2k - 1 is compared with the
predicted (-1)^(k-1) * 2^(2k).  Prints one JSON line per k.
"""

import argparse
import json
import sys
import time

sys.path.insert(0, "src")

from isoflag.gram import check_conjecture_210  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=8)
    args = ap.parse_args()

    for k in range(2, args.kmax + 1):
        t1 = time.monotonic()
        table, square, expected, matches = check_conjecture_210(k)
        print(json.dumps({
            "k": k,
            "square": square.to_json(),
            "expected": expected.to_json(),
            "matches": matches,
            "seconds": round(time.monotonic() - t1, 3),
        }))


if __name__ == "__main__":
    main()
