#!/usr/bin/env python3
"""Cross-check the closed-form boundary witnesses against the full pipeline.

For k = 1 and k = d - 1 there is a one-line arithmetic test for whether a
splitting datum lies on a wall of the split locus (the reconstructed curve
degenerates from a theta graph to a dumbbell).  This sweep runs both the
witness test and the full reduction pipeline over a dense rational grid of
circle lengths and tabulates agreement, curve types, and any mismatches.

Examples:

    python3 scripts/boundary_grid.py
    python3 scripts/boundary_grid.py --min-d 2 --max-d 16 --max-num 6 --max-den 6
    python3 scripts/boundary_grid.py --csv-path disagreements.csv
"""

import argparse
import csv
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from splitjac import (
    DumbbellFamily,
    SplittingData,
    boundary_test_k1,
    boundary_test_kd1,
    torelli_preimage,
)


@dataclass(frozen=True)
class GridConfig:
    min_d: int = 2
    max_d: int = 12
    max_num: int = 8
    max_den: int = 8
    csv_path: str = ""


def parse_args(argv) -> GridConfig:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--min-d", type=int, default=2)
    parser.add_argument("--max-d", type=int, default=12)
    parser.add_argument("--max-num", type=int, default=8,
                        help="largest numerator in the length grid")
    parser.add_argument("--max-den", type=int, default=8,
                        help="largest denominator in the length grid")
    parser.add_argument("--csv-path", default="",
                        help="write any disagreement rows to this path")
    ns = parser.parse_args(argv)
    if not 2 <= ns.min_d <= ns.max_d:
        parser.error("need 2 <= --min-d <= --max-d")
    if ns.max_num < 1 or ns.max_den < 1:
        parser.error("grid bounds must be positive")
    return GridConfig(min_d=ns.min_d, max_d=ns.max_d, max_num=ns.max_num,
                      max_den=ns.max_den, csv_path=ns.csv_path)


def run(config: GridConfig) -> dict:
    lengths = sorted({Fraction(n, m)
                      for n in range(1, config.max_num + 1)
                      for m in range(1, config.max_den + 1)})
    stats = {"runs": 0, "dumbbells": 0, "thetas": 0, "disagreements": []}
    start = time.monotonic()
    for d in range(config.min_d, config.max_d + 1):
        tests = [(1, boundary_test_k1)]
        if d > 2:
            tests.append((d - 1, boundary_test_kd1))
        for k, witness_test in tests:
            for lp in lengths:
                for l in lengths:
                    sd = SplittingData(d=d, k=k, lp=lp, l=l)
                    witness = witness_test(sd)
                    curve = torelli_preimage(sd).curve
                    dumbbell = isinstance(curve, DumbbellFamily)
                    stats["runs"] += 1
                    stats["dumbbells" if dumbbell else "thetas"] += 1
                    if (witness is not None) != dumbbell:
                        stats["disagreements"].append(
                            {"d": d, "k": k, "lp": str(lp), "l": str(l),
                             "witness": str(witness), "curve": type(curve).__name__})
    stats["grid_size"] = len(lengths)
    stats["seconds"] = round(time.monotonic() - start, 2)
    return stats


def main(argv=None) -> int:
    config = parse_args(sys.argv[1:] if argv is None else argv)
    stats = run(config)
    print(f"grid: {stats['grid_size']} distinct lengths per axis, "
          f"d in [{config.min_d}, {config.max_d}]")
    print(f"pipeline runs: {stats['runs']} in {stats['seconds']}s")
    print(f"curve types: {stats['thetas']} theta, {stats['dumbbells']} dumbbell")
    print(f"witness disagreements: {len(stats['disagreements'])}")
    for row in stats["disagreements"][:10]:
        print(f"  {row}")
    if config.csv_path:
        with open(config.csv_path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(
                handle, fieldnames=["d", "k", "lp", "l", "witness", "curve"])
            writer.writeheader()
            writer.writerows(stats["disagreements"])
        print(f"wrote {config.csv_path}")
    return 0 if not stats["disagreements"] else 1


if __name__ == "__main__":
    sys.exit(main())
