#!/usr/bin/env python3
"""Summarize corrperf CSV artifacts: per-column stats and diff sign changes."""
import argparse
import csv
import math
import sys


def summarize(path):
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise SystemExit(f"{path}: empty file")
        columns = {name: [] for name in reader.fieldnames}
        for row in reader:
            for name in reader.fieldnames:
                columns[name].append(float(row[name]))

    print(f"{path}: {len(next(iter(columns.values())))} rows")
    for name, values in columns.items():
        lo, hi = min(values), max(values)
        mean = math.fsum(values) / len(values)
        print(f"  {name:>12}: min {lo:.6g}  max {hi:.6g}  mean {mean:.6g}")

    if "diff" in columns and "g_tau" in columns:
        diff = columns["diff"]
        taus = columns["g_tau"]
        crossings = [
            (taus[i - 1], taus[i])
            for i in range(1, len(diff))
            if diff[i - 1] != 0.0 and diff[i] != 0.0
            and math.copysign(1.0, diff[i - 1]) != math.copysign(1.0, diff[i])
        ]
        if crossings:
            spans = ", ".join(f"({a:.4f}, {b:.4f})" for a, b in crossings[:8])
            more = "" if len(crossings) <= 8 else f" (+{len(crossings) - 8} more)"
            print(f"  diff changes sign {len(crossings)} time(s): {spans}{more}")
        else:
            print("  diff never changes sign")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_files", nargs="+", help="CSV artifacts to summarize")
    args = parser.parse_args()
    for path in args.csv_files:
        try:
            summarize(path)
        except OSError as err:
            print(f"{path}: {err}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
