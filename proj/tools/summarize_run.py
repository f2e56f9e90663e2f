#!/usr/bin/env python3
"""Pretty-print the outputs of a simulator run.

usage: summarize_run.py <output-dir>

Reads summary.json and histogram.csv from the given directory (as written by
`vbqc run`) and prints a compact human-readable report. Standard library only.
"""

import csv
import json
import sys
from pathlib import Path


def fmt_prob(x):
    return "-" if x is None else f"{x:.4f}"


def main(argv):
    if len(argv) != 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    out_dir = Path(argv[1])

    summary_path = out_dir / "summary.json"
    if not summary_path.exists():
        print(f"error: {summary_path} not found", file=sys.stderr)
        return 1
    summary = json.loads(summary_path.read_text())

    counts = summary["counts"]
    thresholds = summary["thresholds"]
    bounds = summary["bounds"]
    alg = summary["algorithm"]

    verdict = summary["verdict"].upper()
    print(f"{verdict}  (epsilon {summary['epsilon']:.4f} vs omega {thresholds['omega']})")
    print(f"  rounds      {counts['rounds']}  ({counts['test']} test / "
          f"{counts['computation']} computation)")
    print(f"  failed tests {counts['failed_tests']}")
    print(f"  output      {summary['output']}  majority {fmt_prob(summary['majority_fraction'])}")
    print(f"  algorithm   phi=({alg['phi1']}, {alg['phi2']}) x=({alg['x1']}, {alg['x2']})"
          f"  [angle codes, pi/4 units]")
    print(f"  seed        {summary['seed']}   ff_mode {summary['ff_mode']}"
          f"   adversary {summary['adversary']}")

    noise = summary["noise"]
    if noise.get("ideal"):
        print("  noise       ideal (perfect source and optics)")
    else:
        print(f"  noise       v={noise['v']} lambda={noise['lambda']} "
              f"lc±{noise['lc_err_halfwidth']:.4f}rad hwp±{noise['hwp_err_halfwidth_deg']}° "
              f"pc={noise['pc_phase_offset']:.4f}rad")

    print(f"  thresholds  nu={thresholds['nu']} omega={thresholds['omega']} "
          f"sigma={thresholds['sigma']} (k={thresholds['k']}, p={thresholds['p']})")
    print(f"  bounds      robustness {bounds['robustness']:.3e}  "
          f"soundness {bounds['soundness']:.3e}")

    blindness = summary.get("blindness")
    if blindness:
        print(f"  blindness   f_1q={blindness['f_single_qubit']:.12f} "
              f"f_2q={blindness['f_two_qubit']:.12f} chi={blindness['holevo_chi']:.3e}")

    if summary.get("overrides"):
        pretty = " ".join(f"{k}={v}" for k, v in summary["overrides"].items())
        print(f"  overrides   {pretty}")

    hist_path = out_dir / "histogram.csv"
    if hist_path.exists():
        print("\n  outcome histogram (true bits)")
        print("  type          m1  m2   count")
        with hist_path.open() as fh:
            for row in csv.DictReader(fh):
                print(f"  {row['type']:<12}  {row['m1']}   {row['m2']}   {row['count']:>8}")

    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
