#!/usr/bin/env python3
"""Run a representative sweep of every CLI verb into one results directory.

Produces CSV outputs plus an append-only manifest.jsonl, then prints a
digest of what was run.  One step intentionally requests infeasible work
(the Q = 16 block weight in interval mode) to demonstrate the cost-model
rejection path; its expected exit code is 3.

Usage:
    python3 scripts/run_experiments.py [--out-dir results] [--full]

--full raises the heavy sizes (decay M = 2^15, model distance up to 10^6)
from the default quick profile (~2 minutes) to the flagship ones (~10 min).
"""

import argparse
import json
import sys
import time
from pathlib import Path

from hbgowers import cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--full", action="store_true")
    args = ap.parse_args()

    out = Path(args.out_dir)
    cache = str(out / "cache")
    decay_m = str(1 << 15 if args.full else 1 << 13)
    approx_ns = ["10000", "100000"] + (["1000000"] if args.full else [])
    ap_n = "1000000" if args.full else "100000"

    # (description, argv, expected exit code)
    steps = [
        ("sieve tables, cached",
         ["sieve", "--N", ap_n, "--cache-dir", cache], 0),
        ("normalized U^1..U^3 of the running model weight",
         ["unorm", "--weight", "hbsum:T=4", "--N", "4096", "--s", "1", "2", "3"], 0),
        ("U^2 distance from the sieved weight to its model across N",
         ["approx", "--ns", *approx_ns, "--s", "2", "--cache-dir", cache], 0),
        ("block-weight U^3 norms across Q, both modes",
         ["decay", "--qs", "2", "4", "8", "--M", decay_m, "--mode", "both"], 0),
        ("cost-model rejection demo (expected exit 3)",
         ["decay", "--qs", "16", "--mode", "interval"], 3),
        ("progression sums vs main terms, plain weight",
         ["ap", "--weight", "vonmangoldt", "--N", ap_n, "--q", "4",
          "--cache-dir", cache], 0),
        ("progression sums vs main terms, twisted weight",
         ["ap", "--weight", "twist:q=3,sigma=0.9", "--T", "64", "--N", ap_n,
          "--q", "3", "--cache-dir", cache], 0),
        ("greening table over all vertex masks",
         ["cube", "--exhaustive"], 0),
        ("product expectations: tetrahedron tuple plus random samples",
         ["expect", "--qs", "3,1,1,3,1,3,3,1", "--samples", "25", "--seed", "9"], 0),
        ("transfer inequality trials against frozen constants",
         ["ineq", "--name", "all", "--N", "32", "--trials", "5"], 0),
        ("modulated sup over the frequency grid: resonant rotation",
         ["ww", "--system", "rotation:alpha=sqrt2", "--N", "65536",
          "--weight", "vonmangoldt", "--cache-dir", cache], 0),
        ("modulated sup: doubling orbit (expected small)",
         ["ww", "--system", "doubling:x=sqrt2", "--N", "65536",
          "--weight", "vonmangoldt", "--cache-dir", cache], 0),
        ("modulated sup: random signs (expected small)",
         ["ww", "--system", "signs:seed=7", "--N", "65536",
          "--weight", "vonmangoldt", "--cache-dir", cache], 0),
        ("return-times pairing: resonant two rotations",
         ["rtt", "--system", "rotation:alpha=sqrt2",
          "--system2", "rotation:alpha=-0.41421356237309515", "--N", "65536",
          "--weight", "vonmangoldt", "--cache-dir", cache], 0),
        ("return-times pairing: mismatched rotation vs doubling",
         ["rtt", "--system", "rotation:alpha=sqrt2",
          "--system2", "doubling:x=sqrt2", "--N", "65536",
          "--weight", "vonmangoldt", "--cache-dir", cache], 0),
    ]

    failures = 0
    t_start = time.perf_counter()
    for desc, argv, expected in steps:
        t0 = time.perf_counter()
        code = cli.main([*argv, "--out-dir", str(out)])
        status = "ok" if code == expected else f"UNEXPECTED exit {code} (wanted {expected})"
        if code != expected:
            failures += 1
        print(f"[{time.perf_counter() - t0:6.1f}s] {status:>12}  {desc}")

    manifest = out / "manifest.jsonl"
    if manifest.exists():
        print(f"\nmanifest entries in {manifest}:")
        for line in manifest.read_text().splitlines():
            rec = json.loads(line)
            outputs = ", ".join(Path(o["path"]).name for o in rec["outputs"])
            print(f"  {rec['command']:<7} {rec['duration_s']:8.2f}s  {outputs}")
    print(f"\ntotal {time.perf_counter() - t_start:.1f}s, "
          f"{len(steps) - failures}/{len(steps)} steps as expected")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
