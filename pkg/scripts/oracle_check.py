"""Union engine against the edge-clipping perimeter oracle and Monte Carlo area
on seeded random instances; writes the per-instance table as JSON."""
import argparse
import json
import time
from pathlib import Path

from polyratio.oracles import oracle_comparison

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--count", type=int, default=200)
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("--samples", type=int, default=1_000_000)
ap.add_argument("--out", default="results/oracle_check.json")
args = ap.parse_args()

t0 = time.time()
rows = oracle_comparison(args.count, args.seed, args.samples)
Path(args.out).parent.mkdir(parents=True, exist_ok=True)
Path(args.out).write_text(json.dumps(rows, indent=1, sort_keys=True) + "\n")
print(f"{len(rows)} instances in {time.time() - t0:.0f}s")
print(f"max perimeter error {max(r['perimeter_error'] for r in rows):.2e}")
print(f"max area |z| {max(r['area_z'] for r in rows):.2f}")
