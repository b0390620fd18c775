"""Shifted-setup sweep over coprime (k, n): does moving every polygon towards its
marked vertex raise the ratio above the single polygon's, and does that match
the k = 1 (mod n) rule?  Writes CSV and JSON next to each other."""
import argparse
import json
import time
from pathlib import Path

from polyratio.verify import conjecture_sweep, sweep_to_csv

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--max-k", type=int, default=12)
ap.add_argument("--max-n", type=int, default=8)
ap.add_argument("--eps", type=float, default=0.05)
ap.add_argument("--samples", type=int, default=4)
ap.add_argument("--workers", type=int, default=1)
ap.add_argument("--out", default="results/sweep")
args = ap.parse_args()

t0 = time.time()
rows = conjecture_sweep(args.max_k, args.max_n, args.eps, samples=args.samples, workers=args.workers)
out = Path(args.out)
out.parent.mkdir(parents=True, exist_ok=True)
out.with_suffix(".csv").write_text(sweep_to_csv(rows))
out.with_suffix(".json").write_text(json.dumps(rows, indent=1) + "\n")

print(f"{'k':>3} {'n':>3} {'delta':>12} pred obs  eps")
for r in rows:
    delta = "" if r["delta"] is None else f"{r['delta']:+.3e}"
    mark = "" if r["observed"] == r["predicted"] else "  <-- disagrees"
    print(f"{r['k']:>3} {r['n']:>3} {delta:>12} {r['predicted']!s:5} {r['observed']!s:5} {r['eps_used']}{mark}")
print(f"{len(rows)} cells in {time.time() - t0:.1f}s")
