"""Finite-difference data on whether the basic setup is a local minimum of the
ratio: the central-difference gradient in (x, y, rotation) of every polygon,
the ratio change for single-polygon moves, and the change along the
all-polygon shift."""
import argparse
import math

from polyratio.constructions import basic_setup, marked_directions
from polyratio.shapes import single_ngon_ratio
from polyratio.union import ratio
from polyratio.verify import directional_derivative, ratio_gradient

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--cells", default="5,4 4,3 7,3 3,4 2,3")
ap.add_argument("--h", type=float, default=1e-5)
args = ap.parse_args()

for cell in args.cells.split():
    k, n = map(int, cell.split(","))
    s = basic_setup(k, n)
    base = single_ngon_ratio(n)
    grad, errors = ratio_gradient(s, args.h)
    gmax = max(abs(g) for g in grad if not math.isnan(g))
    shift = directional_derivative(s.pieces, marked_directions(s), 1e-3)
    # curvature along single-polygon moves: ratio(d) - ratio(0) ~ c d^2
    d = 1e-2
    single = []
    for ang in range(0, 360, 30):
        a = math.radians(ang)
        pieces = list(s.pieces)
        pieces[0] = pieces[0].moved(d * math.cos(a), d * math.sin(a))
        single.append((ratio(pieces) - base) / d**2)
    print(
        f"({k},{n}) max|grad| {gmax:.2e}  errors {len(errors)}  "
        f"shift quotient (h=1e-3) {shift:+.4e}  single-move curvature {min(single):+.3f}..{max(single):+.3f}"
    )
