"""Area decrease and ratio gain of the shifted (5,4) and (4,3) setups as the
shift shrinks; both scale like eps^2."""
from polyratio.constructions import basic_setup, shifted_setup
from polyratio.geom import region_area, region_perimeter
from polyratio.shapes import single_ngon_ratio
from polyratio.union import union


def measure(pieces):
    r = union(pieces)
    return float(region_perimeter(r)), float(region_area(r))


for k, n in ((5, 4), (4, 3)):
    pb, ab = measure(basic_setup(k, n).pieces)
    print(f"({k},{n})  basic perimeter {pb:.12f}  area {ab:.12f}")
    print(f"{'eps':>10} {'dp':>10} {'area drop':>12} {'drop/eps^2':>11} {'ratio gain':>12}")
    for i in range(1, 9):
        eps = 0.1 * 2**-i
        p, a = measure(shifted_setup(k, n, eps=eps).pieces)
        print(f"{eps:10.6f} {p - pb:10.1e} {ab - a:12.4e} {(ab - a) / eps**2:11.4f} {p / a - single_ngon_ratio(n):12.4e}")
