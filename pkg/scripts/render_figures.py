"""SVG drawings of the constructions: basic and shifted (5,4), the triangle
examples, the four squares and the 25-square rosette."""
import argparse
from pathlib import Path

from polyratio import constructions as C
from polyratio.render import render_svg

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--out", default="results/figures")
args = ap.parse_args()

out = Path(args.out)
out.mkdir(parents=True, exist_ok=True)
setups = {
    "basic_5_4": C.basic_setup(5, 4),
    "shifted_5_4": C.shifted_setup(5, 4, eps=0.05),
    "basic_4_3": C.basic_setup(4, 3),
    "triangles3": C.inscribed_square_triangles(3),
    "triangles4": C.inscribed_square_triangles(4),
    "four_square": C.four_square_example(),
    "figure6": C.figure6_setup(),
}
for name, s in setups.items():
    (out / f"{name}.svg").write_text(render_svg(s, show_union=True, labels=name != "figure6"))
    print(f"wrote {out / name}.svg")
