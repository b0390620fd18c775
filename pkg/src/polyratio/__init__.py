"""Perimeter-to-area ratio of unions of regular polygons."""
from .constructions import (
    basic_setup,
    figure6_setup,
    four_square_example,
    inscribed_square_triangles,
    marked_vertices,
    shifted_setup,
)
from .errors import GeometryError
from .exact import SqrtSum
from .geom import Loop, Point, Region, region_area, region_perimeter
from .pattern import boundary_signature, is_pattern_preserving, is_regular_translation
from .setup import Setup, load_setup, dump_setup
from .shapes import RegularPolygon, single_ngon_ratio
from .union import perimeter_area, ratio, union

__version__ = "0.1.0"

__all__ = [
    "basic_setup", "shifted_setup", "marked_vertices", "four_square_example",
    "inscribed_square_triangles", "figure6_setup", "GeometryError", "SqrtSum",
    "Loop", "Point", "Region", "region_area", "region_perimeter",
    "boundary_signature", "is_pattern_preserving", "is_regular_translation",
    "Setup", "load_setup", "dump_setup", "RegularPolygon", "single_ngon_ratio",
    "perimeter_area", "ratio", "union",
]
