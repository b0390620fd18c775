"""Configurations of polygons and their JSON file format.

File layout::

    {"label": str, "side": num,
     "polygons": [{"n": int, "center": [x, y], "rotation": r}, ...],
     "loops": [[[x, y], ...], ...],          # optional explicit vertex lists
     "meta": {...}}                          # optional free-form metadata

Numbers are floats.  Strings ``"p/q"`` are exact rationals, and a rotation may
be written ``"p/q of pi"``.  Pieces are read back as all polygons followed by
all loops.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .errors import NotRational
from .geom import EXACT, Loop, Point
from .shapes import RegularPolygon
from .union import Piece, as_loop


@dataclass(frozen=True)
class ShiftParams:
    epsilon: float
    validated: bool = False

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


@dataclass(frozen=True)
class Setup:
    pieces: tuple[Piece, ...]
    label: str = ""
    side: float = 1.0
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.pieces:
            raise ValueError("a setup needs at least one polygon")

    def __len__(self) -> int:
        return len(self.pieces)

    @property
    def polygons(self) -> tuple[Piece, ...]:
        return self.pieces

    @property
    def is_parametric(self) -> bool:
        return all(isinstance(p, RegularPolygon) for p in self.pieces)

    def loops(self, exact: bool | None = None) -> list[Loop]:
        """CCW loops of every piece; ``exact`` forces one backend.

        ``exact=True`` turns float loop coordinates into the rationals of their
        shortest decimal representation and rejects parametric polygons.
        """
        out = []
        for p in self.pieces:
            if exact and isinstance(p, RegularPolygon):
                raise NotRational("parametric regular polygons have irrational vertices")
            loop = as_loop(p)
            if exact is True and loop.backend != EXACT:
                loop = Loop(tuple(Point(_decimal(x), _decimal(y)) for x, y in loop.vertices))
            elif exact is False and loop.backend == EXACT:
                loop = loop.to_float()
            out.append(loop)
        return out

    def with_pieces(self, pieces: Sequence[Piece], **meta) -> "Setup":
        return Setup(tuple(pieces), self.label, self.side, {**self.meta, **meta})

    def mixed_backends(self) -> bool:
        kinds = {as_loop(p).backend for p in self.pieces}
        return len(kinds) > 1


def _decimal(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _encode_scalar(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return f"{x}/1"
    return float(x)


def _decode_scalar(v, exact: bool = False):
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"not a number: {v!r}")
    return Fraction(repr(float(v))) if exact else float(v)


def _decode_rotation(v) -> float:
    if isinstance(v, str):
        text = v.strip()
        if text.endswith("of pi"):
            return float(Fraction(text[: -len("of pi")].strip())) * math.pi
        return float(Fraction(text))
    return float(v)


def setup_to_dict(setup: Setup) -> dict[str, Any]:
    polygons, loops = [], []
    for p in setup.pieces:
        if isinstance(p, RegularPolygon):
            polygons.append(
                {"n": p.n, "center": [p.center[0], p.center[1]], "rotation": p.rotation}
            )
        else:
            loops.append([[_encode_scalar(x), _encode_scalar(y)] for x, y in p.vertices])
    doc: dict[str, Any] = {"label": setup.label, "side": setup.side, "polygons": polygons}
    if loops:
        doc["loops"] = loops
    if setup.meta:
        doc["meta"] = setup.meta
    return doc


def setup_from_dict(doc: dict[str, Any], exact: bool = False) -> Setup:
    side = float(doc.get("side", 1.0))
    pieces: list[Piece] = []
    for entry in doc.get("polygons", []) or []:
        if exact:
            raise NotRational("parametric regular polygons have irrational vertices")
        cx, cy = entry.get("center", [0.0, 0.0])
        pieces.append(
            RegularPolygon(
                int(entry["n"]),
                float(entry.get("side", side)),
                Point(float(_decode_scalar(cx)), float(_decode_scalar(cy))),
                _decode_rotation(entry.get("rotation", 0.0)),
            )
        )
    for verts in doc.get("loops", []) or []:
        coords = [(_decode_scalar(x, exact), _decode_scalar(y, exact)) for x, y in verts]
        if not exact and any(isinstance(c, float) for xy in coords for c in xy):
            coords = [(float(x), float(y)) for x, y in coords]
        pieces.append(Loop(tuple(Point(x, y) for x, y in coords)))
    return Setup(tuple(pieces), str(doc.get("label", "")), side, dict(doc.get("meta", {}) or {}))


def dump_setup(setup: Setup, path: str | Path) -> None:
    Path(path).write_text(json.dumps(setup_to_dict(setup), indent=2) + "\n")


def load_setup(path: str | Path, exact: bool = False) -> Setup:
    return setup_from_dict(json.loads(Path(path).read_text()), exact=exact)
