"""Bundled example polygons used by the CLI docs and the test suite.

``bad.json`` is a deliberately non-convex sample for exercising input
validation; every other file parses into a valid polygon.
"""

from __future__ import annotations

from importlib import resources

from ..polygon import LatticePolygon, parse_polygon

VALID = (
    "quintic",
    "d7",
    "rect_4x2",
    "square_3x3",
    "trapezoid_g2",
    "trapezoid_g2_cut",
    "triangle_d3",
)


def names() -> tuple[str, ...]:
    return VALID + ("bad",)


def read_text(name: str) -> str:
    fname = name if name.endswith(".json") else f"{name}.json"
    return resources.files(__package__).joinpath(fname).read_text()


def load(name: str) -> LatticePolygon:
    return parse_polygon(read_text(name))
