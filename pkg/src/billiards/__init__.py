"""Planar billiard dynamics, induced cross-sections, and mixing diagnostics."""

from billiards.geometry import (
    Arc,
    BilliardTable,
    GeometryError,
    Segment,
    build_table,
    make_flower,
    make_stadium,
    make_three_cusp,
    save_table,
    validate_flower_conditions,
)

__all__ = [
    "Arc",
    "BilliardTable",
    "GeometryError",
    "Segment",
    "build_table",
    "make_flower",
    "make_stadium",
    "make_three_cusp",
    "save_table",
    "validate_flower_conditions",
]
