"""Cycle algebra: chunks, builders, point multiplicities, split and cut."""

from svbullet.cycles.chunk import (
    Chunk,
    Cycle,
    cut_with_divisor,
    cycle_degree,
    is_proper_cut,
    make_full_space,
    make_hypersurface,
    make_linear_space,
    make_point,
    merged,
    multiplicity_at,
    point_ideal,
    point_on_support,
    split_by,
    support_contained,
    supports_equal,
    total_degree,
)
from svbullet.cycles.io import format_cycle, parse_cycle, read_cycle

__all__ = [
    "Chunk",
    "Cycle",
    "cut_with_divisor",
    "cycle_degree",
    "format_cycle",
    "is_proper_cut",
    "make_full_space",
    "make_hypersurface",
    "make_linear_space",
    "make_point",
    "merged",
    "multiplicity_at",
    "parse_cycle",
    "point_ideal",
    "point_on_support",
    "read_cycle",
    "split_by",
    "support_contained",
    "supports_equal",
    "total_degree",
]
