"""Flood complex persistent homology for 2D and 3D point clouds."""

from ._core import (
    FloodError,
    bottleneck_distance,
    cech_persistence,
    directed_hausdorff,
    farthest_point_sampling,
    flood_filtration,
    flood_persistence,
    gen_circle,
    gen_swisscheese,
    gen_torus,
    hausdorff_distance,
)

__all__ = [
    "FloodError",
    "bottleneck_distance",
    "cech_persistence",
    "directed_hausdorff",
    "farthest_point_sampling",
    "flood_filtration",
    "flood_persistence",
    "gen_circle",
    "gen_swisscheese",
    "gen_torus",
    "hausdorff_distance",
]
