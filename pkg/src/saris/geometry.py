"""3D node positions, link geometry, and uniform-disk cluster sampling.

Swarms and ground users are placed as fixed-count clusters of daughter points
drawn uniformly in a horizontal disk around a deterministic parent (the swarm
center or the user-region center).  All angles cross API boundaries in
degrees; radians are used internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Point3",
    "DiskRegion",
    "distance",
    "horizontal_distance",
    "elevation_angle_deg",
    "sample_uniform_disk",
    "sample_cluster",
]


@dataclass(frozen=True)
class Point3:
    """Position in meters; z >= 0 for every simulated node."""

    x: float
    y: float
    z: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise ValueError("coordinates must be finite")
        if self.z < 0:
            raise ValueError(f"node altitude must be >= 0, got z={self.z}")


@dataclass(frozen=True)
class DiskRegion:
    """Horizontal disk at the center's altitude; daughter points sample inside it."""

    center: Point3
    radius: float

    def __post_init__(self):
        if not (self.radius > 0):
            raise ValueError(f"disk radius must be > 0, got {self.radius}")


def distance(a: Point3, b: Point3) -> float:
    """Euclidean distance in meters."""
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2)


def horizontal_distance(a: Point3, b: Point3) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def elevation_angle_deg(ground: Point3, aerial: Point3) -> float:
    """Elevation of ``aerial`` seen from ``ground``, in (0, 90].

    Returns 90 when the aerial node is directly overhead.  Raises if the
    aerial node is not strictly above the ground node.
    """
    dz = aerial.z - ground.z
    if dz <= 0:
        raise ValueError("aerial node must be strictly above the ground node")
    return math.degrees(math.atan2(dz, horizontal_distance(ground, aerial)))


def sample_uniform_disk(region: DiskRegion, rng: np.random.Generator) -> Point3:
    """One point uniform over the disk area, at the center's altitude.

    Draw order is fixed (radius fraction first, then angle) so that streams
    replay identically for a given generator state.
    """
    r = region.radius * math.sqrt(rng.random())
    phi = 2.0 * math.pi * rng.random()
    return Point3(
        region.center.x + r * math.cos(phi),
        region.center.y + r * math.sin(phi),
        region.center.z,
    )


def sample_cluster(region: DiskRegion, count: int, rng: np.random.Generator) -> list[Point3]:
    """``count`` independent uniform-disk points (fixed daughter count)."""
    if count < 1:
        raise ValueError(f"cluster size must be >= 1, got {count}")
    return [sample_uniform_disk(region, rng) for _ in range(count)]
