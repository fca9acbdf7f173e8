"""Points, disks and the vertical-line predicates used by the skyline sweep."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

# Relative slack on squared radii for every point-in-disk test.
EPS_GEO = 1e-9

DUMMY_ID = -1


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True)
class Disk:
    id: int
    center: Point
    radius: float
    weight: float = 1.0

    def __post_init__(self):
        if self.id == DUMMY_ID:
            return
        if not self.radius > 0:
            raise ValueError(f"disk {self.id}: radius must be positive, got {self.radius}")
        if not self.weight > 0:
            raise ValueError(f"disk {self.id}: weight must be positive, got {self.weight}")

    @property
    def is_dummy(self) -> bool:
        return self.id == DUMMY_ID


# Zero-weight stand-in for the lower half-plane; it covers nothing and sorts
# after every real disk on any vertical line.
DUMMY = Disk(DUMMY_ID, Point(0.0, 0.0), math.inf, 0.0)


def disk(id: int, x: float, y: float, r: float, w: float = 1.0) -> Disk:
    return Disk(id, Point(float(x), float(y)), float(r), float(w))


def contains(d: Disk, p: Point) -> bool:
    if d.is_dummy:
        return False
    dx = p.x - d.center.x
    dy = p.y - d.center.y
    return dx * dx + dy * dy <= d.radius * d.radius * (1.0 + EPS_GEO)


def intersects_line(d: Disk, x_line: float) -> bool:
    if d.is_dummy:
        return True
    dx = x_line - d.center.x
    return dx * dx <= d.radius * d.radius * (1.0 + EPS_GEO)


def chord_low(d: Disk, x_line: float) -> Optional[float]:
    """Lowest y of ``d`` on the vertical line ``x = x_line``, or None if it misses."""
    if d.is_dummy:
        return math.inf
    if not intersects_line(d, x_line):
        return None
    dx = x_line - d.center.x
    return d.center.y - math.sqrt(max(0.0, d.radius * d.radius - dx * dx))


def dominance_key(d: Disk, x_line: float) -> tuple:
    """Sort key realising line-dominance: smaller key dominates.

    Disks missing the line get an infinite key so that they come after the
    dummy, which in turn comes after every real disk crossing the line.
    """
    if d.is_dummy:
        return (math.inf, 0, math.inf, 0)
    low = chord_low(d, x_line)
    if low is None:
        return (math.inf, 1, d.center.x, d.id)
    return (low, 0, d.center.x, d.id)


def line_dominates(d1: Disk, d2: Disk, x_line: float) -> bool:
    if not intersects_line(d1, x_line):
        raise ValueError("dominator off line")
    if d1 == d2:
        return False
    if not intersects_line(d2, x_line):
        return True
    return dominance_key(d1, x_line) < dominance_key(d2, x_line)


def sort_by_dominance(disks: Iterable[Disk], x_line: float) -> list[Disk]:
    return sorted(disks, key=lambda d: dominance_key(d, x_line))


def skyline(disks: Sequence[Disk], p: Point, k: int, require_cover: bool = False) -> tuple[int, ...]:
    """Ids of the ``k`` lowest disks at the vertical line through ``p``.

    With ``require_cover`` only disks containing ``p`` are eligible; otherwise
    any disk crossing the line is. Fewer than ``k`` ids come back when there
    are not enough eligible disks.
    """
    if require_cover:
        pool = [d for d in disks if contains(d, p)]
    else:
        pool = [d for d in disks if intersects_line(d, p.x)]
    pool.sort(key=lambda d: dominance_key(d, p.x))
    return tuple(d.id for d in pool[:k])
