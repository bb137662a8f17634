"""Finite universes of discourse.

Every fuzzy set and granule is tabulated over a finite, ordered point set.
The real line is always stood in for by a user-declared numeric grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

POINT_TOL = 1e-9
GRADE_TOL = 1e-9

Point = Union[str, float]


@dataclass(frozen=True)
class Universe:
    id: str
    points: tuple
    kind: str = "labeled"  # "labeled" | "grid"
    grid: tuple | None = field(default=None)  # (min, max, step) for grids

    def __post_init__(self):
        if not self.points:
            raise ValueError(f"universe {self.id!r} has no points")
        if self.kind not in ("labeled", "grid"):
            raise ValueError(f"unknown universe kind {self.kind!r}")
        if self.kind == "labeled":
            if len(set(self.points)) != len(self.points):
                raise ValueError(f"universe {self.id!r} has duplicate labels")
        elif self.grid is None:
            raise ValueError("grid universe needs (min, max, step)")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def is_numeric(self) -> bool:
        return self.kind == "grid"

    def index(self, point: Point) -> int:
        """Position of ``point``; numeric points match within ``POINT_TOL``."""
        if self.kind == "labeled":
            try:
                return self.points.index(point)
            except ValueError:
                raise KeyError(f"{point!r} is not a point of {self.id!r}") from None
        lo, _, step = self.grid
        i = int(round((float(point) - lo) / step))
        if 0 <= i < len(self.points) and abs(self.points[i] - point) <= POINT_TOL:
            return i
        raise KeyError(f"{point!r} is not a point of {self.id!r}")

    def to_dict(self) -> dict:
        if self.kind == "grid":
            lo, hi, step = self.grid
            return {"id": self.id, "kind": "grid", "min": lo, "max": hi, "step": step}
        return {"id": self.id, "kind": "labeled", "points": list(self.points)}

    @classmethod
    def from_dict(cls, d: dict) -> "Universe":
        if d["kind"] == "grid":
            return make_grid_universe(d["min"], d["max"], d["step"], id=d["id"])
        return make_label_universe(d["points"], id=d["id"])


@dataclass(frozen=True)
class ProductUniverse:
    left: Universe
    right: Universe

    @property
    def id(self) -> str:
        return f"{self.left.id}*{self.right.id}"

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.left), len(self.right))

    def __len__(self) -> int:
        return len(self.left) * len(self.right)

    @property
    def points(self) -> tuple:
        # row-major: flat index of (i, j) is i * |Y| + j
        return tuple((x, y) for x in self.left.points for y in self.right.points)

    def axis(self, name: str) -> Universe:
        if name == "left":
            return self.left
        if name == "right":
            return self.right
        raise ValueError(f"axis must be 'left' or 'right', got {name!r}")

    def to_dict(self) -> dict:
        return {"left": self.left.to_dict(), "right": self.right.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "ProductUniverse":
        return cls(Universe.from_dict(d["left"]), Universe.from_dict(d["right"]))


AnyUniverse = Union[Universe, ProductUniverse]


def universe_from_dict(d: dict) -> AnyUniverse:
    if "left" in d:
        return ProductUniverse.from_dict(d)
    return Universe.from_dict(d)


def make_grid_universe(min: float, max: float, step: float, id: str = "R") -> Universe:
    """Numeric grid ``min, min+step, ..., max``.

    ``max`` must sit on the grid (within 1e-9); points are computed as
    ``min + i*step`` rather than by repeated addition.
    """
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if min > max:
        raise ValueError(f"grid min {min} exceeds max {max}")
    span = (max - min) / step
    n = math.floor(span + POINT_TOL) + 1
    if abs(min + (n - 1) * step - max) > POINT_TOL:
        raise ValueError(f"grid max {max} is not reached from {min} in steps of {step}")
    points = tuple(float(min + i * step) for i in range(n))
    points = points[:-1] + (float(max),)
    return Universe(id=id, points=points, kind="grid", grid=(float(min), float(max), float(step)))


def make_label_universe(labels: Sequence[str], id: str = "L") -> Universe:
    labels = tuple(str(s) for s in labels)
    if not labels:
        raise ValueError("label universe needs at least one label")
    if len(set(labels)) != len(labels):
        dup = sorted({s for s in labels if labels.count(s) > 1})
        raise ValueError(f"duplicate labels: {dup}")
    return Universe(id=id, points=labels, kind="labeled")


def product(x: Universe, y: Universe) -> ProductUniverse:
    return ProductUniverse(x, y)
