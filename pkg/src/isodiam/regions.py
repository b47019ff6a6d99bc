"""Pixel regions, analytic shapes, and circle-restricted arc sets.

A PixelRegion is a finite set of grid cells of pitch h anchored at an
origin: cell (i, j) covers [ox + i*h, ox + (i+1)*h] x [oy + j*h, oy + (j+1)*h].
Rasterization uses center sampling (a cell belongs to the raster of a shape
exactly when its center lies in the shape), so the measure |cells| * h^2
carries an O(h) error proportional to the shape's perimeter.

ArcSet models a subset of the circle of radius r as disjoint half-open
angular intervals, normalized to [0, 2*pi) with wraparound split at zero.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np
from scipy.signal import fftconvolve

from . import diameters
from .geometry import Point, PointSet, convex_hull_indices

__all__ = [
    "PixelRegion",
    "Disk",
    "TwoDisksUnion",
    "DisjointDisks",
    "AnalyticShape",
    "rasterize",
    "lens_area",
    "u_delta_shape",
    "u_delta_measure",
    "region_measure",
    "region_diam",
    "region_diam3_sampled",
    "region_tab_check_sampled",
    "minkowski_difference",
    "ArcSet",
    "ArcCheckResult",
    "arc_measure",
    "arc_tab_check",
]

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Analytic shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Disk:
    """Closed disk, as an analytic shape for rasterization."""

    center: Point
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"shape disk radius must be > 0, got {self.radius}")

    @property
    def area(self) -> float:
        return math.pi * self.radius**2

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def bbox(self) -> tuple[float, float, float, float]:
        c, r = self.center, self.radius
        return (c.x - r, c.y - r, c.x + r, c.y + r)

    def contains_xy(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (x - self.center.x) ** 2 + (y - self.center.y) ** 2 <= self.radius**2


@dataclass(frozen=True)
class TwoDisksUnion:
    """Union of two unit disks with centers (±d/2, 0).

    For 0 <= d < 2 the disks overlap and the area is 2*pi minus the lens;
    for d >= 2 they are disjoint (tangent at d = 2) with area 2*pi. The
    diameter is d + 2. With d = delta - 2 this is the conjectured extremal
    U_delta for the window 4/sqrt(3) < delta < 4.
    """

    d: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.d) and self.d >= 0.0):
            raise ValueError(f"center distance must be finite and >= 0, got {self.d}")

    @property
    def area(self) -> float:
        if self.d >= 2.0:
            return TWO_PI
        return TWO_PI - lens_area(self.d)

    @property
    def diameter(self) -> float:
        return self.d + 2.0

    def bbox(self) -> tuple[float, float, float, float]:
        half = self.d / 2.0
        return (-half - 1.0, -1.0, half + 1.0, 1.0)

    def contains_xy(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        half = self.d / 2.0
        return ((x - half) ** 2 + y**2 <= 1.0) | ((x + half) ** 2 + y**2 <= 1.0)


@dataclass(frozen=True)
class DisjointDisks:
    """count unit disks with centers spaced `spacing` apart on the x axis.

    spacing must exceed 4 so that all pairwise center distances exceed 4,
    the configuration realizing the T(a,2) extremal measure (a-1)*pi with
    count = a - 1 disks.
    """

    count: int
    spacing: float

    def __post_init__(self) -> None:
        if not (isinstance(self.count, int) and self.count >= 1):
            raise ValueError(f"count must be a positive integer, got {self.count}")
        if not (math.isfinite(self.spacing) and self.spacing > 4.0):
            raise ValueError(f"spacing must exceed 4, got {self.spacing}")

    @property
    def area(self) -> float:
        return self.count * math.pi

    @property
    def diameter(self) -> float:
        return (self.count - 1) * self.spacing + 2.0

    def bbox(self) -> tuple[float, float, float, float]:
        return (-1.0, -1.0, (self.count - 1) * self.spacing + 1.0, 1.0)

    def contains_xy(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        mask = np.zeros(np.broadcast(x, y).shape, dtype=bool)
        for k in range(self.count):
            cx = k * self.spacing
            mask |= (x - cx) ** 2 + y**2 <= 1.0
        return mask


AnalyticShape = Union[Disk, TwoDisksUnion, DisjointDisks]


# ---------------------------------------------------------------------------
# Pixel regions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PixelRegion:
    """Immutable set of grid cells of pitch h anchored at origin."""

    origin: Point
    h: float
    cells: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if not (math.isfinite(self.h) and self.h > 0.0):
            raise ValueError(f"pitch h must be finite and > 0, got {self.h}")

    @property
    def measure(self) -> float:
        return len(self.cells) * self.h * self.h

    def is_empty(self) -> bool:
        return not self.cells

    def cell_index_array(self) -> np.ndarray:
        """Sorted (n, 2) int64 array of cell indices."""
        if not self.cells:
            return np.empty((0, 2), dtype=np.int64)
        arr = np.array(sorted(self.cells), dtype=np.int64)
        return arr

    def cell_centers(self) -> np.ndarray:
        idx = self.cell_index_array().astype(np.float64)
        out = (idx + 0.5) * self.h
        out[:, 0] += self.origin.x
        out[:, 1] += self.origin.y
        return out

    def corner_points(self) -> np.ndarray:
        """Unique cell corners as an (m, 2) float64 array."""
        idx = self.cell_index_array()
        if len(idx) == 0:
            return np.empty((0, 2), dtype=np.float64)
        corners = np.concatenate(
            [idx, idx + [1, 0], idx + [0, 1], idx + [1, 1]], axis=0
        )
        corners = np.unique(corners, axis=0).astype(np.float64) * self.h
        corners[:, 0] += self.origin.x
        corners[:, 1] += self.origin.y
        return corners

    def to_json_dict(self) -> dict:
        return {
            "origin": [self.origin.x, self.origin.y],
            "h": self.h,
            "cells": [[int(i), int(j)] for i, j in sorted(self.cells)],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PixelRegion":
        try:
            ox, oy = data["origin"]
            h = data["h"]
            cells = frozenset((int(i), int(j)) for i, j in data["cells"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed region JSON: {exc}") from exc
        return cls(origin=Point(float(ox), float(oy)), h=float(h), cells=cells)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "PixelRegion":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def rasterize(shape: AnalyticShape, h: float, origin: Point = Point(0.0, 0.0)) -> PixelRegion:
    """Center-sampled raster of an analytic shape on the grid of pitch h.

    A cell is included exactly when its center lies in the (closed) shape.
    """
    if not (math.isfinite(h) and h > 0.0):
        raise ValueError(f"pitch h must be finite and > 0, got {h}")
    xmin, ymin, xmax, ymax = shape.bbox()
    i_lo = math.floor((xmin - origin.x) / h) - 1
    i_hi = math.ceil((xmax - origin.x) / h) + 1
    j_lo = math.floor((ymin - origin.y) / h) - 1
    j_hi = math.ceil((ymax - origin.y) / h) + 1
    ii = np.arange(i_lo, i_hi + 1, dtype=np.int64)
    jj = np.arange(j_lo, j_hi + 1, dtype=np.int64)
    cx = origin.x + (ii + 0.5) * h
    cy = origin.y + (jj + 0.5) * h
    gx, gy = np.meshgrid(cx, cy, indexing="ij")
    mask = shape.contains_xy(gx, gy)
    sel_i, sel_j = np.nonzero(mask)
    cells = frozenset(zip((ii[sel_i]).tolist(), (jj[sel_j]).tolist()))
    return PixelRegion(origin=origin, h=h, cells=cells)


def lens_area(d: float) -> float:
    """Area of the intersection of two unit disks with centers d apart.

    2*acos(d/2) - (d/2)*sqrt(4 - d^2) for 0 <= d <= 2; pi at d = 0, zero
    at d = 2.
    """
    if not (math.isfinite(d) and 0.0 <= d <= 2.0):
        raise ValueError(f"lens needs center distance in [0, 2], got {d}")
    return 2.0 * math.acos(d / 2.0) - (d / 2.0) * math.sqrt(4.0 - d * d)


def u_delta_shape(delta: float) -> TwoDisksUnion:
    """The two-unit-disk union of diameter delta, for 2 < delta < 4."""
    if not (math.isfinite(delta) and 2.0 < delta < 4.0):
        raise ValueError(f"u_delta needs 2 < delta < 4, got {delta}")
    return TwoDisksUnion(delta - 2.0)


def u_delta_measure(delta: float) -> float:
    """Measure 2*pi - lens_area(delta - 2) of the conjectured extremal."""
    return u_delta_shape(delta).area


def region_measure(r: PixelRegion) -> float:
    return r.measure


def region_diam(r: PixelRegion) -> float:
    """Exact diameter of the union of closed cells.

    The diameter of a union of axis-aligned squares is attained at cell
    corners, so it is the largest pairwise distance among hull vertices of
    the corner set. Raises ValueError on an empty region.
    """
    if r.is_empty():
        raise ValueError("diameter of an empty region")
    corners = r.corner_points()
    hull = convex_hull_indices(corners)
    pts = corners[hull]
    if len(pts) == 1:
        return 0.0
    best = 0.0
    for i in range(len(pts) - 1):
        d2 = float(np.sum((pts[i + 1 :] - pts[i]) ** 2, axis=1).max())
        if d2 > best:
            best = d2
    return math.sqrt(best)


def _sampled_support(r: PixelRegion, k: int, seed: int) -> np.ndarray:
    """k seeded cell-center samples (with replacement) plus all hull
    vertices of the corner set."""
    centers = r.cell_centers()
    rng = np.random.default_rng(seed)
    take = rng.integers(0, len(centers), size=k)
    corners = r.corner_points()
    hull = corners[convex_hull_indices(corners)]
    return np.concatenate([centers[take], hull], axis=0)


def region_diam3_sampled(r: PixelRegion, k: int = 2000, seed: int = 0) -> float:
    """Sampled lower bound for the region's diam3.

    Evaluates diam3 on k seeded-uniform cell centers plus every convex hull
    vertex of the cell corners. A lower bound only: thin features between
    samples can hide a larger value.
    """
    if r.is_empty():
        raise ValueError("diam3 of an empty region")
    pts = _sampled_support(r, k, seed)
    return diameters.diam3(PointSet.from_xy(map(tuple, pts)))


def region_tab_check_sampled(
    r: PixelRegion,
    a: int,
    b: int,
    threshold: float,
    k: int = 60,
    seed: int = 0,
    max_hull: int = 24,
    budget: int = diameters.DEFAULT_SUBSET_BUDGET,
) -> diameters.TabCheckResult:
    """Sampled T(a,b) check on a region.

    Runs tab_check on k seeded cell centers plus at most max_hull hull
    vertices (evenly strided). Sampled, so "holds" is evidence rather than
    proof; a reported violation is genuine for the sampled points, which
    all lie in the region.
    """
    if r.is_empty():
        return diameters.TabCheckResult(holds=True)
    centers = r.cell_centers()
    rng = np.random.default_rng(seed)
    take = rng.integers(0, len(centers), size=k)
    corners = r.corner_points()
    hull = corners[convex_hull_indices(corners)]
    if len(hull) > max_hull:
        stride = math.ceil(len(hull) / max_hull)
        hull = hull[::stride]
    pts = np.concatenate([centers[take], hull], axis=0)
    return diameters.tab_check(PointSet.from_xy(map(tuple, pts)), a, b, threshold, budget=budget)


def minkowski_difference(r: PixelRegion) -> PixelRegion:
    """Cell-index difference set {c1 - c2} at the same pitch, origin-anchored.

    This is the grid-level stand-in for the pointwise difference body
    S - S: its measure |diff| * h^2 tracks lambda_2(S - S) to within a
    boundary term. The support is found by correlating the indicator grid
    with itself; counts are integers, so thresholding at one half is exact.
    Symmetric under index negation by construction. The difference of an
    empty region is empty.
    """
    idx = r.cell_index_array()
    if len(idx) == 0:
        return PixelRegion(origin=Point(0.0, 0.0), h=r.h, cells=frozenset())
    i_min, j_min = idx.min(axis=0)
    i_max, j_max = idx.max(axis=0)
    w = int(i_max - i_min) + 1
    v = int(j_max - j_min) + 1
    grid = np.zeros((w, v), dtype=np.float64)
    grid[idx[:, 0] - i_min, idx[:, 1] - j_min] = 1.0
    corr = fftconvolve(grid, grid[::-1, ::-1])
    di, dj = np.nonzero(corr > 0.5)
    cells = frozenset(zip((di - (w - 1)).tolist(), (dj - (v - 1)).tolist()))
    return PixelRegion(origin=Point(0.0, 0.0), h=r.h, cells=cells)


# ---------------------------------------------------------------------------
# Arc sets on a circle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArcSet:
    """Disjoint half-open arcs [t1, t2) on the circle of radius r.

    Stored normalized: starts in [0, 2*pi), ends in (start, 2*pi], sorted,
    overlaps merged, wraparound split at zero. Construct via from_intervals
    unless the input is already normalized.
    """

    r: float
    arcs: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r > 0.0):
            raise ValueError(f"circle radius must be > 0, got {self.r}")
        prev_end = -1.0
        for t1, t2 in self.arcs:
            if not (math.isfinite(t1) and math.isfinite(t2)):
                raise ValueError("arc endpoints must be finite")
            if not (0.0 <= t1 < t2 <= TWO_PI):
                raise ValueError(f"arc [{t1}, {t2}) is not normalized to [0, 2*pi)")
            if t1 < prev_end:
                raise ValueError("arcs overlap or are out of order")
            prev_end = t2

    @classmethod
    def from_intervals(cls, r: float, intervals: Sequence[Sequence[float]]) -> "ArcSet":
        """Normalize arbitrary [t1, t2) intervals.

        Each interval sweeps counterclockwise from t1 to t2 and must have
        width in (0, 2*pi]; intervals crossing zero are split. Overlapping
        input arcs are merged. Zero-width intervals are rejected.
        """
        pieces: list[tuple[float, float]] = []
        for entry in intervals:
            if len(entry) != 2:
                raise ValueError(f"arc entry must be a pair, got {entry!r}")
            t1, t2 = float(entry[0]), float(entry[1])
            if not (math.isfinite(t1) and math.isfinite(t2)):
                raise ValueError("arc endpoints must be finite")
            width = t2 - t1
            if not (0.0 < width <= TWO_PI):
                raise ValueError(f"arc [{t1}, {t2}) must have width in (0, 2*pi]")
            start = math.fmod(t1, TWO_PI)
            if start < 0.0:
                start += TWO_PI
            end = start + width
            if end <= TWO_PI:
                pieces.append((start, end))
            else:
                pieces.append((start, TWO_PI))
                pieces.append((0.0, end - TWO_PI))
        pieces.sort()
        merged: list[tuple[float, float]] = []
        for t1, t2 in pieces:
            if merged and t1 <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], t2))
            else:
                merged.append((t1, t2))
        return cls(r=r, arcs=tuple(merged))

    def to_json_dict(self) -> dict:
        return {"r": self.r, "arcs": [[t1, t2] for t1, t2 in self.arcs]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "ArcSet":
        try:
            r = float(data["r"])
            intervals = [(float(t1), float(t2)) for t1, t2 in data["arcs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed arc JSON: {exc}") from exc
        try:
            # already-normalized data loads verbatim, keeping round trips
            # bit exact
            return cls(r=r, arcs=tuple(intervals))
        except ValueError:
            return cls.from_intervals(r, intervals)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "ArcSet":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def arc_measure(arcs: ArcSet) -> float:
    """One-dimensional measure r * (total angular width)."""
    return arcs.r * sum(t2 - t1 for t1, t2 in arcs.arcs)


@dataclass(frozen=True)
class ArcCheckResult:
    holds: bool
    witness: tuple[float, float, float] | None = None


def arc_tab_check(arcs: ArcSet, n: int = 64) -> ArcCheckResult:
    """Sampled T(3,2) check on an arc set.

    Samples n evenly spaced angles per arc (left endpoints of n equal
    subdivisions, all inside the half-open arc) and searches for three
    sampled points pairwise at chord distance beyond 2. Chord distance
    exceeds 2 exactly when the circular angular gap exceeds
    2*asin(1/r), so the search reduces to finding three samples whose
    three circular gaps all clear that threshold; a greedy sweep over
    sorted samples settles existence. Needs r > 2/sqrt(3) (below that no
    triple can violate) and n >= 3. "holds" is sampled evidence; a witness
    is a genuine violating triple of angles.
    """
    if arcs.r <= 2.0 / math.sqrt(3.0):
        raise ValueError(f"arc check needs r > 2/sqrt(3), got r={arcs.r}")
    if n < 3:
        raise ValueError(f"need at least 3 samples per arc, got {n}")
    if not arcs.arcs:
        return ArcCheckResult(holds=True)
    theta_star = 2.0 * math.asin(1.0 / arcs.r)
    samples: list[float] = []
    for t1, t2 in arcs.arcs:
        width = t2 - t1
        for k in range(n):
            samples.append(t1 + width * k / n)
    samples.sort()
    m = len(samples)
    arr = samples
    for i in range(m):
        a0 = arr[i]
        j = bisect.bisect_right(arr, a0 + theta_star)
        if j >= m:
            break
        a1 = arr[j]
        k = bisect.bisect_right(arr, a1 + theta_star)
        if k >= m:
            continue
        a2 = arr[k]
        if TWO_PI - (a2 - a0) > theta_star:
            return ArcCheckResult(holds=False, witness=(a0, a1, a2))
    return ArcCheckResult(holds=True)
