"""The poisoned-pie game: place h grams of poison in a pie of radius R,
someone eats a random unit-disk bite, one gram in the bite kills.

The bite center is uniform in the concentric disk of radius R - 1 (the
bite always stays inside the pie), the bite is the closed unit disk around
that center, and lethality is the closed inequality dose >= lethal_dose.
Strategies mix point masses with an optional uniform density patch over a
pixel region; the density dose inside a bite is integrated by pixel
summation at the patch's own grid pitch.

With a single gram to place, any lethal bite-center set has diameter at
most 2: two lethal centers more than 2 apart would need disjoint unit
bites each holding a full gram.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .geometry import Point
from .regions import PixelRegion

__all__ = [
    "PointMass",
    "DensityPatch",
    "PoisonStrategy",
    "PoisonConfig",
    "KillReport",
    "validate_strategy",
    "is_lethal",
    "kill_probability",
    "lethal_region",
]

_BATCH = 1 << 17


@dataclass(frozen=True)
class PointMass:
    position: Point
    grams: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.grams) and self.grams > 0.0):
            raise ValueError(f"mass grams must be finite and > 0, got {self.grams}")


@dataclass(frozen=True)
class DensityPatch:
    """grams spread uniformly over a pixel region."""

    region: PixelRegion
    grams: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.grams) and self.grams > 0.0):
            raise ValueError(f"density grams must be finite and > 0, got {self.grams}")
        if self.region.is_empty():
            raise ValueError("density patch over an empty region")


@dataclass(frozen=True)
class PoisonStrategy:
    point_masses: tuple[PointMass, ...] = ()
    density: DensityPatch | None = None

    @property
    def total_grams(self) -> float:
        total = sum(m.grams for m in self.point_masses)
        if self.density is not None:
            total += self.density.grams
        return total

    def to_json_dict(self) -> dict:
        out: dict = {
            "masses": [[m.position.x, m.position.y, m.grams] for m in self.point_masses]
        }
        if self.density is not None:
            out["density"] = {
                "grams": self.density.grams,
                "region": self.density.region.to_json_dict(),
            }
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "PoisonStrategy":
        try:
            masses = tuple(
                PointMass(position=Point(float(x), float(y)), grams=float(g))
                for x, y, g in data.get("masses", [])
            )
            density = None
            if data.get("density") is not None:
                density = DensityPatch(
                    region=PixelRegion.from_json_dict(data["density"]["region"]),
                    grams=float(data["density"]["grams"]),
                )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed strategy JSON: {exc}") from exc
        return cls(point_masses=masses, density=density)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "PoisonStrategy":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass(frozen=True)
class PoisonConfig:
    R: float
    h_available: float
    lethal_dose: float = 1.0
    samples: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.R) and self.R > 2.0):
            raise ValueError(f"pie radius must exceed 2, got {self.R}")
        if not (math.isfinite(self.lethal_dose) and self.lethal_dose > 0.0):
            raise ValueError(f"lethal dose must be > 0, got {self.lethal_dose}")
        if not (math.isfinite(self.h_available) and self.h_available >= self.lethal_dose):
            raise ValueError(
                f"available poison {self.h_available} must be at least the "
                f"lethal dose {self.lethal_dose}"
            )
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")


def validate_strategy(strategy: PoisonStrategy, config: PoisonConfig) -> None:
    """All poison inside the closed pie, all of it placed: total grams must
    equal h_available to within 1e-9."""
    for m in strategy.point_masses:
        if math.hypot(m.position.x, m.position.y) > config.R + 1e-9:
            raise ValueError(
                f"mass at ({m.position.x}, {m.position.y}) lies outside the pie of radius {config.R}"
            )
    if strategy.density is not None:
        centers = strategy.density.region.cell_centers()
        if np.any(np.hypot(centers[:, 0], centers[:, 1]) > config.R + 1e-9):
            raise ValueError("density patch extends outside the pie")
    if abs(strategy.total_grams - config.h_available) > 1e-9:
        raise ValueError(
            f"strategy places {strategy.total_grams} grams, but h_available "
            f"is {config.h_available}; place all of it"
        )


def _dose_at(strategy: PoisonStrategy, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Poison dose inside the closed unit bite around each (x, y)."""
    dose = np.zeros(xs.shape, dtype=np.float64)
    for m in strategy.point_masses:
        hit = (xs - m.position.x) ** 2 + (ys - m.position.y) ** 2 <= 1.0
        dose += m.grams * hit
    if strategy.density is not None:
        centers = strategy.density.region.cell_centers()
        per_cell = strategy.density.grams / len(centers)
        counts = np.zeros(xs.shape, dtype=np.int64)
        chunk = max(1, (1 << 22) // max(1, len(centers)))
        flat_x = xs.ravel()
        flat_y = ys.ravel()
        flat_counts = counts.ravel()
        for lo in range(0, flat_x.size, chunk):
            hi = lo + chunk
            dx = flat_x[lo:hi, None] - centers[None, :, 0]
            dy = flat_y[lo:hi, None] - centers[None, :, 1]
            flat_counts[lo:hi] = np.sum(dx * dx + dy * dy <= 1.0, axis=1)
        dose += per_cell * flat_counts.reshape(xs.shape)
    return dose


def is_lethal(strategy: PoisonStrategy, p: Point, config: PoisonConfig) -> bool:
    """Does the bite centered at p ingest at least the lethal dose?

    p must lie in the closed sampling disk of radius R - 1.
    """
    if math.hypot(p.x, p.y) > config.R - 1.0 + 1e-9:
        raise ValueError(f"bite center ({p.x}, {p.y}) outside the disk of radius {config.R - 1}")
    dose = _dose_at(strategy, np.array([p.x]), np.array([p.y]))
    return bool(dose[0] >= config.lethal_dose)


@dataclass(frozen=True)
class KillReport:
    estimate: float
    ci95: tuple[float, float]
    samples: int
    hits: int


def _batch_hits(strategy: PoisonStrategy, config: PoisonConfig, batch_index: int, quota: int) -> int:
    """Accepted-sample hits for one seeded batch.

    Bite centers are drawn by rejection from the bounding square of the
    radius R - 1 disk; the loop tops up until the quota is met, so the
    accepted stream is a deterministic function of (seed, batch_index).
    """
    rng = np.random.default_rng([config.seed, batch_index])
    radius = config.R - 1.0
    hits = 0
    remaining = quota
    while remaining > 0:
        draw = int(remaining * 4.0 / math.pi * 1.05) + 16
        pts = rng.uniform(-radius, radius, size=(draw, 2))
        keep = pts[:, 0] ** 2 + pts[:, 1] ** 2 <= radius * radius
        accepted = pts[keep][:remaining]
        if len(accepted) == 0:
            continue
        dose = _dose_at(strategy, accepted[:, 0], accepted[:, 1])
        hits += int(np.sum(dose >= config.lethal_dose))
        remaining -= len(accepted)
    return hits


def kill_probability(
    strategy: PoisonStrategy, config: PoisonConfig, threads: int = 1
) -> KillReport:
    """Seeded Monte Carlo estimate of the probability a random bite kills.

    Samples are split into fixed batches with independent per-batch seed
    streams; the merge is a plain hit count, so the estimate is identical
    for identical seeds no matter how many workers run the batches. The
    interval is the normal-approximation 95% band.
    """
    validate_strategy(strategy, config)
    n = config.samples
    quotas = [(_BATCH if (k + 1) * _BATCH <= n else n - k * _BATCH) for k in range((n + _BATCH - 1) // _BATCH)]
    if threads > 1 and len(quotas) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hit_list = list(
                pool.map(lambda kq: _batch_hits(strategy, config, kq[0], kq[1]), enumerate(quotas))
            )
    else:
        hit_list = [_batch_hits(strategy, config, k, q) for k, q in enumerate(quotas)]
    hits = int(sum(hit_list))
    p_hat = hits / n
    se = math.sqrt(p_hat * (1.0 - p_hat) / n)
    ci = (max(0.0, p_hat - 1.96 * se), min(1.0, p_hat + 1.96 * se))
    return KillReport(estimate=p_hat, ci95=ci, samples=n, hits=hits)


def lethal_region(strategy: PoisonStrategy, config: PoisonConfig, h_grid: float) -> PixelRegion:
    """Center-sampled raster of the lethal bite-center set.

    A cell belongs to the region when its center lies in the sampling disk
    of radius R - 1 and the bite at the center is lethal.
    """
    validate_strategy(strategy, config)
    if not (math.isfinite(h_grid) and h_grid > 0.0):
        raise ValueError(f"grid pitch must be > 0, got {h_grid}")
    radius = config.R - 1.0
    lo = math.floor(-radius / h_grid) - 1
    hi = math.ceil(radius / h_grid) + 1
    ii = np.arange(lo, hi + 1, dtype=np.int64)
    cx = (ii + 0.5) * h_grid
    gx, gy = np.meshgrid(cx, cx, indexing="ij")
    inside = gx * gx + gy * gy <= radius * radius
    dose = _dose_at(strategy, gx, gy)
    mask = inside & (dose >= config.lethal_dose)
    si, sj = np.nonzero(mask)
    cells = frozenset(zip(ii[si].tolist(), ii[sj].tolist()))
    return PixelRegion(origin=Point(0.0, 0.0), h=h_grid, cells=cells)
