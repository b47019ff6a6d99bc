import math

import numpy as np
import pytest

from isodiam.geometry import Point
from isodiam.poisoning import (
    DensityPatch,
    PointMass,
    PoisonConfig,
    PoisonStrategy,
    is_lethal,
    kill_probability,
    lethal_region,
    validate_strategy,
)
from isodiam.regions import Disk, rasterize, region_diam


def central(grams: float) -> PoisonStrategy:
    return PoisonStrategy(point_masses=(PointMass(Point(0.0, 0.0), grams),))


def test_config_validation():
    with pytest.raises(ValueError):
        PoisonConfig(R=2.0, h_available=1.0)  # pie too small for a bite
    with pytest.raises(ValueError):
        PoisonConfig(R=3.0, h_available=0.5)  # less poison than one dose
    with pytest.raises(ValueError):
        PoisonConfig(R=3.0, h_available=1.0, lethal_dose=0.0)
    with pytest.raises(ValueError):
        PoisonConfig(R=3.0, h_available=1.0, samples=0)


def test_strategy_total_and_validation():
    cfg = PoisonConfig(R=3.0, h_available=1.5)
    strat = PoisonStrategy(
        point_masses=(PointMass(Point(1.0, 0.0), 1.0), PointMass(Point(-1.0, 0.0), 0.5))
    )
    assert strat.total_grams == pytest.approx(1.5)
    validate_strategy(strat, cfg)
    with pytest.raises(ValueError):
        validate_strategy(central(1.0), cfg)  # grams must match the supply
    outside = PoisonStrategy(point_masses=(PointMass(Point(4.0, 0.0), 1.5),))
    with pytest.raises(ValueError):
        validate_strategy(outside, cfg)


def test_point_mass_validation():
    with pytest.raises(ValueError):
        PointMass(Point(0, 0), 0.0)
    with pytest.raises(ValueError):
        PointMass(Point(0, 0), -1.0)


def test_strategy_json_round_trip(tmp_path):
    patch = DensityPatch(
        region=rasterize(Disk(center=Point(0.5, 0.0), radius=0.4), 0.1),
        grams=0.5,
    )
    strat = PoisonStrategy(
        point_masses=(PointMass(Point(0.25, -0.125), 1.0),),
        density=patch,
    )
    path = tmp_path / "strategy.json"
    strat.save(path)
    back = PoisonStrategy.load(path)
    assert back == strat
    assert back.total_grams == pytest.approx(1.5)


def test_is_lethal_geometry():
    cfg = PoisonConfig(R=3.0, h_available=1.0)
    strat = central(1.0)
    assert is_lethal(strat, Point(0.5, 0.0), cfg)
    assert is_lethal(strat, Point(1.0, 0.0), cfg)  # bite boundary is closed
    assert not is_lethal(strat, Point(1.2, 0.0), cfg)
    with pytest.raises(ValueError):
        is_lethal(strat, Point(2.5, 0.0), cfg)  # bites stay inside the pie


def test_is_lethal_requires_full_dose():
    cfg = PoisonConfig(R=3.0, h_available=1.0)
    strat = PoisonStrategy(
        point_masses=(PointMass(Point(0.0, 0.0), 0.6), PointMass(Point(1.8, 0.0), 0.4))
    )
    assert not is_lethal(strat, Point(0.0, 0.0), cfg)  # 0.6 g only
    assert is_lethal(strat, Point(0.9, 0.0), cfg)  # collects both masses


def test_kill_probability_central_quarter():
    cfg = PoisonConfig(R=3.0, h_available=1.0, samples=200_000, seed=0)
    rep = kill_probability(central(1.0), cfg)
    lo, hi = rep.ci95
    assert lo <= 0.25 <= hi
    assert rep.samples == 200_000
    assert rep.estimate == pytest.approx(0.25, abs=0.01)


def test_kill_probability_two_masses():
    cfg = PoisonConfig(R=4.0, h_available=2.0, samples=200_000, seed=3)
    strat = PoisonStrategy(
        point_masses=(PointMass(Point(-1.5, 0.0), 1.0), PointMass(Point(1.5, 0.0), 1.0))
    )
    rep = kill_probability(strat, cfg)
    lo, hi = rep.ci95
    assert lo <= 2.0 / 9.0 <= hi


def test_kill_probability_deterministic_and_thread_invariant():
    cfg = PoisonConfig(R=3.0, h_available=1.0, samples=300_000, seed=11)
    a = kill_probability(central(1.0), cfg)
    b = kill_probability(central(1.0), cfg)
    c = kill_probability(central(1.0), cfg, threads=4)
    assert a.hits == b.hits == c.hits
    other = kill_probability(
        central(1.0), PoisonConfig(R=3.0, h_available=1.0, samples=300_000, seed=12)
    )
    assert other.hits != a.hits


def test_kill_probability_ci_shrinks():
    small = kill_probability(central(1.0), PoisonConfig(R=3.0, h_available=1.0, samples=10_000))
    large = kill_probability(central(1.0), PoisonConfig(R=3.0, h_available=1.0, samples=640_000))
    assert (large.ci95[1] - large.ci95[0]) < (small.ci95[1] - small.ci95[0])


def test_density_patch_dose():
    # all poison spread over a small patch: a bite centered on the patch
    # swallows it whole, a far bite gets nothing
    cfg = PoisonConfig(R=3.0, h_available=1.0)
    patch = DensityPatch(
        region=rasterize(Disk(center=Point(0.0, 0.0), radius=0.3), 0.05),
        grams=1.0,
    )
    strat = PoisonStrategy(point_masses=(), density=patch)
    validate_strategy(strat, cfg)
    assert is_lethal(strat, Point(0.0, 0.0), cfg)
    assert not is_lethal(strat, Point(1.9, 0.0), cfg)


def test_lethal_region_central():
    cfg = PoisonConfig(R=3.0, h_available=1.0)
    h = 0.05
    region = lethal_region(central(1.0), cfg, h)
    assert abs(region.measure - math.pi) < 10 * h
    assert region_diam(region) <= 2.0 + 2 * h * math.sqrt(2)


def test_lethal_region_empty_when_spread_thin():
    cfg = PoisonConfig(R=4.0, h_available=1.0)
    strat = PoisonStrategy(
        point_masses=(PointMass(Point(-2.5, 0.0), 0.5), PointMass(Point(2.5, 0.0), 0.5))
    )
    region = lethal_region(strat, cfg, 0.1)
    assert region.is_empty()


def test_lethal_region_diameter_cap_when_supply_is_short():
    """With less than two doses on the pie no two lethal bite centers can
    sit farther than 2 apart, whatever the placement."""
    rng = np.random.default_rng(17)
    h = 0.05
    for _ in range(15):
        R = float(rng.uniform(2.5, 4.0))
        cfg = PoisonConfig(R=R, h_available=1.5)
        k = int(rng.integers(1, 4))
        weights = rng.dirichlet(np.ones(k)) * 1.5
        radius = float(rng.uniform(0.0, R - 1.0))
        masses = []
        for w in weights:
            ang = float(rng.uniform(0, 2 * math.pi))
            rad = float(rng.uniform(0, radius)) if radius > 0 else 0.0
            masses.append(PointMass(Point(rad * math.cos(ang), rad * math.sin(ang)), float(w)))
        strat = PoisonStrategy(point_masses=tuple(masses))
        validate_strategy(strat, cfg)
        region = lethal_region(strat, cfg, h)
        if not region.is_empty():
            assert region_diam(region) <= 2.0 + 2 * h * math.sqrt(2)
