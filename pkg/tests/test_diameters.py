import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isodiam.diameters import (
    BudgetExceededError,
    diam,
    diam3,
    diam_ab,
    diameter_report,
    tab_check,
    triameter,
)
from isodiam.geometry import PointSet

coord = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False)
small_sets = st.lists(st.tuples(coord, coord), min_size=3, max_size=8).map(PointSet.from_xy)


def brute_diam3(s: PointSet) -> float:
    """sup over triples of the min pairwise distance, by full enumeration."""
    best = 0.0
    pts = list(s)
    for a, b, c in itertools.combinations(pts, 3):
        m = min(
            math.dist((a.x, a.y), (b.x, b.y)),
            math.dist((a.x, a.y), (c.x, c.y)),
            math.dist((b.x, b.y), (c.x, c.y)),
        )
        best = max(best, m)
    return best


def brute_diam_ab(s: PointSet, a: int, b: int) -> float:
    pts = [(p.x, p.y) for p in s]
    if len(pts) < a:
        return 0.0
    best = 0.0
    for sub in itertools.combinations(pts, a):
        inner = min(
            max(math.dist(p, q) for p, q in itertools.combinations(bsub, 2))
            for bsub in itertools.combinations(sub, b)
        )
        best = max(best, inner)
    return best


def test_diam_basics():
    assert diam(PointSet.from_xy([(0, 0)])) == 0.0
    assert diam(PointSet.from_xy([(0, 0), (3, 4)])) == 5.0
    with pytest.raises(ValueError):
        diam(PointSet([]))


def test_diam3_unit_square():
    s = PointSet.from_xy([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert diam3(s) == pytest.approx(1.0, abs=1e-12)


def test_diam3_small_sets():
    assert diam3(PointSet.from_xy([(0, 0), (5, 5)])) == 0.0
    s = PointSet.from_xy([(0, 0), (2, 0), (1, math.sqrt(3))])  # equilateral side 2
    assert diam3(s) == pytest.approx(2.0, abs=1e-12)


def test_diam3_matches_bruteforce_seeded():
    rng = np.random.default_rng(11)
    for _ in range(150):
        n = int(rng.integers(3, 10))
        s = PointSet.from_xy([tuple(r) for r in rng.uniform(-4, 4, size=(n, 2))])
        assert diam3(s) == pytest.approx(brute_diam3(s), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(small_sets)
def test_diam3_at_most_diam(s):
    assert diam3(s) <= diam(s) + 1e-9


def test_diam_ab_32_is_diam3():
    rng = np.random.default_rng(3)
    for _ in range(40):
        s = PointSet.from_xy([tuple(r) for r in rng.uniform(0, 3, size=(7, 2))])
        assert diam_ab(s, 3, 2) == pytest.approx(diam3(s), abs=1e-12)


def test_diam_ab_matches_bruteforce():
    rng = np.random.default_rng(19)
    for a, b in ((3, 2), (4, 2), (4, 3), (5, 3)):
        for _ in range(25):
            n = int(rng.integers(a, 9))
            s = PointSet.from_xy([tuple(r) for r in rng.uniform(-2, 2, size=(n, 2))])
            assert diam_ab(s, a, b) == pytest.approx(brute_diam_ab(s, a, b), abs=1e-9)


def test_diam_ab_short_set_is_zero():
    s = PointSet.from_xy([(0, 0), (1, 0)])
    assert diam_ab(s, 4, 2) == 0.0


def test_diam_ab_monotone_in_b():
    rng = np.random.default_rng(23)
    for _ in range(20):
        s = PointSet.from_xy([tuple(r) for r in rng.uniform(0, 4, size=(8, 2))])
        assert diam_ab(s, 5, 2) <= diam_ab(s, 5, 3) + 1e-12
        assert diam_ab(s, 5, 3) <= diam_ab(s, 5, 4) + 1e-12


def test_validate_ab():
    s = PointSet.from_xy([(0, 0), (1, 0), (2, 0)])
    for a, b in ((2, 2), (3, 1), (2, 3), (3, 3)):
        with pytest.raises(ValueError):
            diam_ab(s, a, b)


def test_budget_guard():
    s = PointSet.from_xy([(i, 0) for i in range(30)])
    with pytest.raises(BudgetExceededError) as exc:
        diam_ab(s, 10, 2, budget=1000)
    assert exc.value.required == math.comb(30, 10)
    assert exc.value.budget == 1000
    # BudgetExceededError is a ValueError so CLI-level handling stays simple
    assert isinstance(exc.value, ValueError)


def test_tab_check_agrees_with_diam_ab():
    rng = np.random.default_rng(31)
    for _ in range(60):
        n = int(rng.integers(4, 9))
        s = PointSet.from_xy([tuple(r) for r in rng.uniform(0, 4, size=(n, 2))])
        a, b = (3, 2) if rng.integers(0, 2) else (4, 3)
        value = diam_ab(s, a, b)
        for t in (value - 1e-6, value + 1e-6):
            if t < 0:
                continue
            res = tab_check(s, a, b, t)
            assert res.holds == (value <= t)
            if not res.holds:
                assert res.witness is not None
                pts = res.witness_points(s)
                # every b-subset of the witness realises a distance beyond t
                for bsub in itertools.combinations(pts, b):
                    assert max(
                        math.dist((p.x, p.y), (q.x, q.y))
                        for p, q in itertools.combinations(bsub, 2)
                    ) > t


def test_tab_check_vacuous_when_short():
    s = PointSet.from_xy([(0, 0), (10, 0)])
    assert tab_check(s, 3, 2, 0.1).holds


def test_tab_check_fast_path_matches_generic():
    """b=2 runs a dedicated clique scan; its verdict and witness must agree
    with the generic subset walk."""
    from isodiam.diameters import _first_violating_generic, _distance_matrix

    rng = np.random.default_rng(41)
    for _ in range(40):
        n = int(rng.integers(4, 10))
        coords = rng.uniform(0, 4, size=(n, 2))
        s = PointSet.from_xy([tuple(r) for r in coords])
        t = float(rng.uniform(0.5, 4.0))
        a = int(rng.integers(3, 5))
        res = tab_check(s, a, 2, t)
        D = _distance_matrix(coords)
        generic = _first_violating_generic(D, n, a, 2, t)
        assert res.holds == (generic is None)
        if generic is not None:
            assert res.witness == generic


def test_tab_check_threshold_validation():
    s = PointSet.from_xy([(0, 0), (1, 0), (2, 0)])
    with pytest.raises(ValueError):
        tab_check(s, 3, 2, -1.0)
    with pytest.raises(ValueError):
        tab_check(s, 3, 2, float("nan"))


def test_triameter_known_values():
    equi = PointSet.from_xy([(0, 0), (2, 0), (1, math.sqrt(3))])
    assert triameter(equi) == pytest.approx(math.sqrt(3), abs=1e-12)
    line = PointSet.from_xy([(0, 0), (1, 0), (2, 0), (3, 0)])
    assert triameter(line) == 0.0
    assert triameter(PointSet.from_xy([(0, 0), (1, 0)])) == 0.0


def test_triameter_matches_bruteforce():
    rng = np.random.default_rng(43)
    for _ in range(50):
        n = int(rng.integers(3, 10))
        pts = rng.uniform(-3, 3, size=(n, 2))
        s = PointSet.from_xy([tuple(r) for r in pts])
        best = 0.0
        for i, j, k in itertools.combinations(range(n), 3):
            ab = pts[j] - pts[i]
            ac = pts[k] - pts[i]
            best = max(best, abs(ab[0] * ac[1] - ab[1] * ac[0]) / 2.0)
        assert triameter(s) == pytest.approx(best, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(small_sets)
def test_triameter_bounded_by_diam(s):
    # the equilateral triangle maximises area at fixed diameter
    d = diam(s)
    assert triameter(s) <= math.sqrt(3) / 4 * d * d + 1e-9


def test_diameter_report_bundles():
    s = PointSet.from_xy([(0, 0), (2, 0), (1, math.sqrt(3)), (1, 0.5)])
    rep = diameter_report(s, ab_pairs=[(3, 2), (4, 3)])
    assert rep.diam == pytest.approx(diam(s))
    assert rep.diam3 == pytest.approx(diam3(s))
    assert rep.triameter == pytest.approx(triameter(s))
    assert rep.ab_entries[0] == (3, 2, pytest.approx(diam3(s)))
    assert rep.ab_entries[1][:2] == (4, 3)
