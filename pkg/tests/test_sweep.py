"""
Parameter sweeps: grids, per-family hulls and the enlarged regions
"""
import asyncio
import math

import numpy as np
import pytest

from src.models.channel import StdChannel
from src.services.gaussian.baseline_service import corner_points, inner_ignore_state, outer_bound
from src.services.gaussian.strong_service import StrongVariant, strong_region
from src.services.gaussian.sweep_service import (
    SweepGrid,
    enlarged_region,
    enlarged_region_sync,
    pentagon_vertices,
    sweep,
)
from src.services.gaussian.weak_service import WeakVariant, weak_region
from src.services.geometry.region_service import area, contains, hull, pentagon, regions_equal, transpose
from src.services.model.channel_service import swap_channel, with_state

STRONG = StdChannel(g12=10.0, g21=10.0, P1=10.0, P2=10.0, K=10.0)
MIXED = StdChannel(g12=0.2, g21=2.0, P1=10.0, P2=10.0, K=10.0)
WEAK = StdChannel(g12=0.2, g21=0.2, P1=10.0, P2=10.0, K=10.0)
DEGRADED = StdChannel(g12=0.2, g21=5.0, P1=10.0, P2=10.0, K=10.0)
SMALL = SweepGrid.uniform(5)
FINE = SweepGrid.uniform(9)


def enlarged(ch, grid=SMALL, families=None):
    return enlarged_region_sync(ch, grid, families, max_workers=2)


def test_pentagon_vertices_skip_invalid_points():
    points = pentagon_vertices(np.array([1.0, np.nan]), np.array([1.0, 1.0]), np.array([1.5, 1.0]))
    got = {tuple(p) for p in points.tolist()}
    assert {(0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 1.0)} <= got
    assert len(points) == 5
    assert pentagon_vertices(np.array([-1.0]), np.array([1.0]), np.array([1.0])).shape == (0, 2)


def test_gamma_axis_stays_inside_the_budget():
    axis = SweepGrid.uniform(4).gamma_axis(10.0, 10.0)
    assert 0.0 in axis
    assert len(axis) == 5
    assert np.all(axis ** 2 * 10.0 < 10.0)
    assert np.array_equal(SMALL.gamma_axis(10.0, 0.0), np.zeros(1))
    assert np.array_equal(SweepGrid.uniform(1).gamma_axis(10.0, 10.0), np.zeros(1))


def test_grid_validation():
    with pytest.raises(ValueError):
        SweepGrid(gamma_points=0)
    with pytest.raises(ValueError):
        SweepGrid(gamma_fraction=1.0)
    assert SMALL.describe()["beta_points"] == 5
    assert math.isclose(float(FINE.beta_axis()[4]), 0.5)


def test_stateless_strong_sweep_is_the_mac_pentagon():
    region = enlarged(with_state(STRONG, 0.0))
    expected = pentagon(0.5 * math.log2(11.0), 0.5 * math.log2(11.0), 0.5 * math.log2(111.0))
    assert regions_equal(region, expected, tol=1e-9)


@pytest.mark.parametrize("ch", [STRONG, MIXED, WEAK])
def test_refining_the_grid_never_shrinks_the_region(ch):
    assert contains(enlarged(ch, FINE), enlarged(ch, SMALL), tol=1e-9)


def test_mixed_sweep_is_symmetric_under_user_exchange():
    assert regions_equal(enlarged(swap_channel(MIXED)), transpose(enlarged(MIXED)), tol=1e-9)


def test_sweep_reports_family_hulls():
    results = asyncio.run(sweep(WEAK, SMALL, max_workers=2, chunk_size=7))
    assert set(results) == {"aic_rx1_hull", "aic_rx2_hull", "split_rx1_hull", "split_rx2_hull", "enlarged"}
    assert results["enlarged"].provenance["case"] == "weak"
    for name, region in results.items():
        assert contains(results["enlarged"], region, tol=1e-9), name


def test_chunking_does_not_change_the_result():
    coarse = asyncio.run(enlarged_region(STRONG, SMALL, max_workers=1, chunk_size=4096))
    fine = asyncio.run(enlarged_region(STRONG, SMALL, max_workers=3, chunk_size=3))
    assert regions_equal(coarse, fine, tol=1e-9)


def test_unknown_family_is_rejected():
    with pytest.raises(ValueError):
        asyncio.run(sweep(STRONG, SMALL, families=["split_rx1"]))


def test_strong_regions_nest():
    dpc = hull([strong_region(STRONG, StrongVariant.DPC_RX1), strong_region(STRONG, StrongVariant.DPC_RX2)]
               + corner_points(STRONG))
    swept = enlarged(STRONG, FINE)
    assert contains(dpc, inner_ignore_state(STRONG), tol=1e-6)
    assert contains(swept, dpc, tol=1e-6)
    assert contains(outer_bound(STRONG), swept, tol=1e-6)
    assert area(swept) > 1.01 * area(dpc)


@pytest.mark.parametrize("ch", [STRONG, MIXED, DEGRADED, WEAK])
def test_inner_bound_lies_inside_the_enlarged_region(ch):
    assert contains(enlarged(ch), inner_ignore_state(ch), tol=1e-6)


def test_power_splitting_beats_cancellation_in_weak_interference():
    fixed = hull([weak_region(WEAK, WeakVariant.FIXED_RX1), weak_region(WEAK, WeakVariant.FIXED_RX2)]
                 + corner_points(WEAK))
    split = enlarged(WEAK, FINE, families=["split_rx1", "split_rx2"])
    cancelling = enlarged(WEAK, FINE, families=["aic_rx1", "aic_rx2"])
    assert contains(split, fixed, tol=1e-6)
    assert contains(cancelling, fixed, tol=1e-6)
    assert area(split) > 1.01 * area(fixed)
    assert area(cancelling) - area(fixed) < area(split) - area(fixed)
