"""
Sweep Service - time-sharing hulls over scheme parameter grids

Every family evaluates its closed-form caps over the whole grid at once,
one chunk per executor job; each chunk is reduced to the hull of its
pentagon vertices and the chunk hulls are merged. Hull union is
associative and commutative, so the schedule does not change the result.
"""
import asyncio
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.models.channel import InterferenceCase, StdChannel
from src.models.types import DEFAULTS
from src.services.gaussian.baseline_service import corner_points
from src.services.gaussian.mixed_service import is_canonical, mixed_bounds
from src.services.gaussian.strong_service import strong_bounds
from src.services.gaussian.weak_service import fixed_private_powers, weak_bounds
from src.services.geometry.region_service import RateRegion, hull, transpose
from src.services.model.channel_service import classify, swap_channel
from src.utils.logger import Logger

CASE_FAMILIES: Dict[InterferenceCase, Tuple[str, ...]] = {
    InterferenceCase.STRONG: ("aic_rx1", "aic_rx2"),
    InterferenceCase.MIXED: ("dpc_p2p", "aic_p2p", "aic_rx2"),
    InterferenceCase.DEGRADED: ("dpc_p2p", "aic_p2p", "aic_rx2"),
    InterferenceCase.WEAK: ("aic_rx1", "aic_rx2", "split_rx1", "split_rx2"),
}


@dataclass(frozen=True)
class SweepGrid:
    gamma_points: int = DEFAULTS.GRID_POINTS
    alpha22_points: int = DEFAULTS.GRID_POINTS
    beta_points: int = DEFAULTS.GRID_POINTS
    gamma_fraction: float = DEFAULTS.GAMMA_FRACTION
    alpha22_range: Tuple[float, float] = field(default=DEFAULTS.ALPHA22_RANGE)
    beta_edge: float = DEFAULTS.BETA_EDGE

    def __post_init__(self):
        for name in ("gamma_points", "alpha22_points", "beta_points"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if not 0.0 < self.gamma_fraction < 1.0:
            raise ValueError("gamma_fraction must lie in (0, 1)")
        if not 0.0 < self.beta_edge < 0.5:
            raise ValueError("beta_edge must lie in (0, 0.5)")

    @classmethod
    def uniform(cls, points: int) -> "SweepGrid":
        return cls(gamma_points=points, alpha22_points=points, beta_points=points)

    def gamma_axis(self, budget: float, K: float) -> np.ndarray:
        """Symmetric cancellation grid with gamma^2 K < budget; always contains 0"""
        if self.gamma_points == 1 or K <= 0.0 or budget <= 0.0:
            return np.zeros(1)
        limit = np.sqrt(self.gamma_fraction * budget / K)
        return np.union1d(np.linspace(-limit, limit, self.gamma_points), [0.0])

    def alpha22_axis(self) -> np.ndarray:
        if self.alpha22_points == 1:
            return np.zeros(1)
        return np.linspace(self.alpha22_range[0], self.alpha22_range[1], self.alpha22_points)

    def beta_axis(self) -> np.ndarray:
        if self.beta_points == 1:
            return np.full(1, 0.5)
        return np.linspace(self.beta_edge, 1.0 - self.beta_edge, self.beta_points)

    def describe(self) -> Dict[str, object]:
        return {
            "gamma_points": self.gamma_points,
            "alpha22_points": self.alpha22_points,
            "beta_points": self.beta_points,
            "gamma_fraction": self.gamma_fraction,
            "alpha22_range": list(self.alpha22_range),
            "beta_edge": self.beta_edge,
        }


BoundsFn = Callable[..., Tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclass
class _Family:
    name: str
    bounds: BoundsFn
    axes: Dict[str, np.ndarray]

    def parameter_mesh(self) -> Dict[str, np.ndarray]:
        names = list(self.axes)
        mesh = np.meshgrid(*(self.axes[n] for n in names), indexing="ij")
        return {n: m.ravel() for n, m in zip(names, mesh)}

    @property
    def size(self) -> int:
        return int(np.prod([len(axis) for axis in self.axes.values()]))


def pentagon_vertices(r1: np.ndarray, r2: np.ndarray, sum_rate: np.ndarray) -> np.ndarray:
    """Corner points of every valid pentagon {R1 <= r1, R2 <= r2, R1+R2 <= sum}, stacked"""
    r1, r2, sum_rate = np.broadcast_arrays(r1, r2, sum_rate)
    valid = np.isfinite(r1) & np.isfinite(r2) & np.isfinite(sum_rate)
    valid &= (r1 >= 0.0) & (r2 >= 0.0) & (sum_rate >= 0.0)
    a = np.minimum(r1[valid], sum_rate[valid])
    b = np.minimum(r2[valid], sum_rate[valid])
    s = sum_rate[valid]
    zeros = np.zeros_like(a)
    points = np.concatenate([
        np.column_stack([a, zeros]),
        np.column_stack([a, np.minimum(b, s - a)]),
        np.column_stack([np.minimum(a, s - b), b]),
        np.column_stack([zeros, b]),
    ])
    return np.vstack([np.zeros((1, 2)), points]) if len(a) else np.empty((0, 2))


def _evaluate_chunk(bounds: BoundsFn, params: Dict[str, np.ndarray]) -> RateRegion:
    r1, r2, sum_rate = bounds(**params)
    points = pentagon_vertices(r1, r2, sum_rate)
    if len(points) == 0:
        return RateRegion()
    return hull(map(tuple, points.tolist()))


def _families(ch: StdChannel, grid: SweepGrid, case: InterferenceCase) -> Dict[str, _Family]:
    """Families in the orientation the formulas are written for"""
    if case is InterferenceCase.STRONG:
        axes = {"gamma1": grid.gamma_axis(ch.P1, ch.K), "gamma2": grid.gamma_axis(ch.P2, ch.K)}
        return {
            "aic_rx1": _Family("aic_rx1", lambda gamma1, gamma2: strong_bounds(ch, gamma1, gamma2, 1), axes),
            "aic_rx2": _Family("aic_rx2", lambda gamma1, gamma2: strong_bounds(ch, gamma1, gamma2, 2), axes),
        }

    if case in (InterferenceCase.MIXED, InterferenceCase.DEGRADED):
        gammas = {"gamma1": grid.gamma_axis(ch.P1, ch.K), "gamma2": grid.gamma_axis(ch.P2, ch.K)}
        return {
            "dpc_p2p": _Family("dpc_p2p", lambda alpha22: mixed_bounds(ch, True, alpha22),
                               {"alpha22": grid.alpha22_axis()}),
            "aic_p2p": _Family("aic_p2p",
                               lambda alpha22, gamma1, gamma2: mixed_bounds(ch, True, alpha22, gamma1, gamma2),
                               {"alpha22": grid.alpha22_axis(), **gammas}),
            "aic_rx2": _Family("aic_rx2",
                               lambda gamma1, gamma2: mixed_bounds(ch, False, 0.0, gamma1, gamma2), gammas),
        }

    pb1, pb2 = fixed_private_powers(ch)
    gammas = {"gamma1": grid.gamma_axis(ch.P1 - pb1, ch.K), "gamma2": grid.gamma_axis(ch.P2 - pb2, ch.K)}
    betas = {"beta1": grid.beta_axis(), "beta2": grid.beta_axis()}
    families = {}
    for target in (1, 2):
        families[f"aic_rx{target}"] = _Family(
            f"aic_rx{target}",
            lambda gamma1, gamma2, t=target: weak_bounds(ch, pb1, pb2, gamma1, gamma2, t),
            gammas,
        )
        families[f"split_rx{target}"] = _Family(
            f"split_rx{target}",
            lambda beta1, beta2, t=target: weak_bounds(ch, beta1 * ch.P1, beta2 * ch.P2, 0.0, 0.0, t),
            betas,
        )
    return families


def _chunks(mesh: Dict[str, np.ndarray], size: int, chunk_size: int) -> List[Dict[str, np.ndarray]]:
    return [
        {name: values[start:start + chunk_size] for name, values in mesh.items()}
        for start in range(0, size, chunk_size)
    ]


async def _family_hull(family: _Family, executor: ThreadPoolExecutor, chunk_size: int) -> RateRegion:
    loop = asyncio.get_running_loop()
    chunks = _chunks(family.parameter_mesh(), family.size, chunk_size)
    jobs = [loop.run_in_executor(executor, _evaluate_chunk, family.bounds, chunk) for chunk in chunks]
    parts = []
    for done, job in enumerate(asyncio.as_completed(jobs), start=1):
        parts.append(await job)
        Logger.progress(done, len(jobs), f"{family.name}")
    region = hull(parts)
    return region.with_provenance(scheme=family.name, grid_size=family.size)


async def sweep(ch: StdChannel, grid: Optional[SweepGrid] = None, families: Optional[Sequence[str]] = None,
                max_workers: int = DEFAULTS.MAX_WORKERS, chunk_size: int = DEFAULTS.CHUNK_SIZE
                ) -> Dict[str, RateRegion]:
    """Per-family hulls keyed "<family>_hull" plus the case-wide "enlarged" region"""
    grid = grid or SweepGrid()
    case = classify(ch)
    swapped = case in (InterferenceCase.MIXED, InterferenceCase.DEGRADED) and not is_canonical(ch)
    work = swap_channel(ch) if swapped else ch

    available = _families(work, grid, case)
    selected = list(families) if families else list(CASE_FAMILIES[case])
    unknown = [name for name in selected if name not in available]
    if unknown:
        raise ValueError(f"families {unknown} are not defined for the {case.value} case")

    Logger.info(f"Sweeping {', '.join(selected)} for the {case.value} case")
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        hulls = await asyncio.gather(*(_family_hull(available[name], executor, chunk_size) for name in selected))

    results: Dict[str, RateRegion] = {}
    for name, region in zip(selected, hulls):
        results[f"{name}_hull"] = transpose(region) if swapped else region

    enlarged = hull(list(results.values()) + corner_points(ch))
    results["enlarged"] = enlarged.with_provenance(case=case.value, families=selected, grid=grid.describe())
    return results


async def enlarged_region(ch: StdChannel, grid: Optional[SweepGrid] = None,
                          families: Optional[Sequence[str]] = None, **kwargs) -> RateRegion:
    results = await sweep(ch, grid, families, **kwargs)
    return results["enlarged"]


def enlarged_region_sync(ch: StdChannel, grid: Optional[SweepGrid] = None,
                         families: Optional[Sequence[str]] = None, **kwargs) -> RateRegion:
    """Blocking wrapper for callers without an event loop"""
    return asyncio.run(enlarged_region(ch, grid, families, **kwargs))
