"""
Main Application - Orchestrates a rate region scenario run
"""
import asyncio
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Mapping

import numpy as np

from src.models.channel import InterferenceCase
from src.models.errors import RateRegionError
from src.models.types import DEFAULTS
from src.services.gaussian.baseline_service import inner_ignore_state, outer_bound
from src.services.gaussian.bounds_service import general_region, high_state_region
from src.services.gaussian.mixed_service import mixed_region
from src.services.gaussian.strong_service import strong_region
from src.services.gaussian.sweep_service import sweep
from src.services.gaussian.weak_service import weak_region
from src.services.geometry.region_service import RateRegion, empty_region
from src.services.information.dm_region_service import dm_region
from src.services.information.scheme_loader import read_scheme_file
from src.services.information.scheme_service import (
    DmScheme,
    EncodingMode,
    embed_simultaneous,
    random_scheme,
    require_mode,
)
from src.services.io.report_service import RegionReport, ReportService
from src.services.io.scenario_service import CASE_VARIANTS, DM_REGIONS, ScenarioConfig
from src.utils.logger import Logger

_VARIANT_REGION = {
    InterferenceCase.STRONG: strong_region,
    InterferenceCase.MIXED: mixed_region,
    InterferenceCase.DEGRADED: mixed_region,
    InterferenceCase.WEAK: weak_region,
}


class RateRegionEvaluator:
    """Main application class: computes every region a scenario asks for and writes the report"""

    def __init__(self, config):
        self.config = config

    async def run_scenario(self, cfg: ScenarioConfig) -> Dict[str, Any]:
        Logger.header(f"Rate regions - {cfg.name} ({cfg.case.value} interference)")
        ch = cfg.channel
        Logger.info(f"g12={ch.g12:g} g21={ch.g21:g} P1={ch.P1:g} P2={ch.P2:g} K={ch.K:g} N1={ch.N1:g} N2={ch.N2:g}")

        try:
            Logger.step(1, f"Computing {len(cfg.regions)} region(s)...")
            static_names = [name for name in cfg.regions if not self._is_swept(name)]
            static_task = self._static_regions(cfg, static_names)
            swept_task = self._swept_regions(cfg)
            static, swept = await asyncio.gather(static_task, swept_task)
            regions = {**static, **swept}

            for name in sorted(regions):
                region = regions[name]
                if region.empty:
                    Logger.warning(f"{name}: empty ({region.provenance.get('error', 'no feasible rates')})")
                else:
                    Logger.success(f"{name}: {len(region.vertices)} vertices")

            Logger.step(2, 'Comparing regions...')
            report = ReportService.build_report(regions, tol=cfg.tol, log_base=cfg.log_base,
                                                provenance={"scenario": cfg.describe()})
            for pair in report.area_violations():
                Logger.warning(f"Inclusion {pair} disagrees with the areas")

            Logger.step(3, 'Writing report files...')
            written = ReportService.write_report(report, cfg.output_dir, cfg.name, cfg.formats)
            if not written['success']:
                return {'success': False, 'error': written['error'], 'report': report,
                        'files': written['files'], 'all_empty': report.all_empty}

            if report.all_empty:
                Logger.error('Every requested region is empty')
            else:
                Logger.success(f"Scenario {cfg.name} completed")
            return {'success': True, 'report': report, 'files': written['files'], 'all_empty': report.all_empty}

        except Exception as error:
            Logger.error('💥 Scenario run failed', error)
            return {'success': False, 'error': str(error), 'report': None, 'files': [], 'all_empty': False}

    @staticmethod
    def compare(regions: Mapping[str, RateRegion], tol: float = DEFAULTS.INCLUSION_TOL) -> Dict[str, Dict[str, bool]]:
        return ReportService.compare(regions, tol)

    @staticmethod
    def _is_swept(name: str) -> bool:
        return name == "enlarged" or name.endswith("_hull")

    def _single_region(self, cfg: ScenarioConfig, name: str, dm_scheme: DmScheme = None) -> RateRegion:
        ch = cfg.channel
        if name == "inner":
            return inner_ignore_state(ch)
        if name == "outer":
            return outer_bound(ch)
        if name == "general":
            return general_region(ch, cfg.scheme)
        if name == "high_state":
            return high_state_region(ch, cfg.scheme)
        if name == "dm_simultaneous":
            require_mode(dm_scheme, EncodingMode.SIMULTANEOUS)
            return dm_region(dm_scheme, self.config.max_alphabet)
        if name == "dm_superposition":
            if dm_scheme.mode == EncodingMode.SIMULTANEOUS:
                dm_scheme = embed_simultaneous(dm_scheme)
            return dm_region(dm_scheme, self.config.max_alphabet)
        if name in CASE_VARIANTS[cfg.case]:
            return _VARIANT_REGION[cfg.case](ch, name, **cfg.params.get(name, {}))
        raise RateRegionError(f"no computation registered for region {name!r}")

    def _load_dm_scheme(self, cfg: ScenarioConfig) -> DmScheme:
        if cfg.dm_scheme == "random":
            return random_scheme(np.random.default_rng(cfg.seed))
        return read_scheme_file(Path(cfg.dm_scheme))

    def _guarded(self, cfg: ScenarioConfig, name: str, dm_scheme: DmScheme = None) -> RateRegion:
        """Per-region failures become empty regions so the rest of the run survives"""
        try:
            return self._single_region(cfg, name, dm_scheme)
        except RateRegionError as error:
            return empty_region(region=name, error=str(error))

    async def _static_regions(self, cfg: ScenarioConfig, names: List[str]) -> Dict[str, RateRegion]:
        dm_scheme = None
        results: Dict[str, RateRegion] = {}
        if any(name in DM_REGIONS for name in names):
            try:
                dm_scheme = self._load_dm_scheme(cfg)
            except (RateRegionError, OSError) as error:
                Logger.error(f"Could not load DM scheme {cfg.dm_scheme}", error)
                for name in names:
                    if name in DM_REGIONS:
                        results[name] = empty_region(region=name, error=str(error))
                names = [name for name in names if name not in DM_REGIONS]

        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=self.config.max_workers) as executor:
            jobs = [loop.run_in_executor(executor, self._guarded, cfg, name, dm_scheme) for name in names]
            regions = await asyncio.gather(*jobs)
        results.update(zip(names, regions))
        return results

    async def _swept_regions(self, cfg: ScenarioConfig) -> Dict[str, RateRegion]:
        wanted = [name for name in cfg.regions if self._is_swept(name)]
        if not wanted:
            return {}

        found: Dict[str, RateRegion] = {}
        if "enlarged" in wanted:
            found.update(await self._guarded_sweep(cfg, cfg.families, ["enlarged"]))
        missing = [name[:-len("_hull")] for name in wanted if name != "enlarged" and name not in found]
        if missing:
            found.update(await self._guarded_sweep(cfg, missing, [f"{family}_hull" for family in missing]))
        return {name: found[name] for name in wanted}

    async def _guarded_sweep(self, cfg: ScenarioConfig, families, names: List[str]) -> Dict[str, RateRegion]:
        try:
            return await sweep(cfg.channel, cfg.grid, families, max_workers=self.config.max_workers)
        except (RateRegionError, ValueError) as error:
            Logger.error('Sweep failed', error)
            return {name: empty_region(region=name, error=str(error)) for name in names}


def summarize(report: RegionReport) -> List[str]:
    """One line per region: name, area and vertex count"""
    lines = []
    for name in report.names:
        region = report.regions[name]
        state = "empty" if region.empty else f"area {report.areas[name]:.4f} {report.unit}^2"
        lines.append(f"{name:<18} {state:<28} {len(region.vertices)} vertices")
    return lines
