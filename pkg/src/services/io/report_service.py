"""
Report Service - Assembles region reports and writes them to disk

Every file is written to a temporary sibling first and moved into place,
so a reader never sees a half-written report. Output is a pure function of
the regions and the scenario: names are sorted and no timestamps are
recorded, so repeated runs produce identical bytes.
"""
import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping

import numpy as np

from src import __version__
from src.models.types import DEFAULTS
from src.services.geometry.region_service import RateRegion, area, contains, sample_boundary, scale
from src.utils.logger import Logger


def unit_name(log_base: float) -> str:
    if log_base == 2.0:
        return "bits"
    if math.isclose(log_base, math.e):
        return "nats"
    return f"log{log_base:g}"


def perimeter(region: RateRegion) -> float:
    pts = region.as_array()
    if len(pts) < 2:
        return 0.0
    closed = np.vstack([pts, pts[:1]])
    return float(np.hypot(np.diff(closed[:, 0]), np.diff(closed[:, 1])).sum())


def _json_safe(value: Any) -> Any:
    """Plain JSON values; non-finite floats become strings"""
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return _json_safe(value.tolist())
    if isinstance(value, (list, tuple, frozenset, set)):
        return [_json_safe(v) for v in (sorted(value) if isinstance(value, (set, frozenset)) else value)]
    if isinstance(value, (np.floating, float)):
        number = float(value)
        return number if math.isfinite(number) else repr(number)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


@dataclass
class RegionReport:
    regions: Dict[str, RateRegion]
    areas: Dict[str, float]
    inclusion: Dict[str, Dict[str, bool]]
    tol: float
    unit: str
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def names(self) -> List[str]:
        return sorted(self.regions)

    @property
    def all_empty(self) -> bool:
        return all(region.empty for region in self.regions.values())

    def area_violations(self) -> List[str]:
        """Pairs where containment holds but the areas disagree beyond the tolerance band"""
        bad = []
        for a in self.names:
            for b in self.names:
                if a == b or not self.inclusion[b][a]:
                    continue
                slack = self.tol * (perimeter(self.regions[a]) + perimeter(self.regions[b])) + 1e-12
                if self.areas[a] > self.areas[b] + slack:
                    bad.append(f"{a} in {b}")
        return bad

    def to_dict(self) -> Dict[str, Any]:
        return _json_safe({
            "unit": self.unit,
            "tol": self.tol,
            "regions": {
                name: {
                    "vertices": [list(v) for v in self.regions[name].vertices],
                    "area": self.areas[name],
                    "empty": self.regions[name].empty,
                    "provenance": self.regions[name].provenance,
                }
                for name in self.names
            },
            "inclusion": {row: {col: self.inclusion[row][col] for col in self.names} for row in self.names},
            "provenance": self.provenance,
        })


class ReportService:
    """Service for comparing regions and emitting CSV, JSON and gnuplot output"""

    @staticmethod
    def compare(regions: Mapping[str, RateRegion], tol: float = DEFAULTS.INCLUSION_TOL) -> Dict[str, Dict[str, bool]]:
        """matrix[i][j] is True when region i contains region j"""
        names = sorted(regions)
        return {a: {b: contains(regions[a], regions[b], tol) for b in names} for a in names}

    @staticmethod
    def build_report(regions: Mapping[str, RateRegion], tol: float = DEFAULTS.INCLUSION_TOL,
                     log_base: float = DEFAULTS.LOG_BASE, provenance: Dict[str, Any] = None) -> RegionReport:
        factor = math.log(2.0) / math.log(log_base)
        scaled = {name: scale(region, factor) for name, region in regions.items()}
        meta = {"version": __version__}
        meta.update(provenance or {})
        return RegionReport(
            regions=scaled,
            areas={name: area(region) for name, region in scaled.items()},
            inclusion=ReportService.compare(scaled, tol),
            tol=tol,
            unit=unit_name(log_base),
            provenance=meta,
        )

    @staticmethod
    def atomic_write(path: Path, text: str) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=str(path.parent), prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
            os.replace(tmp_name, path)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        return path

    @staticmethod
    def render_csv(report: RegionReport) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["region", "vertex_index", f"R1_{report.unit}", f"R2_{report.unit}"])
        for name in report.names:
            for index, (r1, r2) in enumerate(report.regions[name].vertices):
                writer.writerow([name, index, repr(float(r1)), repr(float(r2))])
        return buffer.getvalue()

    @staticmethod
    def render_json(report: RegionReport) -> str:
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def render_gnuplot(report: RegionReport, samples: int = DEFAULTS.BOUNDARY_SAMPLES) -> str:
        """Self-contained gnuplot script drawing each region's Pareto boundary"""
        lines = [
            f"# rate regions, {report.unit} per channel use",
            f"set xlabel 'R1 ({report.unit})'",
            f"set ylabel 'R2 ({report.unit})'",
            "set key outside right",
            "set grid",
        ]
        plotted = []
        for index, name in enumerate(report.names):
            boundary = sample_boundary(report.regions[name], samples)
            if not boundary:
                continue
            block = f"$region{index}"
            lines.append(f"{block} << EOD")
            lines.extend(f"{x!r} {y!r}" for x, y in boundary)
            lines.append("EOD")
            plotted.append(f"{block} using 1:2 with lines title '{name}'")
        if plotted:
            lines.append("plot " + ", \\\n     ".join(plotted))
        return "\n".join(lines) + "\n"

    @staticmethod
    def write_report(report: RegionReport, output_dir: Path, stem: str, formats) -> Dict[str, Any]:
        """Write the requested formats; returns {'success', 'files', 'error'}"""
        renderers = {
            "csv": (ReportService.render_csv, f"{stem}_regions.csv"),
            "json": (ReportService.render_json, f"{stem}_report.json"),
            "gnuplot": (ReportService.render_gnuplot, f"{stem}_plot.gp"),
        }
        written = []
        try:
            for fmt in formats:
                render, filename = renderers[fmt]
                path = ReportService.atomic_write(Path(output_dir) / filename, render(report))
                written.append(str(path))
                Logger.info(f"📄 Wrote {path}")
            return {'success': True, 'files': written}
        except (OSError, KeyError) as error:
            Logger.error("❌ Failed to write report", error)
            return {'success': False, 'files': written, 'error': str(error)}
