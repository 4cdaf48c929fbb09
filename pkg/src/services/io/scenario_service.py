"""
Scenario Service - Parses and validates scenario configurations
"""
import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from config.config import Config, config
from src.models.channel import InterferenceCase, RawChannel, SchemeParams, StdChannel
from src.models.errors import RateRegionError, ScenarioConfigError
from src.models.types import DEFAULTS, PATHS
from src.services.gaussian.mixed_service import MixedVariant
from src.services.gaussian.strong_service import StrongVariant
from src.services.gaussian.sweep_service import CASE_FAMILIES, SweepGrid
from src.services.gaussian.weak_service import WeakVariant
from src.services.model.channel_service import classify, db_to_linear, standardize, validate_channel

CASE_VARIANTS = {
    InterferenceCase.STRONG: [v.value for v in StrongVariant],
    InterferenceCase.MIXED: [v.value for v in MixedVariant],
    InterferenceCase.DEGRADED: [v.value for v in MixedVariant],
    InterferenceCase.WEAK: [v.value for v in WeakVariant],
}
COMMON_REGIONS = ("inner", "outer", "enlarged", "general", "high_state")
DM_REGIONS = ("dm_simultaneous", "dm_superposition")
SUPPORTED_FORMATS = ("csv", "json", "gnuplot")
VARIANT_PARAMETERS = {
    InterferenceCase.STRONG: ("gamma1", "gamma2"),
    InterferenceCase.MIXED: ("alpha22", "gamma1", "gamma2"),
    InterferenceCase.DEGRADED: ("alpha22", "gamma1", "gamma2"),
    InterferenceCase.WEAK: ("gamma1", "gamma2", "beta1", "beta2"),
}

_STD_FIELDS = ("g12", "g21", "P1", "P2", "K", "N1", "N2")
_RAW_FIELDS = ("h11", "h12", "h21", "h22", "N1", "N2", "P1_raw", "P2_raw", "K")
_DB_FIELDS = ("P1", "P2", "K", "P1_raw", "P2_raw")

# Reference scenarios: N1 = N2 = 1, P1 = P2 = K = 10 dB
PRESETS: Dict[str, Dict[str, Any]] = {
    "fig4": {
        "channel": {"g12": 10.0, "g21": 10.0, "P1_db": 10.0, "P2_db": 10.0, "K_db": 10.0},
        "regions": ["inner", "dpc_rx1", "dpc_rx2", "aic_rx1_hull", "aic_rx2_hull", "enlarged", "outer"],
    },
    "fig5": {
        "channel": {"g12": 0.2, "g21": 2.0, "P1_db": 10.0, "P2_db": 10.0, "K_db": 10.0},
        "regions": ["inner", "dpc_p2p_hull", "dpc_rx2", "aic_p2p_hull", "aic_rx2_hull", "enlarged", "outer"],
    },
    "fig6": {
        "channel": {"g12": 0.2, "g21": 5.0, "P1_db": 10.0, "P2_db": 10.0, "K_db": 10.0},
        "regions": ["inner", "dpc_p2p_hull", "dpc_rx2", "aic_p2p_hull", "aic_rx2_hull", "enlarged", "outer"],
    },
    "fig7": {
        "channel": {"g12": 0.2, "g21": 0.2, "P1_db": 10.0, "P2_db": 10.0, "K_db": 10.0},
        "regions": ["inner", "fixed_rx1", "fixed_rx2", "aic_rx1_hull", "aic_rx2_hull", "enlarged", "outer"],
        "families": ["aic_rx1", "aic_rx2"],
    },
    "fig8": {
        "channel": {"g12": 0.2, "g21": 0.2, "P1_db": 10.0, "P2_db": 10.0, "K_db": 10.0},
        "regions": ["inner", "fixed_rx1", "fixed_rx2", "split_rx1_hull", "split_rx2_hull", "enlarged", "outer"],
        "families": ["split_rx1", "split_rx2"],
    },
}
PRESET_ALIASES = {"strong": "fig4", "mixed": "fig5", "degraded": "fig6", "weak": "fig7", "weak-split": "fig8"}


def preset_names() -> List[str]:
    """Every name `--preset` accepts, aliases included"""
    return sorted(PRESETS) + sorted(PRESET_ALIASES)


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    channel: StdChannel
    case: InterferenceCase
    regions: Tuple[str, ...]
    grid: SweepGrid = field(default_factory=SweepGrid)
    families: Optional[Tuple[str, ...]] = None
    scheme: Optional[SchemeParams] = None
    params: Dict[str, Dict[str, float]] = field(default_factory=dict)
    dm_scheme: Optional[str] = None
    seed: int = 0
    output_dir: Path = PATHS.RESULTS
    formats: Tuple[str, ...] = DEFAULTS.FORMATS
    tol: float = DEFAULTS.INCLUSION_TOL
    log_base: float = DEFAULTS.LOG_BASE

    def describe(self) -> Dict[str, Any]:
        """Provenance echo of every parameter that shapes the output"""
        return {
            "name": self.name,
            "channel": {name: getattr(self.channel, name) for name in _STD_FIELDS},
            "case": self.case.value,
            "regions": list(self.regions),
            "grid": self.grid.describe(),
            "families": list(self.families) if self.families else None,
            "scheme": None if self.scheme is None else asdict(self.scheme),
            "params": self.params,
            "dm_scheme": self.dm_scheme,
            "seed": self.seed,
            "tol": self.tol,
            "log_base": self.log_base,
        }


class ScenarioService:
    """Service for turning preset names and JSON documents into scenario configs"""

    @staticmethod
    def _number(value: Any, path: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioConfigError(path, f"expected a number, got {value!r}")
        return float(value)

    @staticmethod
    def _linear_fields(block: Dict[str, Any], names: Tuple[str, ...], path: str) -> Dict[str, float]:
        """Collect `names` from `block`, converting `<name>_db` entries to linear scale"""
        values = {}
        for key, raw in block.items():
            base = key[:-3] if key.endswith("_db") else key
            if base not in names:
                raise ScenarioConfigError(f"{path}.{key}", "unknown channel field")
            if key.endswith("_db") and base not in _DB_FIELDS:
                raise ScenarioConfigError(f"{path}.{key}", "only powers and state variance take dB values")
            if base in values:
                raise ScenarioConfigError(f"{path}.{key}", "given both in dB and linear scale")
            number = ScenarioService._number(raw, f"{path}.{key}")
            values[base] = db_to_linear(number) if key.endswith("_db") else number
        return values

    @staticmethod
    def parse_channel(block: Any, path: str = "channel") -> StdChannel:
        if not isinstance(block, dict):
            raise ScenarioConfigError(path, "expected an object")
        try:
            if "raw" in block:
                if len(block) != 1:
                    raise ScenarioConfigError(path, "'raw' cannot be combined with standard-form fields")
                values = ScenarioService._linear_fields(block["raw"], _RAW_FIELDS, f"{path}.raw")
                missing = [name for name in _RAW_FIELDS if name not in values]
                if missing:
                    raise ScenarioConfigError(f"{path}.raw", f"missing fields {missing}")
                return standardize(RawChannel(**values))

            values = ScenarioService._linear_fields(block, _STD_FIELDS, path)
            missing = [name for name in ("g12", "g21", "P1", "P2", "K") if name not in values]
            if missing:
                raise ScenarioConfigError(path, f"missing fields {missing}")
            return validate_channel(StdChannel(**values))
        except ScenarioConfigError:
            raise
        except RateRegionError as error:
            raise ScenarioConfigError(path, str(error)) from error

    @staticmethod
    def parse_grid(block: Any, default_points: int, path: str = "grid") -> SweepGrid:
        grid = SweepGrid.uniform(default_points)
        if block is None:
            return grid
        if not isinstance(block, dict):
            raise ScenarioConfigError(path, "expected an object")
        updates: Dict[str, Any] = {}
        for key, raw in block.items():
            if key == "points":
                points = int(ScenarioService._number(raw, f"{path}.points"))
                updates.update(gamma_points=points, alpha22_points=points, beta_points=points)
            elif key in ("gamma_points", "alpha22_points", "beta_points"):
                updates[key] = int(ScenarioService._number(raw, f"{path}.{key}"))
            elif key in ("gamma_fraction", "beta_edge"):
                updates[key] = ScenarioService._number(raw, f"{path}.{key}")
            elif key == "alpha22_range":
                if not isinstance(raw, list) or len(raw) != 2:
                    raise ScenarioConfigError(f"{path}.alpha22_range", "expected [low, high]")
                updates[key] = tuple(ScenarioService._number(v, f"{path}.alpha22_range[{i}]")
                                     for i, v in enumerate(raw))
            else:
                raise ScenarioConfigError(f"{path}.{key}", "unknown grid field")
        try:
            return replace(grid, **updates)
        except ValueError as error:
            raise ScenarioConfigError(path, str(error)) from error

    @staticmethod
    def parse_scheme(block: Any, path: str = "scheme") -> Optional[SchemeParams]:
        if block is None:
            return None
        if not isinstance(block, dict):
            raise ScenarioConfigError(path, "expected an object")
        known = set(asdict(SchemeParams()))
        values = {}
        for key, raw in block.items():
            if key not in known:
                raise ScenarioConfigError(f"{path}.{key}", "unknown scheme parameter")
            values[key] = ScenarioService._number(raw, f"{path}.{key}")
        return SchemeParams(**values)

    @staticmethod
    def allowed_regions(case: InterferenceCase) -> List[str]:
        hulls = [f"{family}_hull" for family in CASE_FAMILIES[case]]
        return list(COMMON_REGIONS) + CASE_VARIANTS[case] + hulls + list(DM_REGIONS)

    @staticmethod
    def parse(document: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None,
              settings: Optional[Config] = None) -> ScenarioConfig:
        """Build a validated config

        Precedence: `overrides` (parsed CLI values), then the document, then
        `settings` (environment-backed Config), whose own fallbacks are the defaults.
        """
        settings = settings or config
        if not isinstance(document, dict):
            raise ScenarioConfigError("<root>", "expected a JSON object")
        overrides = {k: v for k, v in (overrides or {}).items() if v is not None}

        preset_name = document.get("preset")
        if preset_name is not None:
            key = PRESET_ALIASES.get(preset_name, preset_name)
            if key not in PRESETS:
                raise ScenarioConfigError("preset", f"unknown preset {preset_name!r}; choose from {preset_names()}")
            merged = dict(PRESETS[key])
            merged.update({k: v for k, v in document.items() if k != "preset"})
            document = merged

        if "channel" not in document:
            raise ScenarioConfigError("channel", "missing")
        channel = ScenarioService.parse_channel(document["channel"])

        case_name = document.get("case", "auto")
        if case_name == "auto":
            case = classify(channel)
        else:
            try:
                case = InterferenceCase(case_name)
            except ValueError:
                raise ScenarioConfigError("case", f"unknown case {case_name!r}") from None

        regions = document.get("regions")
        if not isinstance(regions, list) or not regions:
            raise ScenarioConfigError("regions", "at least one region must be requested")
        allowed = ScenarioService.allowed_regions(case)
        for index, name in enumerate(regions):
            if name not in allowed:
                raise ScenarioConfigError(f"regions[{index}]", f"{name!r} is not available for the {case.value} case")
        if len(set(regions)) != len(regions):
            raise ScenarioConfigError("regions", "duplicate region names")

        families = document.get("families")
        if families is not None:
            for index, name in enumerate(families):
                if name not in CASE_FAMILIES[case]:
                    raise ScenarioConfigError(f"families[{index}]", f"{name!r} is not swept in the {case.value} case")
            families = tuple(families)

        grid = ScenarioService.parse_grid(document.get("grid"), settings.grid_points)
        if "grid_points" in overrides:
            points = int(overrides["grid_points"])
            try:
                grid = replace(grid, gamma_points=points, alpha22_points=points, beta_points=points)
            except ValueError as error:
                raise ScenarioConfigError("grid.points", str(error)) from error

        scheme = ScenarioService.parse_scheme(document.get("scheme"))
        if scheme is None and any(r in ("general", "high_state") for r in regions):
            raise ScenarioConfigError("scheme", "required by the general and high_state regions")

        params = document.get("params", {})
        if not isinstance(params, dict):
            raise ScenarioConfigError("params", "expected an object keyed by region name")
        for region_name, block in params.items():
            if region_name not in CASE_VARIANTS[case]:
                raise ScenarioConfigError(f"params.{region_name}", "parameters only apply to single scheme regions")
            if not isinstance(block, dict):
                raise ScenarioConfigError(f"params.{region_name}", "expected an object")
            for key, raw in block.items():
                if key not in VARIANT_PARAMETERS[case]:
                    raise ScenarioConfigError(f"params.{region_name}.{key}", f"not a parameter of the {case.value} schemes")
                ScenarioService._number(raw, f"params.{region_name}.{key}")

        dm_scheme = document.get("dm_scheme")
        if any(r in DM_REGIONS for r in regions) and dm_scheme is None:
            raise ScenarioConfigError("dm_scheme", "required by the dm_* regions")

        output = document.get("output", {})
        if not isinstance(output, dict):
            raise ScenarioConfigError("output", "expected an object")
        formats = overrides.get("formats", output.get("formats", list(settings.formats)))
        for index, fmt in enumerate(formats):
            if fmt not in SUPPORTED_FORMATS:
                raise ScenarioConfigError(f"output.formats[{index}]", f"unsupported format {fmt!r}")
        log_base = float(overrides.get("log_base", output.get("log_base", settings.log_base)))
        if log_base <= 0.0 or log_base == 1.0:
            raise ScenarioConfigError("output.log_base", "must be positive and different from 1")
        tol = float(overrides.get("tol", output.get("tol", settings.tol)))
        if tol < 0.0:
            raise ScenarioConfigError("output.tol", "must be non-negative")

        return ScenarioConfig(
            name=str(document.get("name", preset_name or "scenario")),
            channel=channel,
            case=case,
            regions=tuple(regions),
            grid=grid,
            families=families,
            scheme=scheme,
            params={k: {p: float(v) for p, v in b.items()} for k, b in params.items()},
            dm_scheme=dm_scheme,
            seed=int(document.get("seed", 0)),
            output_dir=Path(overrides.get("output_dir", output.get("dir", settings.output_dir))),
            formats=tuple(formats),
            tol=tol,
            log_base=log_base,
        )

    @staticmethod
    def from_preset(name: str, overrides: Optional[Dict[str, Any]] = None,
                    settings: Optional[Config] = None) -> ScenarioConfig:
        return ScenarioService.parse({"preset": name}, overrides, settings)

    @staticmethod
    def read_config_file(file_path: Path, overrides: Optional[Dict[str, Any]] = None,
                         settings: Optional[Config] = None) -> ScenarioConfig:
        try:
            document = json.loads(Path(file_path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ScenarioConfigError("<file>", f"config file not found: {file_path}") from None
        except json.JSONDecodeError as error:
            raise ScenarioConfigError("<file>", f"invalid JSON at line {error.lineno}: {error.msg}") from error
        return ScenarioService.parse(document, overrides, settings)
