"""
Scenario parsing, reports and end-to-end runs
"""
import asyncio
import json
import math
import tempfile
import time
from pathlib import Path

import pytest

from config.config import config
from main import EXIT_ALL_EMPTY, EXIT_CONFIG, EXIT_OK, main
from src.app import RateRegionEvaluator, summarize
from src.models.channel import InterferenceCase
from src.models.errors import ScenarioConfigError
from src.models.types import DEFAULTS
from src.services.gaussian.baseline_service import corner_points
from src.services.geometry.region_service import HalfPlane, RateRegion, area, contains, hull, intersect_halfplanes
from src.services.io.report_service import ReportService, unit_name
from src.services.io.scenario_service import PRESET_ALIASES, PRESETS, ScenarioService, preset_names

SQUARE = intersect_halfplanes([HalfPlane(1.0, 0.0, 1.0), HalfPlane(0.0, 1.0, 1.0)])
TRIANGLE = hull([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])


def config_error(document, overrides=None) -> ScenarioConfigError:
    with pytest.raises(ScenarioConfigError) as excinfo:
        ScenarioService.parse(document, overrides)
    return excinfo.value


def run(cfg):
    return asyncio.run(RateRegionEvaluator(config).run_scenario(cfg))


def test_every_preset_parses_to_its_case():
    expected = {"fig4": "strong", "fig5": "mixed", "fig6": "degraded", "fig7": "weak", "fig8": "weak"}
    assert sorted(PRESETS) == sorted(expected)
    for name in PRESETS:
        cfg = ScenarioService.from_preset(name)
        assert cfg.case is InterferenceCase(expected[name])
        assert math.isclose(cfg.channel.P1, 10.0) and math.isclose(cfg.channel.K, 10.0)
        assert cfg.name == name


def test_descriptive_preset_names_are_aliases():
    assert set(preset_names()) == set(PRESETS) | set(PRESET_ALIASES)
    for alias, key in PRESET_ALIASES.items():
        cfg = ScenarioService.from_preset(alias)
        assert cfg.name == alias
        assert cfg.regions == ScenarioService.from_preset(key).regions
        assert cfg.channel == ScenarioService.from_preset(key).channel


def test_invalid_documents_name_the_offending_field():
    assert config_error({"preset": "strong", "regions": []}).field == "regions"
    assert config_error({"preset": "strong", "regions": ["outer", "split_rx1"]}).field == "regions[1]"
    assert config_error({"preset": "strong", "regions": ["general"]}).field == "scheme"
    assert config_error({"preset": "nope"}).field == "preset"
    assert config_error({"regions": ["outer"]}).field == "channel"
    assert config_error({"preset": "weak", "output": {"formats": ["png"]}}).field == "output.formats[0]"
    assert config_error({"preset": "strong", "regions": ["dpc_rx1"],
                         "params": {"dpc_rx1": {"beta1": 0.3}}}).field == "params.dpc_rx1.beta1"
    assert config_error({"preset": "strong", "regions": ["dm_simultaneous"]}).field == "dm_scheme"


def test_channel_value_given_twice_is_rejected():
    channel = {"g12": 1.0, "g21": 1.0, "P1": 10.0, "P1_db": 10.0, "P2": 10.0, "K": 1.0}
    assert config_error({"channel": channel, "regions": ["outer"]}).field == "channel.P1_db"
    zero_direct = {"raw": {"h11": 0.0, "h12": 1.0, "h21": 1.0, "h22": 1.0, "N1": 1.0, "N2": 1.0,
                           "P1_raw": 1.0, "P2_raw": 1.0, "K": 1.0}}
    assert config_error({"channel": zero_direct, "regions": ["outer"]}).field == "channel"


def test_raw_channel_block_is_standardized():
    raw = {"h11": 2.0, "h12": 1.0, "h21": 1.0, "h22": 1.0, "N1": 1.0, "N2": 2.0,
           "P1_raw": 1.0, "P2_raw": 4.0, "K": 3.0}
    cfg = ScenarioService.parse({"channel": {"raw": raw}, "regions": ["outer"]})
    assert math.isclose(cfg.channel.g12, 2.0)
    assert math.isclose(cfg.channel.g21, 1.0 / 8.0)
    assert cfg.case is InterferenceCase.MIXED


def test_overrides_take_precedence_over_the_document():
    document = {"preset": "strong", "output": {"tol": 1e-4, "formats": ["csv"]}}
    assert ScenarioService.parse(document).tol == 1e-4
    cfg = ScenarioService.parse(document, {"tol": 1e-3, "grid_points": 3, "formats": ["json"], "log_base": None})
    assert cfg.tol == 1e-3
    assert cfg.formats == ("json",)
    assert cfg.grid.gamma_points == 3 and cfg.grid.beta_points == 3
    assert cfg.log_base == config.log_base


def test_invalid_json_file():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "broken.json"
        path.write_text("{ not json", encoding="utf-8")
        with pytest.raises(ScenarioConfigError) as excinfo:
            ScenarioService.read_config_file(path)
    assert excinfo.value.field == "<file>"


def test_inclusion_matrix():
    matrix = ReportService.compare({"square": SQUARE, "triangle": TRIANGLE, "none": RateRegion()})
    assert matrix["square"]["triangle"] and not matrix["triangle"]["square"]
    assert matrix["triangle"]["none"] and not matrix["none"]["square"]
    assert all(matrix[name][name] for name in matrix)


def test_csv_report_is_deterministic():
    report = ReportService.build_report({"triangle": TRIANGLE, "square": SQUARE})
    text = ReportService.render_csv(report)
    lines = text.splitlines()
    assert lines[0] == "region,vertex_index,R1_bits,R2_bits"
    assert lines[1].startswith("square,0,")
    assert len(lines) == 1 + 4 + 3
    again = ReportService.build_report({"square": SQUARE, "triangle": TRIANGLE})
    assert ReportService.render_csv(again) == text
    assert ReportService.render_json(again) == ReportService.render_json(report)


def test_natural_log_units():
    report = ReportService.build_report({"square": SQUARE}, log_base=math.e)
    assert report.unit == "nats" == unit_name(math.e)
    assert math.isclose(report.areas["square"], math.log(2.0) ** 2, rel_tol=1e-12)
    assert unit_name(10.0) == "log10"


def test_json_report_carries_the_inclusion_matrix():
    report = ReportService.build_report({"square": SQUARE, "triangle": TRIANGLE}, provenance={"seed": 1})
    document = json.loads(ReportService.render_json(report))
    assert document["inclusion"]["square"]["triangle"] is True
    assert document["regions"]["triangle"]["area"] == pytest.approx(0.5)
    assert document["provenance"]["seed"] == 1
    assert "version" in document["provenance"]
    assert not report.area_violations()


def test_strong_preset_end_to_end_is_reproducible():
    overrides = {"grid_points": 3, "formats": ["csv", "json", "gnuplot"]}
    outputs = []
    with tempfile.TemporaryDirectory() as tmp:
        for attempt in ("first", "second"):
            cfg = ScenarioService.from_preset("strong", {**overrides, "output_dir": Path(tmp) / attempt})
            result = run(cfg)
            assert result["success"], result.get("error")
            assert not result["all_empty"]
            names = sorted(Path(f).name for f in result["files"])
            assert names == ["strong_plot.gp", "strong_regions.csv", "strong_report.json"]
            outputs.append({Path(f).name: Path(f).read_bytes() for f in result["files"]})

        report = result["report"]
        assert report.inclusion["outer"]["enlarged"]
        assert report.inclusion["enlarged"]["dpc_rx1"]
        assert report.inclusion["enlarged"]["inner"]
        assert len(summarize(report)) == len(cfg.regions)
    assert outputs[0] == outputs[1]


def test_unreadable_dm_scheme_leaves_other_regions_intact():
    with tempfile.TemporaryDirectory() as tmp:
        cfg = ScenarioService.parse({
            "preset": "weak", "regions": ["outer", "dm_simultaneous"],
            "dm_scheme": str(Path(tmp) / "missing.txt"), "output": {"dir": tmp, "formats": ["json"]},
        })
        result = run(cfg)
    assert result["success"]
    regions = result["report"].regions
    assert regions["dm_simultaneous"].empty
    assert not regions["outer"].empty


def test_random_dm_scheme_regions_nest():
    with tempfile.TemporaryDirectory() as tmp:
        cfg = ScenarioService.parse({
            "preset": "weak", "regions": ["dm_simultaneous", "dm_superposition"],
            "dm_scheme": "random", "seed": 5, "output": {"dir": tmp, "formats": ["csv"]},
        })
        result = run(cfg)
    assert result["success"]
    assert result["report"].inclusion["dm_superposition"]["dm_simultaneous"]


def test_cli_exit_codes():
    with tempfile.TemporaryDirectory() as tmp:
        assert asyncio.run(main(["compute", "--config", str(Path(tmp) / "absent.json"), "--quiet"])) == EXIT_CONFIG

        infeasible = Path(tmp) / "infeasible.json"
        infeasible.write_text(json.dumps({
            "preset": "strong", "regions": ["aic_rx1"], "params": {"aic_rx1": {"gamma1": 5.0}},
        }), encoding="utf-8")
        code = asyncio.run(main(["compute", "--config", str(infeasible), "--out", tmp, "--quiet"]))
        assert code == EXIT_ALL_EMPTY

        code = asyncio.run(main(["compute", "--preset", "mixed", "--grid", "3", "--out", tmp,
                                 "--format", "json", "--quiet"]))
        assert code == EXIT_OK
        assert (Path(tmp) / "mixed_report.json").exists()


PRESET_REGIONS = {
    "fig4": {"inner", "dpc_rx1", "dpc_rx2", "aic_rx1_hull", "aic_rx2_hull", "enlarged", "outer"},
    "fig5": {"inner", "dpc_p2p_hull", "dpc_rx2", "aic_p2p_hull", "aic_rx2_hull", "enlarged", "outer"},
    "fig6": {"inner", "dpc_p2p_hull", "dpc_rx2", "aic_p2p_hull", "aic_rx2_hull", "enlarged", "outer"},
    "fig7": {"inner", "fixed_rx1", "fixed_rx2", "aic_rx1_hull", "aic_rx2_hull", "enlarged", "outer"},
    "fig8": {"inner", "fixed_rx1", "fixed_rx2", "split_rx1_hull", "split_rx2_hull", "enlarged", "outer"},
}
BASELINE_SCHEMES = {"fig4": ("dpc_rx1", "dpc_rx2"), "fig7": ("fixed_rx1", "fixed_rx2"), "fig8": ("fixed_rx1", "fixed_rx2")}


def run_preset(name, tmp, points=DEFAULTS.GRID_POINTS):
    cfg = ScenarioService.from_preset(name, {"grid_points": points, "output_dir": Path(tmp), "formats": ["json"]})
    started = time.perf_counter()
    result = run(cfg)
    elapsed = time.perf_counter() - started
    assert result["success"], result.get("error")
    return cfg, result["report"], elapsed


def baseline_hull(cfg, report, preset):
    schemes = [report.regions[name] for name in BASELINE_SCHEMES[preset]]
    return hull(schemes + corner_points(cfg.channel))


@pytest.mark.parametrize("preset", sorted(PRESET_REGIONS))
def test_presets_produce_their_regions_in_time(preset):
    with tempfile.TemporaryDirectory() as tmp:
        cfg, report, elapsed = run_preset(preset, tmp)
    assert cfg.grid.gamma_points == 41
    assert set(report.regions) == PRESET_REGIONS[preset]
    assert elapsed < 60.0
    for name in ("inner", "enlarged", "outer"):
        assert not report.regions[name].empty, name
    assert report.inclusion["enlarged"]["inner"]
    assert report.inclusion["outer"]["enlarged"]
    if preset in BASELINE_SCHEMES:
        baseline = baseline_hull(cfg, report, preset)
        assert contains(baseline, report.regions["inner"], tol=cfg.tol)
        assert contains(report.regions["enlarged"], baseline, tol=cfg.tol)


def test_preset_gains_over_the_fixed_schemes():
    gains = {}
    with tempfile.TemporaryDirectory() as tmp:
        for preset in ("fig4", "fig7", "fig8"):
            cfg, report, _ = run_preset(preset, tmp)
            baseline = area(baseline_hull(cfg, report, preset))
            gains[preset] = area(report.regions["enlarged"]) / baseline - 1.0
    assert gains["fig4"] > 0.01
    assert gains["fig8"] > 0.01
    assert gains["fig7"] < gains["fig8"]


@pytest.mark.parametrize("preset", ["fig4", "fig8"])
def test_cli_runs_the_preset_scenarios(preset):
    with tempfile.TemporaryDirectory() as tmp:
        code = asyncio.run(main(["compute", "--preset", preset, "--grid", "9", "--out", tmp,
                                 "--format", "csv,json", "--quiet"]))
        assert code == EXIT_OK
        assert (Path(tmp) / f"{preset}_regions.csv").exists()
        document = json.loads((Path(tmp) / f"{preset}_report.json").read_text(encoding="utf-8"))
    inclusion = document["inclusion"]
    assert set(document["regions"]) == PRESET_REGIONS[preset]
    assert inclusion["enlarged"]["inner"]
    assert inclusion["outer"]["enlarged"]
    for name in BASELINE_SCHEMES[preset]:
        assert inclusion["enlarged"][name]
