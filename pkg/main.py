"""
Entry Point - Rate region calculator for interference channels with state
"""
import argparse
import asyncio
import sys
from pathlib import Path

# Add src to Python path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from config.config import config
from src.app import RateRegionEvaluator, summarize
from src.models.errors import ScenarioConfigError
from src.services.io.scenario_service import SUPPORTED_FORMATS, ScenarioService, preset_names
from src.utils.logger import Logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_ALL_EMPTY = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rate-regions",
                                     description="Achievable rate regions of interference channels with state")
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="compute the regions of a preset or a JSON scenario")
    source = compute.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=preset_names())
    source.add_argument("--config", type=Path, help="JSON scenario file")
    compute.add_argument("--grid", type=int, dest="grid_points", help="points per swept parameter")
    compute.add_argument("--out", type=Path, dest="output_dir", help="output directory")
    compute.add_argument("--format", dest="formats",
                         help=f"comma separated subset of {','.join(SUPPORTED_FORMATS)}")
    compute.add_argument("--tol", type=float, help="inclusion tolerance")
    compute.add_argument("--log-base", type=float, dest="log_base", help="logarithm base of reported rates")
    compute.add_argument("--quiet", action="store_true", help="log to files only")
    return parser


def overrides_from(args: argparse.Namespace) -> dict:
    overrides = {
        "grid_points": args.grid_points,
        "output_dir": args.output_dir,
        "tol": args.tol,
        "log_base": args.log_base,
    }
    if args.formats:
        overrides["formats"] = [f.strip() for f in args.formats.split(",") if f.strip()]
    return overrides


async def main(argv=None) -> int:
    """Main entry point; returns the process exit code"""
    args = build_parser().parse_args(argv)
    Logger.configure(quiet=args.quiet or config.quiet)

    try:
        overrides = overrides_from(args)
        if args.preset:
            scenario = ScenarioService.from_preset(args.preset, overrides)
        else:
            scenario = ScenarioService.read_config_file(args.config, overrides)
    except ScenarioConfigError as error:
        print(f"❌ Invalid configuration: {error}", file=sys.stderr)
        return EXIT_CONFIG

    app = RateRegionEvaluator(config)
    result = await app.run_scenario(scenario)
    if not result.get('success'):
        print(f"❌ Run failed: {result.get('error', 'Unknown error')}", file=sys.stderr)
        return EXIT_FAILURE

    if not args.quiet:
        print("\n🎉 Regions:")
        for line in summarize(result['report']):
            print(f"   {line}")
        for path in result['files']:
            print(f"📄 {path}")

    if result['all_empty']:
        print("❌ Every requested region is empty", file=sys.stderr)
        return EXIT_ALL_EMPTY
    return EXIT_OK


if __name__ == "__main__":
    try:
        sys.exit(asyncio.run(main()))
    except KeyboardInterrupt:
        print("\n⚠️ Application interrupted by user")
        sys.exit(0)
