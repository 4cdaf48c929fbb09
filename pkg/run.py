#!/usr/bin/env python3
"""
Simple run script: computes one preset (fig4 by default) with the environment settings
"""
import asyncio
import sys
from pathlib import Path

# Add src to Python path
sys.path.insert(0, str(Path(__file__).parent / "src"))


async def run_preset(name: str = "fig4") -> int:
    """Run a single preset"""
    try:
        from config.config import config
        from src.app import RateRegionEvaluator, summarize
        from src.services.io.scenario_service import ScenarioService

        print(f"🚀 Computing preset '{name}'...")

        scenario = ScenarioService.from_preset(name)
        result = await RateRegionEvaluator(config).run_scenario(scenario)

        if result.get('success'):
            for line in summarize(result['report']):
                print(f"   {line}")
            print("✅ Preset completed successfully!")
            return 0
        print(f"❌ Preset failed: {result.get('error', 'Unknown error')}")
        return 1

    except ImportError as e:
        print(f"❌ Import error: {e}")
        print("💡 Make sure you have installed all dependencies:")
        print("   pip install -r requirements.txt")
        return 1
    except Exception as e:
        print(f"💥 Unexpected error: {e}")
        return 1

if __name__ == "__main__":
    preset = sys.argv[1] if len(sys.argv) > 1 else "fig4"
    exit_code = asyncio.run(run_preset(preset))
    sys.exit(exit_code)
