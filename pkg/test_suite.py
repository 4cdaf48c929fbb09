#!/usr/bin/env python3
"""
Test script to verify the rate region components work correctly

Runs every test_* function of the tests package without pytest's collector;
`pytest` remains the primary runner.
"""
import importlib
import inspect
import sys
from pathlib import Path

# Add project root to Python path
sys.path.insert(0, str(Path(__file__).parent))

MODULES = [
    ("Geometry", "tests.test_geometry"),
    ("Channel model", "tests.test_model"),
    ("Fourier-Motzkin", "tests.test_fme"),
    ("Finite alphabets", "tests.test_information"),
    ("Gaussian schemes", "tests.test_gaussian"),
    ("Sweeps", "tests.test_sweep"),
    ("Scenarios and reports", "tests.test_io"),
]


def _cases(module):
    """test_* functions; parametrized ones run once per argument"""
    for name, func in inspect.getmembers(module, inspect.isfunction):
        if not name.startswith("test_") or func.__module__ != module.__name__:
            continue
        marks = [m for m in getattr(func, "pytestmark", []) if m.name == "parametrize"]
        if marks:
            argname, values = marks[0].args[0], marks[0].args[1]
            for index, value in enumerate(values):
                yield f"{name}[{index}]", (lambda f=func, v=value, a=argname: f(**{a: v}))
        else:
            yield name, func


def run_module(dotted: str):
    passed = failed = 0
    try:
        module = importlib.import_module(dotted)
    except ImportError as e:
        print(f"❌ Import failed: {e}")
        return 0, 1

    for name, case in _cases(module):
        try:
            case()
            passed += 1
            print(f"✅ {name}")
        except Exception as e:
            failed += 1
            print(f"❌ {name}: {type(e).__name__}: {e}")
    return passed, failed


def main():
    """Run all tests"""
    from src.utils.logger import Logger
    Logger.configure(quiet=True)

    print("🧪 Testing Rate Region Components")
    print("=" * 50)

    passed = failed = 0
    for title, dotted in MODULES:
        print(f"\n🔍 Testing: {title}")
        print("-" * 30)
        ok, bad = run_module(dotted)
        passed += ok
        failed += bad

    print("\n" + "=" * 50)
    print(f"📊 Test Results: {passed}/{passed + failed} tests passed")

    if failed == 0:
        print("🎉 All tests passed!")
        return 0
    print("⚠️ Some tests failed. Please check the errors above.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
