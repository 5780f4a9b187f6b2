import json
import subprocess
import sys
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


def _floats(obj):
    if isinstance(obj, dict):
        return {k: _floats(v) for k, v in obj.items() if not k.startswith("_")}
    if isinstance(obj, list):
        return [_floats(v) for v in obj]
    return float(obj)


@pytest.fixture(scope="session")
def oracle():
    """Frozen high-precision reference values, as floats."""
    return _floats(json.loads((DATA / "oracle_values.json").read_text(encoding="utf-8")))


def run_cli(*args, cwd=None):
    """Run the CLI in a subprocess; returns (exit code, stdout, stderr)."""
    proc = subprocess.run([sys.executable, "-m", "cantortree", *map(str, args)],
                          capture_output=True, text=True, cwd=cwd)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def cli():
    return run_cli


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
