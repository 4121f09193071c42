import subprocess
import sys

import pytest

SIMULATOR = [sys.executable, "-m", "ancientflow.cli"]


@pytest.fixture(scope="session")
def run_fixtures(tmp_path_factory):
    """Shipped circle and oval runs, produced through the simulation CLI
    (the CSV artifacts are this package's only interface to it)."""
    root = tmp_path_factory.mktemp("runs")
    result = subprocess.run(
        SIMULATOR + ["run", "--config", "circle", "--config", "oval",
                     "--out", str(root)],
        capture_output=True, text=True)
    assert result.returncode == 0, result.stderr
    return {"circle": root / "circle", "oval": root / "oval"}
