import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


@pytest.mark.parametrize("name,needle", [
    ("reproduce_examples.py", "e2.f2@x wandering up to 2: True"),
    ("period_survey.py", "period (1,-1): 2"),
])
def test_script_runs(name, needle):
    out = subprocess.run([sys.executable, str(SCRIPTS / name)], capture_output=True, text=True, check=True)
    assert needle in out.stdout
