import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("name,args,expect", [
    ("run_vpp_example.py", ["--horizon", "3"], "next=3.5"),
    ("realizability_example4.py", [], "frontier: 0.5"),
    ("moore_equivalence.py", ["--specs", "3", "--streams", "10"], "mismatches=0"),
])
def test_script_runs(name, args, expect):
    r = subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert expect in r.stdout
