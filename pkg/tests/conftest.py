import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from pargal.fixtures import seed_from_env

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent

# criterion id -> (passed, seconds, detail), filled by test_acceptance
ACCEPTANCE: dict[str, tuple[bool, float, str]] = {}


@pytest.fixture
def rng():
    return random.Random(seed_from_env())


@pytest.fixture
def fixture_dir():
    return ROOT / "fixtures"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, secs, detail = ACCEPTANCE[key]
        line = f"{'PASS' if ok else 'FAIL'}  criterion {key}  ({secs:.2f}s)"
        if detail:
            line += f"  {detail}"
        terminalreporter.write_line(line)
