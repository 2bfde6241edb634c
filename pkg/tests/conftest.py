import json
import time

import pytest

from tribpal import cli
from tribpal.pipeline import PipelineConfig, build_context
from tribpal.recurrence import dominant_root

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def root():
    return dominant_root(250)


@pytest.fixture(scope="session")
def ctx():
    return build_context(250)


@pytest.fixture(scope="session")
def config():
    return PipelineConfig()


@pytest.fixture(scope="session")
def verify_runs(tmp_path_factory):
    """Two consecutive default `tribpal verify` runs: (exit code, seconds, raw bytes, parsed JSON)."""
    out = []
    for k in range(2):
        path = tmp_path_factory.mktemp("verify") / f"report{k}.json"
        start = time.perf_counter()
        code = cli.main(["verify", "--no-timestamp", "-o", str(path)])
        elapsed = time.perf_counter() - start
        raw = path.read_bytes()
        out.append((code, elapsed, raw, json.loads(raw)))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
