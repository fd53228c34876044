import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wclass import qstate  # noqa: E402

# Session-wide bookkeeping read by the last acceptance criterion.
SESSION = {"start": time.perf_counter(), "max_amplitudes": 0, "results": {}}

_post_init = qstate.StateVector.__post_init__
_embed = qstate.UnitaryOp.embed


def _tracked_post_init(self):
    _post_init(self)
    SESSION["max_amplitudes"] = max(SESSION["max_amplitudes"], self.amplitudes.size)


def _tracked_embed(self, wires, dims):
    out = _embed(self, wires, dims)
    SESSION["max_amplitudes"] = max(SESSION["max_amplitudes"], out.size)
    return out


qstate.StateVector.__post_init__ = _tracked_post_init
qstate.UnitaryOp.embed = _tracked_embed


def pytest_sessionstart(session):
    SESSION["start"] = time.perf_counter()


def pytest_collection_modifyitems(items):
    # the whole-suite budget check has to run after everything else
    last = [it for it in items if it.get_closest_marker("suite_budget")]
    rest = [it for it in items if not it.get_closest_marker("suite_budget")]
    items[:] = rest + last


def pytest_configure(config):
    config.addinivalue_line("markers", "suite_budget: runs after every other test")


def pytest_terminal_summary(terminalreporter):
    results = SESSION["results"]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(results[key])
