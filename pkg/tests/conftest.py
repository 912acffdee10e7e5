import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when not in ("setup", "call"):
        return
    k, text = marker.args
    entry = _criteria.setdefault(k, {"text": text, "ok": True, "detail": ""})
    if rep.failed:
        entry["ok"] = False
        entry["detail"] = str(rep.longrepr.reprcrash.message) if hasattr(rep.longrepr, "reprcrash") else ""
    elif rep.skipped:
        entry["ok"] = False
        entry["detail"] = "skipped"
    if rep.when == "call":
        for name, content in rep.user_properties:
            if name == "summary":
                entry["detail"] = content


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        e = _criteria[k]
        line = f"criterion {k:2d} {'PASS' if e['ok'] else 'FAIL'}: {e['text']}"
        if e["detail"]:
            line += f" [{e['detail']}]"
        terminalreporter.write_line(line)
