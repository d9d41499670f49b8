import pytest

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    entry = _CRITERIA.setdefault(num, {"title": title, "status": "PASS", "notes": []})
    if rep.when == "call" and hasattr(rep, "wasxfail"):
        entry["status"] = "FAIL"
        entry["notes"].append(f"known gap: {rep.wasxfail}")
    elif rep.failed:
        entry["status"] = "FAIL"
        entry["notes"].append(f"{item.name} failed")
    elif rep.skipped and rep.when != "teardown":
        entry["status"] = "SKIP"
    if rep.when == "call":
        for name, value in rep.user_properties:
            if name == "note":
                entry["notes"].append(value)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        e = _CRITERIA[num]
        notes = "; ".join(e["notes"])
        line = f"criterion {num:>2}: {e['status']:<4} {e['title']}"
        terminalreporter.write_line(line + (f"  [{notes}]" if notes else ""))
