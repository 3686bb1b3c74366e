import pytest

CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            num, title = mark.args
            CRITERIA.setdefault(num, {"title": title, "outcomes": []})


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for num, info in CRITERIA.items():
        if f"criterion_{num}_" in report.nodeid.rsplit("::", 1)[-1]:
            info["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not any(info["outcomes"] for info in CRITERIA.values()):
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        info = CRITERIA[num]
        outs = info["outcomes"]
        if not outs:
            status = "NOT RUN"
        elif all(o == "passed" for o in outs):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}  {info['title']}")
