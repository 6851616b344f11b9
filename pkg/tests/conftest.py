"""Collects the outcome of every test marked ``acceptance`` and prints one
PASS/FAIL line per criterion at the end of the run."""


_criteria: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(tag, title): acceptance criterion check")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            tag, title = mark.args
            _criteria.setdefault(tag, {"title": title, "nodes": {}})["nodes"][item.nodeid] = None


def pytest_runtest_logreport(report):
    for entry in _criteria.values():
        if report.nodeid in entry["nodes"]:
            failed = report.failed or (report.when == "call" and report.skipped)
            if failed:
                entry["nodes"][report.nodeid] = False
            elif report.when == "call" and entry["nodes"][report.nodeid] is None:
                entry["nodes"][report.nodeid] = True


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(_criteria, key=lambda t: int(t[2:])):
        entry = _criteria[tag]
        results = list(entry["nodes"].values())
        if all(r is True for r in results):
            status = "PASS"
        elif any(r is False for r in results):
            status = "FAIL"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(f"{tag} {status}  {entry['title']}")

