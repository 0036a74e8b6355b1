"""Per-criterion PASS/FAIL summary for tests marked ``criterion``."""

from collections import defaultdict

from hypothesis import settings

# exact rational elimination has heavy-tailed timings
settings.register_profile("upbforge", deadline=None)
settings.load_profile("upbforge")

_criteria: dict[int, str] = {}
_outcomes: dict[int, list[tuple[str, str]]] = defaultdict(list)
_node_criterion: dict[str, int] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _criteria[number] = title
            _node_criterion[item.nodeid] = number


def pytest_runtest_logreport(report):
    number = _node_criterion.get(report.nodeid)
    if number is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes[number].append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        results = _outcomes.get(number, [])
        failed = [name for name, outcome in results if outcome != "passed"]
        if not results:
            status = "NOT RUN"
        else:
            status = "FAIL" if failed else "PASS"
        line = f"criterion {number:2d}: {status:<7} {_criteria[number]}"
        if failed:
            line += f"  [failing: {', '.join(failed)}]"
        terminalreporter.write_line(line)
