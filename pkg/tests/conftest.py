import re
from collections import defaultdict

import pytest

from support import graph, plumbed

_criteria: dict = defaultdict(list)


@pytest.fixture
def gamma_ex():
    return plumbed('gamma_ex')


@pytest.fixture
def gamma_h9():
    return plumbed('gamma_h9')


@pytest.fixture
def gamma_ex_graph():
    return graph('gamma_ex')


def pytest_runtest_logreport(report):
    m = re.search(r'test_acceptance\.py::test_criterion_(\d+)_(\w+?)(\[|$)', report.nodeid)
    if not m:
        return
    if report.when == 'call' or report.outcome != 'passed':
        _criteria[(int(m.group(1)), m.group(2))].append(report.outcome == 'passed')


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section('acceptance criteria')
    for (num, name), results in sorted(_criteria.items()):
        status = 'PASS' if all(results) else 'FAIL'
        terminalreporter.write_line(
            f"criterion {num:2d} {name.replace('_', ' '):<28} {status} "
            f"({sum(results)}/{len(results)} cases)")
