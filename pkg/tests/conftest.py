from __future__ import annotations

import pytest

from rackcollapse.permgrp import conjugacy_classes, element_order
from rackcollapse.registry import build_group, ree_context, sz_context


@pytest.fixture(scope="session")
def sz8():
    return sz_context(1)


@pytest.fixture(scope="session")
def sz8_classes(sz8):
    return conjugacy_classes(sz8.perm_group)


@pytest.fixture(scope="session")
def ree():
    return ree_context()


@pytest.fixture(scope="session")
def sz2():
    return build_group("sz2-affine")


def classes_of_order(classes, n):
    return [c for c in classes if element_order(c.representative) == n]


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, tagged via record_property."""
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when != "call":
                continue
            for name, value in rep.user_properties:
                if name == "criterion":
                    lines.append((value[0], f"criterion {value[0]:>2}: "
                                            f"{'PASS' if rep.passed else 'FAIL'}  {value[1]}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
