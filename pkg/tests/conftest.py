import random

import pytest

from approxforms.connectives import boolean_dual, chain_primal
from approxforms.poset import boolean_cube, build_poset


@pytest.fixture
def chain3():
    return build_poset("abc", [("a", "b"), ("b", "c")])


@pytest.fixture
def cube2():
    return boolean_cube(2)


@pytest.fixture(scope="session")
def cp2():
    return chain_primal(2)


@pytest.fixture(scope="session")
def cp3():
    return chain_primal(3)


@pytest.fixture(scope="session")
def bdual():
    return boolean_dual()


def random_poset(rng: random.Random, n: int, density: float = 0.35):
    names = [f"m{i}" for i in range(n)]
    covers = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return build_poset(names, covers)


def pytest_terminal_summary(terminalreporter):
    lines = []
    reports = [r for key in ("passed", "failed") for r in terminalreporter.getreports(key)]
    for rep in reports:
        if rep.when == "call" and "test_acceptance.py::test_criterion_" in rep.nodeid:
            name = rep.nodeid.split("::")[-1]
            lines.append(f"{name}: {'PASS' if rep.passed else 'FAIL'}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(":")[0].rsplit("_", 1)[1])):
            terminalreporter.line(line)
