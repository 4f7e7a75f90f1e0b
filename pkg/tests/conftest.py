import random
from pathlib import Path

import pytest

from wdlkit.context import FormalContext, read_cxt
from wdlkit.latfile import read_lat

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "wdlkit" / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_lat(name: str):
    return read_lat(FIXTURES / name)


def load_cxt(name: str):
    return read_cxt(FIXTURES / name)


def corpus_contexts():
    return [(p.name, read_cxt(p)) for p in sorted(FIXTURES.glob("*.cxt"))]


def corpus_lats():
    return [(p.name, read_lat(p)) for p in sorted(FIXTURES.glob("*.lat"))]


def random_context(rng: random.Random, max_g: int = 6, max_m: int = 6) -> FormalContext:
    ng = rng.randint(0, max_g)
    nm = rng.randint(0, max_m)
    density = rng.random()
    rows = [sum(1 << j for j in range(nm) if rng.random() < density) for _ in range(ng)]
    return FormalContext([f"g{i}" for i in range(ng)], [f"m{j}" for j in range(nm)], rows)


@pytest.fixture
def l1():
    return load_lat("l1.lat")


@pytest.fixture
def l2():
    return load_lat("l2.lat")


@pytest.fixture
def n5_pp():
    return load_lat("n5_pp.lat")


ACCEPTANCE_LINES = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
