import random

import pytest

from treemorph.core import GridDrawing, RootedTree
from treemorph.generate import SHAPES, generate


def tree_of(parents):
    """Tree from a parent list with parents[0] ignored (root 0)."""
    return RootedTree.from_edges(len(parents), [(parents[i], i) for i in range(1, len(parents))])


def instances(count, seed=2024, lo=2, hi=128):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        shape = SHAPES[i % len(SHAPES)]
        n = rng.randint(lo, hi)
        out.append((shape, n, generate(n, seed=seed + i, shape=shape)))
    return out


@pytest.fixture
def small_drawings():
    return [d for _, _, d in instances(12, seed=7, lo=1, hi=14)]


@pytest.fixture
def segment_drawing():
    t = RootedTree.from_edges(2, [(0, 1)])
    return GridDrawing.build(t, [(0, 0), (3, 4)])


_CRITERIA: dict[int, str] = {}


def report(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    _CRITERIA[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[k])
