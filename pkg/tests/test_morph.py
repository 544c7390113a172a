import random

import pytest

from treemorph.core import GridDrawing
from treemorph.generate import generate, random_planar_drawing
from treemorph.morph import ALGORITHMS, morph_between, morph_to_canonical
from treemorph.state import LiftError
from treemorph.verifier import check_trace
from conftest import tree_of


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        morph_to_canonical(generate(3), "teleport")


@pytest.mark.parametrize("alg", sorted(ALGORITHMS))
def test_between_two_drawings(alg):
    t = tree_of([None, 0])
    a = GridDrawing.build(t, [(0, 0), (1, 0)])
    b = GridDrawing.build(t, [(2, 3), (2, 1)])
    tr = morph_between(a, b, alg)
    assert tr.initial == a and tr.final == b
    assert check_trace(tr, samples=8, bounds=False).ok


@pytest.mark.parametrize("alg", sorted(ALGORITHMS))
def test_between_equal_drawings(alg):
    a = generate(12, 4, "caterpillar")
    tr = morph_between(a, a, alg)
    assert tr.final == a
    assert check_trace(tr, samples=4, bounds=False).ok


def test_between_different_trees():
    with pytest.raises(LiftError):
        morph_between(generate(4, 0, "path"), generate(4, 0, "star"))


def test_path_final_differs_by_stretched_root_only():
    d = random_planar_drawing(15, random.Random(11))
    fin = {alg: morph_to_canonical(d, alg) for alg in ALGORITHMS}
    assert fin["edges"].final == fin["tradeoff"].final
    r = d.pos[0]
    ds = fin["paths"].info["stretch"] - fin["edges"].info["stretch"]
    shift = (ds * r[0], ds * r[1], 0)
    assert fin["edges"].final.translated(shift) == fin["paths"].final
