import math
import random

from hypothesis import given, settings, strategies as st

from treemorph.canonical import canonical_drawing
from treemorph.core import max_degree
from treemorph.generate import generate, random_planar_drawing
from treemorph.lift_edges import morph_to_canonical_edges
from treemorph.tradeoff import morph_to_canonical_tradeoff
from treemorph.verifier import check_trace, step_bound


def bound(n, delta):
    s = math.isqrt(n)
    return s * (6 + math.ceil(math.log2(delta))) + 15 * s + 1


def test_path_of_nine_uses_long_phase_only():
    tr = morph_to_canonical_tradeoff(generate(9, 0, "path"))
    assert tr.info["long_paths"] == 1
    assert sum(tr.info["short_steps"]) == 0
    assert len(tr) <= 16
    assert check_trace(tr, samples=8).ok


def test_star_uses_short_phase_only():
    tr = morph_to_canonical_tradeoff(generate(5, 0, "star"))
    assert tr.info["long_paths"] == 0 and tr.info["long_steps"] == 0
    assert sum(tr.info["short_steps"]) > 0
    assert check_trace(tr, samples=8).ok


def test_constant_degree_scaling():
    for n in (16, 49, 100):
        d = generate(n, 1, "balanced")
        tr = morph_to_canonical_tradeoff(d)
        assert len(tr) <= bound(n, max_degree(d.tree)) == step_bound(tr)
        assert len(tr) <= 23 * math.isqrt(n) + 1


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 40), st.integers(0, 10**6))
def test_same_final_as_other_algorithms(n, seed):
    d = random_planar_drawing(n, random.Random(seed))
    tr = morph_to_canonical_tradeoff(d)
    r = tr.steps[0].dst.pos[0]
    canon = canonical_drawing(d.tree)
    assert tr.final.pos == tuple((r[0] + p[0], r[1] + p[1], r[2] + p[2]) for p in (canon.pos[v] for v in range(n)))
    assert len(tr) <= bound(n, max(1, max_degree(d.tree)))
    # same stretch as the edge algorithm, so the endpoint coincides exactly
    assert morph_to_canonical_edges(d).final == tr.final
    assert check_trace(tr, samples=4).ok
