from fractions import Fraction
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from treemorph.canonical import canonical_drawing
from treemorph.core import GridDrawing, max_degree, metrics, segment_distance_sq
from treemorph.decomposition import depth_edge_sets, heavy_decomposition
from treemorph.generate import generate, random_planar_drawing
from treemorph.lift_edges import (
    D, angular_order, clearance_point, lift_edge_set, merge_schedule, morph_to_canonical_edges,
    stretch_factor_edges,
)
from treemorph.primitives import stretch
from treemorph.state import LiftError, LiftState
from treemorph.verifier import check_trace
from conftest import tree_of

AXES = [(1, 0), (0, 1), (-1, 0), (0, -1)]
primitive_dirs = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(
    lambda v: v != (0, 0) and math.gcd(*v) == 1)


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def strictly_inside(c, a, b):
    s = cross(a, b)
    return s != 0 and cross(a, c) * s > 0 and cross(c, b) * s > 0


def test_stretch_factor_examples():
    assert stretch_factor_edges(1, 1) == 10
    assert stretch_factor_edges(2, 5) == 420


def test_merge_schedule_small_cases():
    assert merge_schedule([D]) == []
    assert merge_schedule([(0, 1)]) == [[((0, 1), D)]]
    assert merge_schedule([(-1, 0)]) == [[((-1, 0), (0, 1))], [((0, 1), D)]]
    # three half-planes: two collide rounds, then the survivor turns onto XZ+
    assert merge_schedule([(0, 1), (-1, 0), (0, -1)]) == [
        [((-1, 0), (0, 1))], [((0, -1), (1, 0))], [((0, 1), (1, 0))]]


@settings(max_examples=200, deadline=None)
@given(st.lists(primitive_dirs, min_size=1, max_size=12, unique=True))
def test_merge_schedule_is_sound(dirs):
    cur = set(dirs)
    rounds = merge_schedule(dirs)
    for moves in rounds:
        sources = [b for b, _ in moves]
        assert len(set(sources)) == len(sources)
        for b, a in moves:
            assert b in cur and a != b
            assert cross(a, b) != 0  # never a straight or zero angle
            assert not any(strictly_inside(c, a, b) for c in cur if c not in (a, b))
        cur = (cur - set(sources)) | {a for _, a in moves}
    assert cur == {D}
    assert len(rounds) <= math.ceil(math.log2(len(dirs))) + 3 if len(dirs) > 1 else len(rounds) <= 2


def test_angular_order_is_counterclockwise_from_x_axis():
    assert angular_order([(0, -1), (-1, 0), (1, 0), (0, 1), (1, 1)]) == [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)]


def _stretched(drawing):
    state = LiftState(drawing)
    d = metrics(drawing).d
    return stretch(drawing, stretch_factor_edges(state.rpw, d)).dst, state.rpw, d


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 25), st.integers(0, 10**6))
def test_clearance_properties(n, seed):
    drawing = random_planar_drawing(n, random.Random(seed))
    g1, rpw, d = _stretched(drawing)
    outer = rpw * d * (4 * d + 1)
    for level in depth_edge_sets(drawing.tree):
        pts = {}
        for v, u in level:
            cp = clearance_point(g1, (v, u), rpw, d)
            pv, pu, z = g1.pos[v], g1.pos[u], cp.point
            # z_e on e, strictly before u
            assert cross((z[0] - pv[0], z[1] - pv[1]), (pu[0] - pv[0], pu[1] - pv[1])) == 0
            assert 0 < (z[0] - pv[0]) * (pu[0] - pv[0]) + (z[1] - pv[1]) * (pu[1] - pv[1])
            assert sum((z[k] - pv[k]) ** 2 for k in range(3)) < sum((pu[k] - pv[k]) ** 2 for k in range(3))
            # disk(z_e, rpw d) inside disk(v, rpw d (4d + 1))
            assert math.isqrt(sum((z[k] - pv[k]) ** 2 for k in range(3))) + rpw * d <= outer
            pts[(v, u)] = (z, pu)
        keys = list(pts)
        for i in range(len(keys)):
            for j in range(i):
                (z1, u1), (z2, u2) = pts[keys[i]], pts[keys[j]]
                assert sum((z1[k] - z2[k]) ** 2 for k in range(3)) >= (2 * rpw) ** 2
                assert segment_distance_sq(z1, u1, z2, u2) > (2 * rpw) ** 2


def test_clearance_axis_example():
    t = tree_of([None, 0])
    d = GridDrawing.build(t, [(0, 0), (10, 0)])
    cp = clearance_point(d, (0, 1), 1, 1)
    assert cp.point == (4, 0, 0)
    with pytest.raises(LiftError):
        clearance_point(d, (1, 0), 1, 1)


def test_star_single_level():
    for k in (1, 2, 3, 5, 8):
        d = generate(k + 1, 0, "star")
        tr = morph_to_canonical_edges(d)
        assert len(tr.info["per_level"]) == 1
        assert tr.info["per_level"][0] <= 6 + math.ceil(math.log2(k)) if k > 1 else tr.info["per_level"][0] <= 6
        assert check_trace(tr, samples=8).ok


def test_per_level_bound_and_invariants():
    for seed, shape in [(3, "random"), (4, "balanced"), (5, "caterpillar"), (6, "path")]:
        d = generate(30, seed, shape)
        state = LiftState(stretch(d, stretch_factor_edges(LiftState(d).rpw, metrics(d).d)).dst,
                          diameter=metrics(d).d)
        lg = math.ceil(math.log2(max_degree(d.tree)))
        for level in depth_edge_sets(d.tree):
            assert lift_edge_set(state, level) <= 6 + lg
            assert state.check_invariants() == []


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 24), st.integers(0, 10**6))
def test_mst_inputs(n, seed):
    d = random_planar_drawing(n, random.Random(seed))
    tr = morph_to_canonical_edges(d)
    canon = canonical_drawing(d.tree)
    r = tr.steps[0].dst.pos[0]
    assert tr.final.pos == tuple((r[0] + p[0], r[1] + p[1], r[2] + p[2]) for p in (canon.pos[v] for v in range(n)))
    rep = check_trace(tr, samples=4)
    assert rep.ok, rep.violations[:3]
