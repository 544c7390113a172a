from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from treemorph.canonical import canonical_drawing, shrunken_canonical
from treemorph.core import GridDrawing, sub
from treemorph.primitives import (
    MappingSpec, MorphStep, PoleFrame, PrimitiveError, lattice_index, make_step, map_around_pole, pinwheel_turn,
    place_offsets, rotate_about_horizontal_pole, rotate_quarter, shrink_step, stretch, translate_step,
)
from treemorph.verifier import brute_force_min_separation, check_step
from conftest import tree_of


def fan(points):
    return GridDrawing.build(tree_of([None] + [0] * (len(points) - 1)), points)


def test_stretch_examples():
    d = GridDrawing.build(tree_of([None, 0]), [(0, 0), (1, 2)])
    st_ = stretch(d, 3)
    assert st_.dst.pos[1] == (3, 6, 0)
    assert stretch(d, 1).is_identity
    for bad in (0, -2, 1.5):
        with pytest.raises(PrimitiveError):
            stretch(d, bad)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=2, max_size=7, unique=True),
       st.integers(1, 6))
def test_stretch_spreads_vertices(pts, s):
    d = stretch(fan(pts), s).dst
    for i in range(len(pts)):
        for j in range(i):
            diff = sub(d.pos[i], d.pos[j])
            assert sum(c * c for c in diff) >= s * s


def test_map_around_pole_examples():
    d = fan([(5, 5, 0), (7, 5, 0), (6, 5, 3), (5, 5, 9)])
    spec = MappingSpec(PoleFrame((5, 5), (1, 0)), PoleFrame((5, 5), (0, 1)))
    out = map_around_pole(d, [1, 2, 3], spec).dst
    assert out.pos[1:] == ((5, 7, 0), (5, 6, 3), (5, 5, 9))
    spec = MappingSpec(PoleFrame((5, 5), (1, 0)), PoleFrame((5, 5), (1, 1)))
    out = map_around_pole(d, [1, 2], spec).dst
    assert out.pos[1:3] == ((7, 7, 0), (6, 6, 3))
    assert spec.vector == (0, 1)


def test_mapping_rejects_bad_input():
    with pytest.raises(PrimitiveError):
        PoleFrame((0, 0), (2, 4))
    with pytest.raises(PrimitiveError):
        MappingSpec(PoleFrame((0, 0), (1, 0)), PoleFrame((0, 0), (-1, 0)))
    with pytest.raises(PrimitiveError):
        MappingSpec(PoleFrame((0, 0), (1, 0)), PoleFrame((1, 0), (0, 1)))
    d = fan([(0, 0, 0), (1, 1, 0)])
    with pytest.raises(PrimitiveError):
        lattice_index(d.pos[1], PoleFrame((0, 0), (1, 0)))
    with pytest.raises(PrimitiveError):
        lattice_index((-2, 0, 0), PoleFrame((0, 0), (1, 0)))
    with pytest.raises(PrimitiveError):
        rotate_quarter(d, [1], (0, 0), (1, 1), 1)


def test_rotate_quarter_directions():
    d = fan([(0, 0, 0), (3, 0, 1)])
    assert rotate_quarter(d, [1], (0, 0), (1, 0), 1).dst.pos[1] == (0, 3, 1)
    assert rotate_quarter(d, [1], (0, 0), (1, 0), -1).dst.pos[1] == (0, -3, 1)


def test_horizontal_pole_examples():
    d = fan([(4, 0, 0), (4, 0, 2), (6, 0, 5)])
    out = rotate_about_horizontal_pole(d, [1, 2], (0, 0), (0, 1), (1, 0)).dst
    assert out.pos == ((4, 0, 0), (4, 2, 0), (6, 5, 0))
    twice = rotate_about_horizontal_pole(out, [1, 2], (0, 0), (1, 0), (0, -1)).dst
    assert twice.pos == ((4, 0, 0), (4, 0, -2), (6, 0, -5))


def test_shrink_step_example():
    parents = [None, 0, 1, 2, 0, 4, 0, 6, 7, 8]
    tree = tree_of(parents)
    canon = canonical_drawing(tree)
    full = {u: canon.pos[u] for u in tree.subtree(0)}
    # the dropped child (vertex 4 and its subtree) has been moved out of the plane
    pos = [canon.pos[v] if v not in (4, 5) else (0, 9, v) for v in range(tree.n)]
    d = GridDrawing(tree, tuple(pos))
    sh = shrunken_canonical(canon, tree, 0, [1, 6])
    kept = {u: sh.pos[u] for u in sh.pos}
    step = shrink_step(d, 0, {u: full[u] for u in kept}, kept)
    assert all(step.dst.pos[u][2] <= step.src.pos[u][2] for u in kept)
    assert all(step.dst.pos[u][:2] == step.src.pos[u][:2] for u in kept)
    assert max(step.dst.pos[u][2] for u in kept) == sh.height - 1
    full = {u: full[u] for u in kept}
    same = shrink_step(d, 0, full, full)
    assert same.is_identity
    with pytest.raises(PrimitiveError):
        shrink_step(make_step(d, {1: (5, 5, 5)}, "translate").dst, 0, full, full)


def test_pinwheel_examples():
    d = fan([(2, 2, 4), (3, 2, 4)])
    steps = pinwheel_turn(d, [1], 0, 2)
    assert len(steps) == 2 and steps[-1].dst.pos[1] == (1, 2, 4)
    assert pinwheel_turn(d, [1], 0, 4)[-1].dst.pos == d.pos
    assert pinwheel_turn(d, [], 0, 1)[0].is_identity
    with pytest.raises(PrimitiveError):
        pinwheel_turn(d, [1], 0, 0)
    with pytest.raises(PrimitiveError):
        pinwheel_turn(fan([(0, 0, 0), (1, 0, 1)]), [1], 0, 1)


def test_translate_and_reverse():
    d = fan([(0, 0, 0), (1, 0, 0)])
    assert translate_step(d, [1], (0, 0, 0)).is_identity
    step = translate_step(d, [0, 1], (0, 0, 5))
    assert step.dst.pos == ((0, 0, 5), (1, 0, 5))
    assert step.moved == {0, 1}
    back = step.reversed()
    assert back.src == step.dst and back.dst == step.src
    assert step.at(1, 2) == [(0, 0, 5), (2, 0, 5)]
    with pytest.raises(PrimitiveError):
        MorphStep(d, d, "teleport")


def test_place_offsets():
    out = place_offsets((1, 1, 1), {0: (0, 0, 0), 1: (1, 0, 2)}, (0, -1, 0), (1, 0, 0))
    assert out == {0: (1, 1, 1), 1: (3, 0, 1)}


def _canonical_fan(k, anchor, direction=(1, 0)):
    """Vertical canonical layout of a star on k leaves, its width along ``direction``."""
    tree = tree_of([None] + [0] * k)
    canon = canonical_drawing(tree)
    a, b = direction
    return GridDrawing(tree, tuple((anchor[0] + a * p[0], anchor[1] + b * p[0], anchor[2] + p[2]) for p in
                                   (canon.pos[v] for v in range(tree.n))))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.sampled_from([(1, 0), (0, 1), (-1, 0), (0, -1)]), st.sampled_from([1, -1]))
def test_rotation_is_crossing_free_and_coplanar(k, start, sense):
    d = _canonical_fan(k, (3, -2, 1), start)
    moved = range(1, k + 1)
    step = rotate_quarter(d, moved, (3, -2), start, sense)
    assert check_step(step, samples=8).violations == []
    assert all(p[2] == q[2] for p, q in zip(step.src.pos, step.dst.pos))
    for num in range(1, 8):
        pts = step.at(num, 8)
        ax, ay = 3 * 8, -2 * 8
        dirs = {(p[0] - ax, p[1] - ay) for p in pts if (p[0], p[1]) != (ax, ay)}
        # all moved points share one horizontal direction away from the pole
        if not dirs:
            continue
        base = next(iter(dirs))
        assert all(base[0] * q[1] - base[1] * q[0] == 0 and base[0] * q[0] + base[1] * q[1] > 0 for q in dirs)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_primitive_steps_agree_with_oracle(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    d = _canonical_fan(k, (0, 0, 0))
    step = rotate_about_horizontal_pole(d, range(k + 1), (0, 0), (0, 1), rng.choice([(1, 0), (-1, 0)]))
    ours = check_step(step, samples=4)
    assert ours.min_separation == brute_force_min_separation(step, samples=4)
    assert ours.violations == []
