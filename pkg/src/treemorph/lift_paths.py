"""Morph a planar grid drawing to the canonical drawing by lifting whole paths.

Paths of the long-path decomposition are lifted deepest first.  Each lift
costs a constant number of linear steps, so the total is O(number of paths).
"""
from __future__ import annotations

from .core import GridDrawing, metrics, primitive
from .canonical import shrunken_canonical
from .decomposition import PathDecomposition, TreePath, long_path_decomposition
from .primitives import (
    MappingSpec, PoleFrame, map_around_pole, place_offsets, pinwheel_turn,
    rotate_about_horizontal_pole, stretch,
)
from .state import LiftError, LiftState, MorphTrace

X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def stretch_factor_paths(rpw: int, d: int) -> int:
    return 2 * (rpw + d)


def _sign(a: int) -> int:
    return (a > 0) - (a < 0)


def _merge(*maps):
    out = {}
    for m in maps:
        out.update(m)
    return out


def _planar_quarter(state: LiftState, verts, anchor, src, dst, kind="rotate"):
    """Pole mapping about the vertical line through ``anchor`` (positions only)."""
    spec = MappingSpec(PoleFrame(anchor, src), PoleFrame(anchor, dst), "z")
    step = map_around_pole(state.drawing, verts, spec, kind)
    return {v: step.dst.pos[v] for v in step.moved}


def lift_path(state: LiftState, path: TreePath) -> None:
    """Lift the internal vertices of ``path`` into canonical position above its head."""
    tree, canon = state.tree, state.canon
    verts = path.vertices
    m = len(verts) - 1
    if m < 1:
        return
    head = verts[0]
    for j, v in enumerate(verts):
        if v in state.lifted or state.pos(v)[2] != 0:
            raise LiftError(f"path vertex {v} is already off the plane")
        if j >= 1:
            nxt = verts[j + 1] if j < m else None
            missing = [c for c in tree.children[v] if c != nxt and c not in state.lifted]
            if missing:
                raise LiftError(f"children {missing} of {v} are not lifted yet")

    body = {v: state.lifted_subtree(v) for v in verts}
    proc = [u for v in verts[1:] for u in body[v]]
    full = {v: {u: canon.offset(u, v) for u in body[v]} for v in verts}
    shr = {v: shrunken_canonical(canon, tree, v, [c for c in tree.children[v] if c in state.lifted])
           for v in verts[1:]}
    width = {v: X for v in verts}  # current direction of canonical x for T'(v)

    # 1: compress the lifted subtrees of the internal vertices
    state.emit(_merge(*(place_offsets(state.pos(v), shr[v].pos, X, Z) for v in verts[1:])), "shrink")

    # 2: turn away subtrees that overlap the next path edge
    turned = []
    for j in range(m):
        v, w = verts[j], verts[j + 1]
        dx, dy = state.pos(w)[0] - state.pos(v)[0], state.pos(w)[1] - state.pos(v)[1]
        if dy == 0 and dx > 0 and any(canon.offset(u, v)[0] for u in body[v]):
            turned.append(v)
    if turned:
        for src, dst in (((1, 0), (0, 1)), ((0, 1), (-1, 0))):
            state.emit(_merge(*(_planar_quarter(state, body[v], state.pos(v)[:2], src, dst)
                                for v in turned)), "rotate")
        for v in turned:
            width[v] = (-1, 0, 0)

    # 3: raise every internal vertex to its own floor
    level = {}
    z = state.n
    for v in verts[1:]:
        level[v] = z
        z += shr[v].height
    upd = {}
    for v in verts[1:]:
        for u in body[v]:
            p = state.pos(u)
            upd[u] = (p[0], p[1], p[2] + level[v])
    state.emit(upd, "translate")

    # 4: lay the raised subtrees flat
    depth_dir = {}
    upd = {}
    for j in range(1, m + 1):
        v = verts[j]
        pv = state.pos(v)
        if j < m:
            dy = state.pos(verts[j + 1])[1] - pv[1]
        else:
            dy = 0
        side = -_sign(dy) if dy else state.toward_centre(pv[1], 1)
        depth_dir[v] = (0, side, 0)
        step = rotate_about_horizontal_pole(state.drawing, body[v], (pv[1], pv[2]), (0, 1), (side, 0))
        upd.update({u: step.dst.pos[u] for u in step.moved})
    state.emit(upd, "h_rotate")

    # 5: stack the floors above v_1 with canonical x offsets
    v1 = verts[1]
    p1 = state.pos(v1)
    upd = {}
    for v in verts[2:]:
        pv = state.pos(v)
        ox = canon.offset(v, v1)[0]
        vec = (p1[0] + ox - pv[0], p1[1] - pv[1], 0)
        for u in body[v]:
            p = state.pos(u)
            upd[u] = (p[0] + vec[0], p[1] + vec[1], p[2])
    state.emit(upd, "translate")

    # 6: canonical heights relative to v_1
    upd = {}
    for v in verts[2:]:
        dz = p1[2] + canon.offset(v, v1)[2] - state.pos(v)[2]
        for u in body[v]:
            p = state.pos(u)
            upd[u] = (p[0], p[1], p[2] + dz)
    state.emit(upd, "translate")

    # 7: half turn in the horizontal plane for subtrees facing -x
    flip = [v for v in verts[1:] if width[v][0] < 0 and len(body[v]) > 1]
    if flip:
        drawing = state.drawing
        firsts, seconds = {}, {}
        for v in flip:
            pv = drawing.pos[v]
            want = state.toward_centre(pv[0], 0)
            d = depth_dir[v][1]
            sense = 1 if -d == want else -1
            s1, s2 = pinwheel_turn(drawing, body[v], v, 2, sense)
            firsts.update({u: s1.dst.pos[u] for u in body[v]})
            seconds.update({u: s2.dst.pos[u] for u in body[v]})
            depth_dir[v] = (0, -d, 0)
            width[v] = X
        state.emit(firsts, "pinwheel")
        state.emit(seconds, "pinwheel")

    # 8: restore full canonical spacing, still horizontal
    upd = {}
    for v in verts[1:]:
        upd.update(place_offsets(state.pos(v), full[v], width[v], depth_dir[v]))
    state.emit(upd, "shrink")

    # 9: stand each subtree back up into the +x, +z quarter plane
    upd = {}
    for v in verts[1:]:
        pv = state.pos(v)
        step = rotate_about_horizontal_pole(state.drawing, body[v], (pv[1], pv[2]),
                                            (depth_dir[v][1], 0), (0, 1))
        upd.update({u: step.dst.pos[u] for u in step.moved})
    state.emit(upd, "h_rotate")

    # 10: bring the lifted path over the head
    p0 = state.pos(head)
    p1 = state.pos(v1)
    vertical = canon.offset(v1, head)[0] == 0
    if vertical:
        target = (p0[0], p0[1])
        g = None
    else:
        g = primitive(p1[0] - p0[0], p1[1] - p0[1])
        target = (p0[0] + g[0], p0[1] + g[1])
    _shift(state, proc, (target[0] - p1[0], target[1] - p1[1], 0))

    drop = canon.offset(v1, head)[2] - state.pos(v1)[2] + p0[2]
    if head not in turned:
        # 11-13: sidestep, descend, slide into place
        if not vertical:
            s = _sign(g[1]) or 1
            p1 = state.pos(v1)
            _shift(state, proc, (p0[0] - p1[0], p0[1] + s - p1[1], 0))
        _shift(state, proc, (0, 0, drop))
        if not vertical:
            p1 = state.pos(v1)
            _shift(state, proc, (p0[0] + 1 - p1[0], p0[1] - p1[1], 0))
    else:
        # 11-13: swing T'(head) aside, descend, swing it back
        state.emit(_planar_quarter(state, body[head], p0[:2], (-1, 0), (0, 1)), "rotate")
        _shift(state, proc, (0, 0, drop))
        state.emit(_planar_quarter(state, body[head], p0[:2], (0, 1), (1, 0)), "rotate")

    state.lifted.update(verts[1:])


def _shift(state: LiftState, verts, vec):
    if vec == (0, 0, 0):
        return
    state.emit({u: (state.pos(u)[0] + vec[0], state.pos(u)[1] + vec[1], state.pos(u)[2] + vec[2])
                for u in verts}, "translate")


def morph_to_canonical_paths(drawing: GridDrawing, lp: PathDecomposition | None = None,
                             check_input: bool = True) -> MorphTrace:
    """Crossing-free morph from a planar drawing to the canonical drawing.

    The first step stretches by 2(rpw + d); afterwards every path lift adds at
    most fifteen steps.
    """
    if not drawing.planar:
        raise LiftError("input drawing must lie in the z = 0 plane")
    if check_input:
        from .verifier import check_drawing

        bad = check_drawing(drawing)
        if bad:
            raise LiftError(f"input drawing is not crossing-free: {bad[0]}")
    d = metrics(drawing).d
    lp = lp or long_path_decomposition(drawing.tree)
    probe = LiftState(drawing)
    factor = stretch_factor_paths(probe.rpw, d)
    first = stretch(drawing, factor)
    state = LiftState(first.dst, probe.heavy, d)
    state.steps.append(first)
    for path in lp.paths:
        lift_path(state, path)
    return state.trace("paths", stretch=factor, rpw=state.rpw, d=d, paths=len(lp.paths))
