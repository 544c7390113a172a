"""Morph to the canonical drawing by lifting all edges of one depth at a time."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Sequence

from .core import GridDrawing, Point, metrics, primitive
from .decomposition import depth_edge_sets
from .primitives import stretch
from .state import LiftError, LiftState, MorphTrace

D = (1, 0)  # direction of the XZ+ half-plane


def stretch_factor_edges(rpw: int, d: int) -> int:
    return 2 * rpw * d * (4 * d + 1)


@dataclass(frozen=True)
class ClearancePoint:
    edge: tuple[int, int]
    point: Point
    step: tuple[int, int]  # primitive direction from st(e) to end(e)


def clearance_point(drawing: GridDrawing, edge: tuple[int, int], rpw: int, d: int) -> ClearancePoint:
    v, u = edge
    if drawing.tree.parent[u] != v:
        raise LiftError(f"{edge} is not an edge")
    pv, pu = drawing.pos[v], drawing.pos[u]
    g = primitive(pu[0] - pv[0], pu[1] - pv[1])
    r = 4 * rpw * d
    return ClearancePoint(edge, (pv[0] + g[0] * r, pv[1] + g[1] * r, 0), g)


def _half(a):
    return 0 if a[1] > 0 or (a[1] == 0 and a[0] > 0) else 1


def _ccw_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def angular_order(dirs):
    return sorted(dirs, key=cmp_to_key(_ccw_cmp))


def _gap_at_least_pi(a, b) -> bool:
    c = a[0] * b[1] - a[1] * b[0]
    return c < 0 or (c == 0 and a[0] * b[0] + a[1] * b[1] < 0)


def merge_schedule(dirs: Sequence[tuple[int, int]]) -> list[list[tuple[tuple[int, int], tuple[int, int]]]]:
    """Rounds of (from, to) half-plane mappings collapsing ``dirs`` onto XZ+.

    Neighbours in angular order are paired, starting just after a gap of at
    least pi so no pair straddles it.  The last survivor is turned onto XZ+.
    """
    cur = angular_order(set(dirs))
    rounds = []
    while len(cur) > 1:
        moves = []
        if len(cur) == 2 and _opposite(*cur):
            # a straight angle cannot be mapped directly; go via a perpendicular
            if D in cur:
                keep, go, mid = D, (-1, 0), (0, 1)
            else:
                keep, go = cur
                mid = D if go[0] == 0 else (-go[1], go[0])
            rounds.append([(go, mid)])
            cur = angular_order([keep, mid])
            continue
        start = 0
        k = len(cur)
        for i in range(k):
            if _gap_at_least_pi(cur[i - 1], cur[i]):
                start = i
                break
        seq = cur[start:] + cur[:start]
        nxt = []
        for i in range(0, k - 1, 2):
            a, b = seq[i], seq[i + 1]
            if b == D or a == (-1, 0):
                a, b = b, a
            moves.append((b, a))
            nxt.append(a)
        if k % 2:
            nxt.append(seq[-1])
        rounds.append(moves)
        cur = angular_order(nxt)
    last = cur[0] if cur else D
    if last == (-1, 0):
        rounds.append([(last, (0, 1))])
        last = (0, 1)
    if last != D:
        rounds.append([(last, D)])
    return rounds


def _opposite(a, b):
    return a[0] == -b[0] and a[1] == -b[1]


def _index_map(state: LiftState, verts, anchor, src, dst):
    """Index-preserving transfer about the vertical pole at ``anchor``."""
    out = {}
    for w in verts:
        p = state.pos(w)
        du, dv = p[0] - anchor[0], p[1] - anchor[1]
        k = du // src[0] if src[0] else dv // src[1]
        if (k * src[0], k * src[1]) != (du, dv) or k < 0:
            raise LiftError(f"vertex {w} is not on half-plane {src} at {anchor}")
        out[w] = (anchor[0] + k * dst[0], anchor[1] + k * dst[1], p[2])
    return out


def lift_edge_set(state: LiftState, edges: Sequence[tuple[int, int]]) -> int:
    """Lift every edge of ``edges`` simultaneously; returns the number of steps emitted."""
    tree, canon = state.tree, state.canon
    before = len(state.steps)
    if not edges:
        return 0
    for v, u in edges:
        if tree.parent[u] != v:
            raise LiftError(f"{(v, u)} is not an edge")
        if u in state.lifted or state.pos(u)[2] or state.pos(v)[2]:
            raise LiftError(f"edge {(v, u)} is not in the plane")
        if any(c not in state.lifted for c in tree.children[u]):
            raise LiftError(f"subtree of {u} is not lifted yet")
    if state.diameter is None:
        raise LiftError("lifting edges needs the input diameter")
    body = {u: state.lifted_subtree(u) for _, u in edges}
    clear = {u: clearance_point(state.drawing, (v, u), state.rpw, state.diameter) for v, u in edges}

    def shift_all(vecs):
        upd = {}
        for u, vec in vecs.items():
            for w in body[u]:
                p = state.pos(w)
                upd[w] = (p[0] + vec[0], p[1] + vec[1], p[2] + vec[2])
        return upd

    # 1: out to the clearance points
    vecs = {}
    for v, u in edges:
        z, pu = clear[u].point, state.pos(u)
        vecs[u] = (z[0] - pu[0], z[1] - pu[1], 0)
    state.emit(shift_all(vecs), "translate")

    # 2: up to canonical height; edges pointing along -x also start turning
    upd = {}
    kind = "translate"
    for v, u in edges:
        dz = canon.offset(u, v)[2]
        pu = state.pos(u)
        if clear[u].step == (-1, 0):
            kind = "lift-composite"
            turned = _index_map(state, body[u], pu[:2], D, (0, 1))
            for w, p in turned.items():
                upd[w] = (p[0], p[1], p[2] + dz)
        else:
            for w in body[u]:
                p = state.pos(w)
                upd[w] = (p[0], p[1], p[2] + dz)
    state.emit(upd, kind)

    # 3: into the vertical plane of the edge, on the far side from st(e)
    upd = {}
    for v, u in edges:
        g = clear[u].step
        src = (0, 1) if g == (-1, 0) else D
        if g != src:
            upd.update(_index_map(state, body[u], state.pos(u)[:2], src, g))
    state.emit(upd, "map_pole")

    # 4: slide along the edge to the pole of st(e)
    vecs = {}
    for v, u in edges:
        g = clear[u].step
        pv, pu = state.pos(v), state.pos(u)
        if canon.offset(u, v)[0] == 0:
            t = pv[:2]
        else:
            t = (pv[0] + g[0], pv[1] + g[1])
        vecs[u] = (t[0] - pu[0], t[1] - pu[1], 0)
    state.emit(shift_all(vecs), "translate")

    # 5: collide the half-planes around each st(e)
    groups: dict[int, dict[tuple[int, int], list[int]]] = {}
    for v, u in edges:
        groups.setdefault(v, {}).setdefault(clear[u].step, []).extend(body[u])
    plans = {v: merge_schedule(list(g)) for v, g in groups.items()}
    depth = max((len(p) for p in plans.values()), default=0)
    for r in range(depth):
        upd = {}
        for v, plan in plans.items():
            if r >= len(plan):
                continue
            contents = groups[v]
            anchor = state.pos(v)[:2]
            for src, dst in plan[r]:
                verts = contents.pop(src, [])
                if verts:
                    upd.update(_index_map(state, verts, anchor, src, dst))
                contents.setdefault(dst, []).extend(verts)
        state.emit(upd, "map_pole")

    state.lifted.update(u for _, u in edges)
    return len(state.steps) - before


def morph_to_canonical_edges(drawing: GridDrawing, check_input: bool = True) -> MorphTrace:
    """Crossing-free morph to the canonical drawing in O(depth * log(max degree)) steps."""
    if not drawing.planar:
        raise LiftError("input drawing must lie in the z = 0 plane")
    if check_input:
        from .verifier import check_drawing

        bad = check_drawing(drawing)
        if bad:
            raise LiftError(f"input drawing is not crossing-free: {bad[0]}")
    d = metrics(drawing).d
    probe = LiftState(drawing)
    factor = stretch_factor_edges(probe.rpw, d) if drawing.tree.n > 1 else 1
    first = stretch(drawing, factor)
    state = LiftState(first.dst, probe.heavy, d)
    state.steps.append(first)
    per_level = []
    for k in depth_edge_sets(drawing.tree):
        per_level.append(lift_edge_set(state, k))
    return state.trace("edges", stretch=factor, rpw=state.rpw, d=d, per_level=per_level)
