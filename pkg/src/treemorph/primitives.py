"""Single linear morphing steps with integral endpoints.

A step is a pair of drawings of the same tree; vertex ``v`` travels from
``src.pos[v]`` to ``dst.pos[v]`` at constant speed.  Every constructor here
returns steps whose endpoints lie on the integer lattice.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import GridDrawing, Point, add, sub


class PrimitiveError(ValueError):
    pass


KINDS = (
    "stretch", "map_pole", "rotate", "h_rotate", "shrink",
    "pinwheel", "translate", "lift-composite",
)


@dataclass(frozen=True)
class MorphStep:
    src: GridDrawing
    dst: GridDrawing
    kind: str
    moved: frozenset[int] = field(default_factory=frozenset)
    note: str = ""

    def __post_init__(self):
        if self.src.tree != self.dst.tree:
            raise PrimitiveError("step endpoints draw different trees")
        if self.kind not in KINDS:
            raise PrimitiveError(f"unknown step kind {self.kind!r}")

    @property
    def is_identity(self) -> bool:
        return self.src.pos == self.dst.pos

    def at(self, num: int, den: int) -> list[tuple]:
        """Positions at t = num/den, scaled by ``den`` so they stay integral."""
        a, b = den - num, num
        return [
            (a * p[0] + b * q[0], a * p[1] + b * q[1], a * p[2] + b * q[2])
            for p, q in zip(self.src.pos, self.dst.pos)
        ]

    def reversed(self) -> "MorphStep":
        return MorphStep(self.dst, self.src, self.kind, self.moved, self.note)


def make_step(drawing: GridDrawing, updates: Mapping[int, Point], kind: str, note: str = "") -> MorphStep:
    pos = list(drawing.pos)
    for v, p in updates.items():
        pos[v] = p
    dst = drawing.with_positions(pos)
    moved = frozenset(v for v in updates if drawing.pos[v] != dst.pos[v])
    return MorphStep(drawing, dst, kind, moved, note)


def stretch(drawing: GridDrawing, factor: int) -> MorphStep:
    if not isinstance(factor, int) or factor <= 0:
        raise PrimitiveError(f"stretch factor must be a positive integer, got {factor!r}")
    if not drawing.planar:
        raise PrimitiveError("stretching expects a planar drawing")
    return make_step(
        drawing,
        {v: (p[0] * factor, p[1] * factor, 0) for v, p in enumerate(drawing.pos)},
        "stretch",
        note=f"S={factor}",
    )


def translate_step(drawing: GridDrawing, moved: Iterable[int], vec: Point, note: str = "") -> MorphStep:
    return make_step(drawing, {v: add(drawing.pos[v], vec) for v in moved}, "translate", note)


# Pole mappings -------------------------------------------------------------
#
# A pole is an axis-parallel line.  For the vertical pole (axis "z") the
# half-planes live in (x, y); for the horizontal pole (axis "x") they live in
# (y, z).  A half-plane is named by a primitive integer direction; a point of
# the half-plane is anchor + k * direction (+ the coordinate along the pole).

_PLANE = {"z": (0, 1, 2), "x": (1, 2, 0)}


@dataclass(frozen=True)
class PoleFrame:
    anchor: tuple[int, int]
    direction: tuple[int, int]

    def __post_init__(self):
        from math import gcd

        a, b = self.direction
        if (a, b) == (0, 0) or gcd(a, b) != 1:
            raise PrimitiveError(f"{self.direction} is not a primitive direction")


@dataclass(frozen=True)
class MappingSpec:
    frame_from: PoleFrame
    frame_to: PoleFrame
    axis: str = "z"

    def __post_init__(self):
        if self.frame_from.anchor != self.frame_to.anchor:
            raise PrimitiveError("half-planes of a mapping must share their pole")
        (a, b), (c, d) = self.frame_from.direction, self.frame_to.direction
        if a * d - b * c == 0:
            raise PrimitiveError("mapping between half-planes at angle 0 or pi")
        if self.axis not in _PLANE:
            raise PrimitiveError(f"unknown pole axis {self.axis!r}")

    @property
    def vector(self) -> tuple[int, int]:
        """Unnormalised vector of mapping (shared by every moved vertex up to scale)."""
        (a, b), (c, d) = self.frame_from.direction, self.frame_to.direction
        return c - a, d - b


def lattice_index(p: Point, frame: PoleFrame, axis: str = "z") -> int:
    """k with p = anchor + k * direction in the half-plane's own coordinates."""
    i, j, _ = _PLANE[axis]
    du, dv = p[i] - frame.anchor[0], p[j] - frame.anchor[1]
    a, b = frame.direction
    if a * dv - b * du != 0:
        raise PrimitiveError(f"{p} is not on the half-plane {frame}")
    k = du // a if a else dv // b
    if k < 0 or (k * a, k * b) != (du, dv):
        raise PrimitiveError(f"{p} is not a lattice point of the half-plane {frame}")
    return k


def _place(p: Point, frame: PoleFrame, k: int, axis: str) -> Point:
    i, j, _ = _PLANE[axis]
    out = list(p)
    out[i] = frame.anchor[0] + k * frame.direction[0]
    out[j] = frame.anchor[1] + k * frame.direction[1]
    return tuple(out)


def map_around_pole(
    drawing: GridDrawing, moved: Iterable[int], spec: MappingSpec, kind: str = "map_pole"
) -> MorphStep:
    """Index-preserving transfer of ``moved`` from one half-plane to another."""
    updates = {}
    for v in moved:
        p = drawing.pos[v]
        k = lattice_index(p, spec.frame_from, spec.axis)
        updates[v] = _place(p, spec.frame_to, k, spec.axis)
    return make_step(drawing, updates, kind, note=f"{spec.frame_from.direction}->{spec.frame_to.direction}")


AXIS_DIRS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def rotate_quarter(drawing, moved, anchor, src_dir, sense: int) -> MorphStep:
    """Quarter turn about the vertical pole through ``anchor``; sense +1 is counterclockwise."""
    if src_dir not in AXIS_DIRS or sense not in (1, -1):
        raise PrimitiveError("rotation needs an axis-parallel half-plane and sense +-1")
    a, b = src_dir
    dst = (-b, a) if sense == 1 else (b, -a)
    spec = MappingSpec(PoleFrame(tuple(anchor), src_dir), PoleFrame(tuple(anchor), dst), "z")
    return map_around_pole(drawing, moved, spec, kind="rotate")


def rotate_about_horizontal_pole(drawing, moved, anchor_yz, src_dir, dst_dir) -> MorphStep:
    """Quarter turn about the line parallel to 0X through ``(y, z) = anchor_yz``."""
    if src_dir not in AXIS_DIRS or dst_dir not in AXIS_DIRS:
        raise PrimitiveError("horizontal rotation needs axis-parallel half-planes")
    spec = MappingSpec(PoleFrame(tuple(anchor_yz), src_dir), PoleFrame(tuple(anchor_yz), dst_dir), "x")
    return map_around_pole(drawing, moved, spec, kind="h_rotate")


# Frames: a layout of canonical offsets (cx, cz) placed as root + cx*W + cz*D --

def place_offsets(root: Point, offsets: Mapping[int, Point], width_axis: Point, depth_axis: Point) -> dict[int, Point]:
    out = {}
    for u, (cx, _cy, cz) in offsets.items():
        out[u] = (
            root[0] + cx * width_axis[0] + cz * depth_axis[0],
            root[1] + cx * width_axis[1] + cz * depth_axis[1],
            root[2] + cx * width_axis[2] + cz * depth_axis[2],
        )
    return out


def shrink_step(drawing, root: int, full: Mapping[int, Point], shrunk: Mapping[int, Point],
                width_axis=(1, 0, 0), depth_axis=(0, 0, 1), reverse: bool = False) -> MorphStep:
    """Compact (or, with ``reverse``, expand) a placed layout along its depth axis.

    ``full`` and ``shrunk`` are offset maps over the same vertex set, as
    produced by :func:`treemorph.canonical.shrunken_canonical`.
    """
    r = drawing.pos[root]
    a = place_offsets(r, full, width_axis, depth_axis)
    b = place_offsets(r, shrunk, width_axis, depth_axis)
    if reverse:
        a, b = b, a
    for u, p in a.items():
        if drawing.pos[u] != p:
            raise PrimitiveError(f"vertex {u} is not where the layout puts it")
    return make_step(drawing, b, "shrink")


def pinwheel_turn(drawing: GridDrawing, moved: Iterable[int], root: int, quarter_turns: int, sense: int = 1) -> list[MorphStep]:
    """Rotate a layout lying in the horizontal plane of ``root`` by quarter turns about it."""
    if quarter_turns not in (1, 2, 3, 4):
        raise PrimitiveError("quarter_turns must be 1..4")
    moved = list(moved)
    cx, cy, cz = drawing.pos[root]
    if any(drawing.pos[v][2] != cz for v in moved):
        raise PrimitiveError("pinwheel layout is not horizontal")
    steps = []
    for _ in range(quarter_turns):
        upd = {}
        for v in moved:
            dx, dy = drawing.pos[v][0] - cx, drawing.pos[v][1] - cy
            dx, dy = (-dy, dx) if sense == 1 else (dy, -dx)
            upd[v] = (cx + dx, cy + dy, cz)
        step = make_step(drawing, upd, "pinwheel")
        steps.append(step)
        drawing = step.dst
    return steps


def identity_step(drawing: GridDrawing, kind: str = "translate") -> MorphStep:
    return MorphStep(drawing, drawing, kind)


def offsets_of(drawing: GridDrawing, root: int, verts: Iterable[int]) -> dict[int, Point]:
    r = drawing.pos[root]
    return {u: sub(drawing.pos[u], r) for u in verts}
