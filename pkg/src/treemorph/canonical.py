"""Canonical 3D drawing of a rooted tree in the x >= 0, y = 0 quarter plane."""
from __future__ import annotations

from dataclasses import dataclass

from .core import GridDrawing, Point, RootedTree, sub
from .decomposition import HeavyDecomposition, heavy_decomposition


@dataclass(frozen=True)
class CanonicalLayout:
    pos: dict[int, Point]

    def offset(self, u: int, v: int) -> Point:
        """Position of ``u`` relative to ``v``."""
        return sub(self.pos[u], self.pos[v])


@dataclass(frozen=True)
class ShrunkenLayout:
    pos: dict[int, Point]
    kept_children: tuple[int, ...]
    height: int


def canonical_drawing(tree: RootedTree, heavy: HeavyDecomposition | None = None) -> CanonicalLayout:
    heavy = heavy or heavy_decomposition(tree)
    size = tree.subtree_sizes()
    pos: dict[int, Point] = {}
    stack: list[tuple[int, Point]] = [(tree.root, (0, 0, 0))]
    while stack:
        top, (x, y, z) = stack.pop()
        v, prev = top, None
        while v is not None:
            if prev is not None:
                z += size[prev] - size[v]
            pos[v] = (x, y, z)
            lz = z + 1
            for c in heavy.light_children(tree, v):
                stack.append((c, (x + 1, y, lz)))
                lz += size[c]
            prev, v = v, heavy.heavy_child[v]
    return CanonicalLayout(pos)


def relative_canonical(canon: CanonicalLayout, tree: RootedTree, v: int) -> CanonicalLayout:
    return CanonicalLayout({u: canon.offset(u, v) for u in tree.subtree(v)})


def shrunken_canonical(
    canon: CanonicalLayout, tree: RootedTree, v: int, kept
) -> ShrunkenLayout:
    """Drop the children of ``v`` not in ``kept`` and close the z-gaps they leave.

    Positions are relative to ``v``.  Each kept child, with its subtree, moves
    down by the total size of the removed siblings beneath it.
    """
    kept = set(kept)
    kids = tree.children[v]
    if not kept <= set(kids):
        raise ValueError(f"{sorted(kept - set(kids))} are not children of {v}")
    size = tree.subtree_sizes()
    by_z = sorted(kids, key=lambda c: canon.pos[c][2])
    pos: dict[int, Point] = {v: (0, 0, 0)}
    drop = 0
    for c in by_z:
        if c not in kept:
            drop += size[c]
            continue
        for u in tree.subtree(c):
            dx, dy, dz = canon.offset(u, v)
            pos[u] = (dx, dy, dz - drop)
    order = tuple(c for c in by_z if c in kept)
    return ShrunkenLayout(pos, order, 1 + sum(size[c] for c in order))


def canonical_as_drawing(tree: RootedTree, canon: CanonicalLayout, anchor: Point = (0, 0, 0)) -> GridDrawing:
    ax, ay, az = anchor
    return GridDrawing(tree, tuple((p[0] + ax, p[1] + ay, p[2] + az) for p in (canon.pos[v] for v in range(tree.n))))
