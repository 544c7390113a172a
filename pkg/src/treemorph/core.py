"""Rooted trees, integer grid drawings and exact lattice geometry."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

Point = tuple[int, int, int]


class TreeError(ValueError):
    pass


class DrawingError(ValueError):
    pass


@dataclass(frozen=True)
class RootedTree:
    """Rooted tree on vertex ids ``0..n-1``.

    ``children[v]`` is the ordered tuple of children of ``v``; ``parent[root]``
    is ``None``.  Build from an edge list with :meth:`from_edges`.
    """

    n: int
    root: int
    children: tuple[tuple[int, ...], ...]
    parent: tuple[int | None, ...]
    depth: tuple[int, ...] = field(compare=False)
    order: tuple[int, ...] = field(compare=False, repr=False)  # BFS order

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], root: int = 0) -> "RootedTree":
        if n < 1:
            raise TreeError("a tree needs at least one vertex")
        if not 0 <= root < n:
            raise TreeError(f"root {root} out of range")
        edges = [tuple(e) for e in edges]
        if len(edges) != n - 1:
            raise TreeError(f"expected {n - 1} edges, got {len(edges)}")
        parent: list[int | None] = [None] * n
        kids: list[list[int]] = [[] for _ in range(n)]
        for p, c in edges:
            if not (0 <= p < n and 0 <= c < n) or p == c:
                raise TreeError(f"bad edge {(p, c)}")
            if parent[c] is not None or c == root:
                raise TreeError(f"vertex {c} has two parents")
            parent[c] = p
            kids[p].append(c)
        order = [root]
        depth = [0] * n
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            for c in kids[v]:
                depth[c] = depth[v] + 1
                order.append(c)
        if len(order) != n:
            raise TreeError("edges do not form a tree rooted at root")
        return cls(
            n=n,
            root=root,
            children=tuple(tuple(sorted(k)) for k in kids),
            parent=tuple(parent),
            depth=tuple(depth),
            order=tuple(order),
        )

    @property
    def edges(self) -> list[tuple[int, int]]:
        """(parent, child) pairs in BFS order of the child."""
        return [(self.parent[v], v) for v in self.order if v != self.root]

    def subtree_sizes(self) -> list[int]:
        size = [1] * self.n
        for v in reversed(self.order):
            p = self.parent[v]
            if p is not None:
                size[p] += size[v]
        return size

    def subtree(self, v: int) -> list[int]:
        """Vertices of T(v) in preorder."""
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (self.parent[v] is not None)


def depth_of_tree(tree: RootedTree) -> int:
    return max(tree.depth)


def subtree_size(tree: RootedTree, v: int) -> int:
    return tree.subtree_sizes()[v]


def max_degree(tree: RootedTree) -> int:
    return max(tree.degree(v) for v in range(tree.n))


@dataclass(frozen=True)
class GridDrawing:
    tree: RootedTree
    pos: tuple[Point, ...]

    def __post_init__(self):
        if len(self.pos) != self.tree.n:
            raise DrawingError("one position per vertex required")
        for p in self.pos:
            if len(p) != 3 or not all(type(c) is int for c in p):
                raise DrawingError(f"non-integral position {p!r}")
        if len(set(self.pos)) != len(self.pos):
            raise DrawingError("two vertices share a grid point")

    @classmethod
    def build(cls, tree: RootedTree, pos: Iterable[Sequence[int]]) -> "GridDrawing":
        pts = []
        for p in pos:
            p = tuple(int(c) for c in p)
            if len(p) == 2:
                p = (p[0], p[1], 0)
            pts.append(p)
        return cls(tree, tuple(pts))

    @property
    def planar(self) -> bool:
        return all(p[2] == 0 for p in self.pos)

    def with_positions(self, pos: Sequence[Point]) -> "GridDrawing":
        return GridDrawing(self.tree, tuple(pos))

    def translated(self, vec: Point) -> "GridDrawing":
        return self.with_positions([add(p, vec) for p in self.pos])


@dataclass(frozen=True)
class Metrics:
    l: int
    w: int
    h: int
    d: int


def add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def scale(p: Point, c: int) -> Point:
    return (p[0] * c, p[1] * c, p[2] * c)


def dot(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def cross(p, q):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def ceil_sqrt(x: int) -> int:
    r = isqrt(x)
    return r if r * r == x else r + 1


def diameter(pos: Sequence[Point]) -> int:
    """Ceiling of the largest pairwise distance, by exact integer square root."""
    best = 0
    for i in range(len(pos)):
        pi = pos[i]
        for j in range(i + 1, len(pos)):
            best = max(best, dot(sub(pi, pos[j]), sub(pi, pos[j])))
    return ceil_sqrt(best)


def metrics(drawing: GridDrawing) -> Metrics:
    xs, ys, zs = zip(*drawing.pos)
    return Metrics(
        l=max(xs) - min(xs),
        w=max(ys) - min(ys),
        h=max(zs) - min(zs),
        d=diameter(drawing.pos),
    )


def point_segment_distance_sq(p, a, b) -> Fraction:
    """Squared distance from point ``p`` to segment ``ab``, exact."""
    ab = sub(b, a)
    ap = sub(p, a)
    den = dot(ab, ab)
    if den == 0:
        return Fraction(dot(ap, ap))
    num = dot(ap, ab)
    if num <= 0:
        return Fraction(dot(ap, ap))
    if num >= den:
        bp = sub(p, b)
        return Fraction(dot(bp, bp))
    # |ap|^2 - (ap.ab)^2/|ab|^2
    return Fraction(dot(ap, ap) * den - num * num, den)


def vertex_edge_distance_sq(drawing: GridDrawing, v: int, e: tuple[int, int]) -> Fraction:
    if v in e:
        raise ValueError(f"edge {e} is incident to vertex {v}")
    return point_segment_distance_sq(drawing.pos[v], drawing.pos[e[0]], drawing.pos[e[1]])


def segment_distance_sq(p0, p1, q0, q1) -> Fraction:
    """Exact squared distance between segments ``p0p1`` and ``q0q1`` in 3D.

    Coordinates may be ints or Fractions.  The minimum of the convex quadratic
    over the parameter square lies either at an interior stationary point or
    on the boundary, where it reduces to point-segment distances.
    """
    d1 = sub(p1, p0)
    d2 = sub(q1, q0)
    r = sub(p0, q0)
    a = dot(d1, d1)
    e = dot(d2, d2)
    b = dot(d1, d2)
    c = dot(d1, r)
    f = dot(d2, r)
    den = a * e - b * b
    best = None
    if den != 0:
        s = Fraction(b * f - c * e, den)
        t = Fraction(a * f - b * c, den)
        if 0 < s < 1 and 0 < t < 1:
            diff = (
                r[0] + s * d1[0] - t * d2[0],
                r[1] + s * d1[1] - t * d2[1],
                r[2] + s * d1[2] - t * d2[2],
            )
            best = dot(diff, diff)
    for cand in (
        point_segment_distance_sq(p0, q0, q1),
        point_segment_distance_sq(p1, q0, q1),
        point_segment_distance_sq(q0, p0, p1),
        point_segment_distance_sq(q1, p0, p1),
    ):
        if best is None or cand < best:
            best = cand
    return Fraction(best)


def primitive(dx: int, dy: int) -> tuple[int, int]:
    """Shortest lattice step in the direction of ``(dx, dy)``."""
    from math import gcd

    g = gcd(dx, dy)
    if g == 0:
        raise ValueError("zero direction has no primitive step")
    return dx // g, dy // g
