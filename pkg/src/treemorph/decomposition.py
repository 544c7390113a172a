"""Edge decompositions of a rooted tree into paths and depth-level edge sets."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import isqrt

from .core import RootedTree

Edge = tuple[int, int]


@dataclass(frozen=True)
class TreePath:
    """Downward path ``vertices[0] -> ... -> vertices[-1]``; ``vertices[0]`` is the head."""

    vertices: tuple[int, ...]

    @property
    def head(self) -> int:
        return self.vertices[0]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.vertices[1:]

    @property
    def edges(self) -> list[Edge]:
        return list(zip(self.vertices, self.vertices[1:]))

    def __len__(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1


@dataclass(frozen=True)
class PathDecomposition:
    paths: tuple[TreePath, ...]  # lifting order
    deletion_order: tuple[int, ...]  # deletion_order[i] = index in `paths` of the i-th deleted path


@dataclass(frozen=True)
class HeavyDecomposition:
    rpw: tuple[int, ...]
    heavy_child: tuple[int | None, ...]
    heavy_paths: tuple[TreePath, ...]  # first one starts at the root
    path_of: tuple[int, ...]  # vertex -> index of the heavy path whose chain contains it
    path_parent: tuple[int | None, ...]
    light_children_order: tuple[tuple[int, ...], ...]

    def light_children(self, tree: RootedTree, v: int) -> tuple[int, ...]:
        return tuple(c for c in tree.children[v] if c != self.heavy_child[v])


@dataclass(frozen=True)
class TradeoffPartition:
    long_paths: tuple[TreePath, ...]  # lifting order
    short_root: tuple[int, ...]  # vertex -> root of its Short-tree
    short_depth: tuple[int, ...]  # vertex -> depth inside its Short-tree
    short_edge_sets: tuple[tuple[Edge, ...], ...]  # Sh_1 .. Sh_s

    @property
    def threshold(self) -> int:
        return len(self.short_edge_sets)


def _heights(tree: RootedTree) -> tuple[list[int], list[int]]:
    """Height of every subtree and its deepest leaf (smallest id on ties)."""
    height = [0] * tree.n
    leaf = list(range(tree.n))
    for v in reversed(tree.order):
        for c in tree.children[v]:
            key = (height[c] + 1, -leaf[c])
            if key > (height[v], -leaf[v]) or leaf[v] == v:
                height[v], leaf[v] = height[c] + 1, leaf[c]
    return height, leaf


def long_path_decomposition(tree: RootedTree) -> PathDecomposition:
    height, leaf = _heights(tree)

    def descend(v: int, allowed) -> list[int]:
        path = [v]
        kids = allowed
        while kids:
            c = max(kids, key=lambda c: (height[c], -leaf[c]))
            path.append(c)
            kids = tree.children[c]
        return path

    deleted: list[TreePath] = []
    queue = deque([(tree.root, tree.children[tree.root])])
    while queue:
        head, allowed = queue.popleft()
        if not allowed:
            continue
        path = descend(head, allowed)
        deleted.append(TreePath(tuple(path)))
        on_path = set(path)
        for i, v in enumerate(path):
            rest = tuple(c for c in (allowed if i == 0 else tree.children[v]) if c not in on_path)
            if rest:
                queue.append((v, rest))
    paths = tuple(reversed(deleted))
    k = len(paths)
    return PathDecomposition(paths=paths, deletion_order=tuple(k - 1 - i for i in range(k)))


def rooted_pathwidth(tree: RootedTree) -> list[int]:
    rpw = [1] * tree.n
    for v in reversed(tree.order):
        kids = tree.children[v]
        if kids:
            best = max(rpw[c] for c in kids)
            ties = sum(1 for c in kids if rpw[c] == best)
            rpw[v] = best + 1 if ties > 1 else best
    return rpw


def heavy_decomposition(tree: RootedTree) -> HeavyDecomposition:
    rpw = rooted_pathwidth(tree)
    heavy: list[int | None] = [None] * tree.n
    for v in range(tree.n):
        kids = tree.children[v]
        if kids:
            heavy[v] = max(kids, key=lambda c: (rpw[c], -c))

    paths: list[TreePath] = []
    path_of = [-1] * tree.n
    path_parent: list[int | None] = []
    light_order: list[tuple[int, ...]] = []
    queue = deque([(tree.root, None)])
    while queue:
        top, parent_path = queue.popleft()
        chain = [top]
        while heavy[chain[-1]] is not None:
            chain.append(heavy[chain[-1]])
        idx = len(paths)
        for v in chain:
            path_of[v] = idx
        above = [] if tree.parent[top] is None else [tree.parent[top]]
        paths.append(TreePath(tuple(above + chain)))
        path_parent.append(parent_path)
        order = []
        for v in reversed(chain):
            order.extend(sorted((c for c in tree.children[v] if c != heavy[v]), reverse=True))
        light_order.append(tuple(order))
        for v in chain:
            for c in tree.children[v]:
                if c != heavy[v]:
                    queue.append((c, idx))
    return HeavyDecomposition(
        rpw=tuple(rpw),
        heavy_child=tuple(heavy),
        heavy_paths=tuple(paths),
        path_of=tuple(path_of),
        path_parent=tuple(path_parent),
        light_children_order=tuple(light_order),
    )


def path_tree_height(heavy: HeavyDecomposition) -> int:
    """Number of heavy paths on the longest chain of the path tree."""
    best = 0
    for i in range(len(heavy.heavy_paths)):
        h, j = 1, heavy.path_parent[i]
        while j is not None:
            h, j = h + 1, heavy.path_parent[j]
        best = max(best, h)
    return best


def depth_edge_sets(tree: RootedTree) -> list[list[Edge]]:
    """K_1..K_m: K_i holds the edges whose upper endpoint has depth m - i."""
    m = max(tree.depth)
    sets: list[list[Edge]] = [[] for _ in range(m)]
    for p, c in tree.edges:
        sets[m - tree.depth[p] - 1].append((p, c))
    for s in sets:
        s.sort()
    return sets


def tradeoff_partition(tree: RootedTree, lp: PathDecomposition | None = None) -> TradeoffPartition:
    n = tree.n
    s = isqrt(n)
    lp = lp or long_path_decomposition(tree)
    long_paths = tuple(p for p in lp.paths if len(p) * len(p) >= n)
    long_edges = {e for p in long_paths for e in p.edges}

    short_root = list(range(n))
    short_depth = [0] * n
    for v in tree.order:
        p = tree.parent[v]
        if p is not None and (p, v) not in long_edges:
            short_root[v] = short_root[p]
            short_depth[v] = short_depth[p] + 1

    sets: list[list[Edge]] = [[] for _ in range(s)]
    for p, c in tree.edges:
        if (p, c) in long_edges:
            continue
        lvl = s - short_depth[c] + 1
        if not 1 <= lvl <= s:
            raise AssertionError(f"Short-tree depth {short_depth[c]} exceeds {s}")
        sets[lvl - 1].append((p, c))
    return TradeoffPartition(
        long_paths=long_paths,
        short_root=tuple(short_root),
        short_depth=tuple(short_depth),
        short_edge_sets=tuple(tuple(sorted(x)) for x in sets),
    )
