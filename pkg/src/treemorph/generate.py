"""Random rooted trees and planar grid layouts for them."""
from __future__ import annotations

import random

from .core import DrawingError, GridDrawing, RootedTree

SHAPES = ("random", "path", "star", "caterpillar", "balanced")


def random_tree(n: int, shape: str = "random", rng: random.Random | None = None) -> RootedTree:
    if n < 1:
        raise ValueError("n must be positive")
    rng = rng or random.Random(0)
    if shape == "random":
        parent = [None] + [rng.randrange(i) for i in range(1, n)]
    elif shape == "path":
        parent = [None] + list(range(n - 1))
    elif shape == "star":
        parent = [None] + [0] * (n - 1)
    elif shape == "caterpillar":
        spine = max(1, (n + 1) // 2)
        parent = [None] + list(range(spine - 1)) + [rng.randrange(spine) for _ in range(n - spine)]
    elif shape == "balanced":
        parent = [None] + [(i - 1) // 2 for i in range(1, n)]
    else:
        raise ValueError(f"unknown shape {shape!r}; choose from {', '.join(SHAPES)}")
    return RootedTree.from_edges(n, [(parent[i], i) for i in range(1, n)], root=0)


def tidy_layout(tree: RootedTree) -> GridDrawing:
    """x = preorder rank, y = -depth.

    Every subtree owns a contiguous x-range and edges join consecutive
    levels, so the layout is crossing-free.
    """
    pos = [None] * tree.n
    for rank, v in enumerate(tree.subtree(tree.root)):
        pos[v] = (rank, -tree.depth[v], 0)
    return GridDrawing(tree, tuple(pos))


def generate(n: int, seed: int = 0, shape: str = "random") -> GridDrawing:
    from .verifier import check_drawing

    drawing = tidy_layout(random_tree(n, shape, random.Random(seed)))
    bad = check_drawing(drawing)
    if bad:
        raise DrawingError(f"generated layout is not crossing-free: {bad[0]}")
    return drawing


def random_planar_drawing(n: int, rng: random.Random, side: int | None = None) -> GridDrawing:
    """Euclidean minimum spanning tree of ``n`` distinct random lattice points.

    A crossing pair of MST edges could be swapped for a strictly shorter
    pair, so the result is crossing-free; it is rooted at vertex 0.
    """
    side = side or max(4, 2 * n)
    pts = set()
    while len(pts) < n:
        pts.add((rng.randrange(side), rng.randrange(side)))
    pts = list(pts)
    rng.shuffle(pts)
    inf = float("inf")
    best = [inf] * n
    link = [-1] * n
    done = [False] * n
    best[0] = 0
    adj = [[] for _ in range(n)]
    for _ in range(n):
        u = min((i for i in range(n) if not done[i]), key=lambda i: (best[i], i))
        done[u] = True
        if link[u] >= 0:
            adj[link[u]].append(u)
            adj[u].append(link[u])
        for w in range(n):
            if not done[w]:
                dx, dy = pts[u][0] - pts[w][0], pts[u][1] - pts[w][1]
                dd = dx * dx + dy * dy
                if dd < best[w]:
                    best[w], link[w] = dd, u
    edges, seen, stack = [], {0}, [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                edges.append((u, w))
                stack.append(w)
    tree = RootedTree.from_edges(n, edges, root=0)
    return GridDrawing(tree, tuple((x, y, 0) for x, y in pts))
