"""Mutable bookkeeping shared by the lifting algorithms."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .canonical import CanonicalLayout, canonical_drawing
from .core import GridDrawing, Point, RootedTree, metrics
from .decomposition import HeavyDecomposition, heavy_decomposition
from .primitives import MorphStep, make_step


class LiftError(RuntimeError):
    pass


@dataclass
class MorphTrace:
    """A chained sequence of linear morphing steps."""

    steps: list[MorphStep]
    algorithm: str = ""
    info: dict = field(default_factory=dict)

    @property
    def initial(self) -> GridDrawing:
        return self.steps[0].src

    @property
    def final(self) -> GridDrawing:
        return self.steps[-1].dst

    @property
    def tree(self) -> RootedTree:
        return self.initial.tree

    def __len__(self) -> int:
        return len(self.steps)

    def drawings(self) -> list[GridDrawing]:
        return [self.steps[0].src] + [s.dst for s in self.steps]

    def reversed(self) -> "MorphTrace":
        return MorphTrace([s.reversed() for s in reversed(self.steps)], self.algorithm, dict(self.info))


class LiftState:
    """Current drawing plus which vertices already sit in canonical position.

    A vertex is *lifted* once it has been placed canonically relative to its
    parent.  The lifted subtree T'(v) of any vertex is v together with the
    complete subtrees of its lifted children.
    """

    def __init__(self, drawing: GridDrawing, heavy: HeavyDecomposition | None = None,
                 diameter: int | None = None):
        self.tree = drawing.tree
        self.heavy = heavy or heavy_decomposition(self.tree)
        self.canon: CanonicalLayout = canonical_drawing(self.tree, self.heavy)
        self.rpw = self.heavy.rpw[self.tree.root]
        self.size = self.tree.subtree_sizes()
        self.n = self.tree.n
        self.drawing = drawing
        self.diameter = diameter
        self.steps: list[MorphStep] = []
        self.lifted: set[int] = set()
        xs = [p[0] for p in drawing.pos]
        ys = [p[1] for p in drawing.pos]
        # doubled centre keeps the comparison integral
        self.centre2 = (min(xs) + max(xs), min(ys) + max(ys))

    def pos(self, v: int) -> Point:
        return self.drawing.pos[v]

    def emit(self, updates: Mapping[int, Point], kind: str, note: str = "") -> MorphStep | None:
        step = make_step(self.drawing, updates, kind, note)
        if step.is_identity:
            return None
        self.steps.append(step)
        self.drawing = step.dst
        return step

    def emit_all(self, steps: Iterable[MorphStep]):
        for s in steps:
            if not s.is_identity:
                self.steps.append(s)
                self.drawing = s.dst

    def lifted_subtree(self, v: int) -> list[int]:
        out = [v]
        for c in self.tree.children[v]:
            if c in self.lifted:
                out.extend(self.tree.subtree(c))
        return out

    def canon_offset(self, u: int, v: int) -> Point:
        return self.canon.offset(u, v)

    def toward_centre(self, coord: int, axis: int) -> int:
        """+1 if the stretched box extends further on the positive side of ``coord``."""
        return 1 if 2 * coord <= self.centre2[axis] else -1

    def check_invariants(self) -> list[str]:
        """Violations of the lifting invariants; empty when both hold.

        (I) every lifted subtree is the relative canonical layout translated to
        its root; (II) every vertex that is not lifted lies in the z = 0 plane.
        """
        problems = []
        for v in range(self.n):
            if v not in self.lifted and self.pos(v)[2] != 0:
                problems.append(f"unlifted vertex {v} off the plane")
            pv = self.pos(v)
            for u in self.lifted_subtree(v):
                off = self.canon_offset(u, v)
                want = (pv[0] + off[0], pv[1] + off[1], pv[2] + off[2])
                if self.pos(u) != want:
                    problems.append(f"vertex {u} not canonical relative to {v}")
                    break
        return problems

    def trace(self, algorithm: str, **info) -> MorphTrace:
        return MorphTrace(list(self.steps), algorithm, info)


def input_metrics(drawing: GridDrawing):
    return metrics(drawing)
