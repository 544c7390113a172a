"""Dispatch between the three algorithms and compose two-drawing morphs."""
from __future__ import annotations

from .core import GridDrawing, sub
from .lift_edges import morph_to_canonical_edges
from .lift_paths import morph_to_canonical_paths
from .primitives import translate_step
from .state import LiftError, MorphTrace
from .tradeoff import morph_to_canonical_tradeoff

ALGORITHMS = {
    "paths": morph_to_canonical_paths,
    "edges": morph_to_canonical_edges,
    "tradeoff": morph_to_canonical_tradeoff,
}


def morph_to_canonical(drawing: GridDrawing, alg: str = "paths") -> MorphTrace:
    try:
        fn = ALGORITHMS[alg]
    except KeyError:
        raise ValueError(f"unknown algorithm {alg!r}; choose from {', '.join(ALGORITHMS)}") from None
    return fn(drawing)


def morph_between(first: GridDrawing, second: GridDrawing, alg: str = "paths") -> MorphTrace:
    """Morph ``first`` to ``second`` through their canonical drawings.

    The two canonical drawings differ by a translation, which is one extra
    rigid step.
    """
    if first.tree != second.tree:
        raise LiftError("the two drawings must be of the same rooted tree")
    fwd = morph_to_canonical(first, alg)
    back = morph_to_canonical(second, alg).reversed()
    steps = list(fwd.steps)
    shift = sub(back.initial.pos[0], fwd.final.pos[0])
    if shift != (0, 0, 0):
        steps.append(translate_step(fwd.final, range(first.tree.n), shift))
    steps.extend(back.steps)
    return MorphTrace(steps, alg + "+reverse", {"forward": fwd.info, "backward": back.info})
