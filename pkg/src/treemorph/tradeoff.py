"""Combined scheme: short subtrees by depth levels, then the few long paths."""
from __future__ import annotations

from .core import GridDrawing, metrics
from .decomposition import TradeoffPartition, tradeoff_partition
from .lift_edges import lift_edge_set, stretch_factor_edges
from .lift_paths import lift_path
from .primitives import stretch
from .state import LiftError, LiftState, MorphTrace


def morph_to_canonical_tradeoff(drawing: GridDrawing, part: TradeoffPartition | None = None,
                                check_input: bool = True) -> MorphTrace:
    """O(sqrt(n) log(max degree)) step morph to the canonical drawing."""
    if not drawing.planar:
        raise LiftError("input drawing must lie in the z = 0 plane")
    if check_input:
        from .verifier import check_drawing

        bad = check_drawing(drawing)
        if bad:
            raise LiftError(f"input drawing is not crossing-free: {bad[0]}")
    tree = drawing.tree
    d = metrics(drawing).d
    part = part or tradeoff_partition(tree)
    probe = LiftState(drawing)
    factor = stretch_factor_edges(probe.rpw, d) if tree.n > 1 else 1
    first = stretch(drawing, factor)
    state = LiftState(first.dst, probe.heavy, d)
    state.steps.append(first)
    short_steps = [lift_edge_set(state, list(sh)) for sh in part.short_edge_sets]
    before = len(state.steps)
    for path in part.long_paths:
        lift_path(state, path)
    return state.trace(
        "tradeoff", stretch=factor, rpw=state.rpw, d=d,
        short_steps=short_steps, long_steps=len(state.steps) - before,
        long_paths=len(part.long_paths),
    )
