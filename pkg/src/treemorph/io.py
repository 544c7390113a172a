"""JSON (de)serialisation of drawings, decompositions and traces."""
from __future__ import annotations

import json
from pathlib import Path

from .core import DrawingError, GridDrawing, RootedTree, TreeError
from .decomposition import HeavyDecomposition, PathDecomposition
from .primitives import MorphStep
from .state import MorphTrace


class InputError(ValueError):
    pass


def drawing_to_dict(drawing: GridDrawing) -> dict:
    t = drawing.tree
    return {
        "n": t.n,
        "root": t.root,
        "edges": [[p, c] for p, c in sorted(t.edges, key=lambda e: e[1])],
        "positions": [list(p) for p in drawing.pos],
    }


def drawing_from_dict(doc: dict) -> GridDrawing:
    try:
        n = int(doc["n"])
        tree = RootedTree.from_edges(n, [tuple(e) for e in doc["edges"]], int(doc.get("root", 0)))
        pos = doc["positions"]
        if any(len(p) not in (2, 3) for p in pos):
            raise InputError("positions must have two or three coordinates")
        if any(not isinstance(c, int) or isinstance(c, bool) for p in pos for c in p):
            raise InputError("positions must be integers")
        return GridDrawing.build(tree, pos)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed drawing document: {exc}") from exc
    except (TreeError, DrawingError) as exc:
        raise InputError(str(exc)) from exc


def trace_to_dict(trace: MorphTrace) -> dict:
    return {
        "algorithm": trace.algorithm,
        "info": trace.info,
        "initial": drawing_to_dict(trace.initial),
        "steps": [{"kind": s.kind, "note": s.note, "positions": [list(p) for p in s.dst.pos]}
                  for s in trace.steps],
    }


def trace_from_dict(doc: dict) -> MorphTrace:
    try:
        cur = drawing_from_dict(doc["initial"])
        steps = []
        for s in doc["steps"]:
            nxt = cur.with_positions([tuple(p) for p in s["positions"]])
            moved = frozenset(v for v in range(cur.tree.n) if cur.pos[v] != nxt.pos[v])
            steps.append(MorphStep(cur, nxt, s["kind"], moved, s.get("note", "")))
            cur = nxt
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed trace document: {exc}") from exc
    except (TreeError, DrawingError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    if not steps:
        raise InputError("trace has no steps")
    return MorphTrace(steps, doc.get("algorithm", ""), dict(doc.get("info", {})))


def decomposition_to_dict(lp: PathDecomposition, heavy: HeavyDecomposition) -> dict:
    return {
        "long_paths": [list(p.vertices) for p in lp.paths],
        "deletion_order": list(lp.deletion_order),
        "rpw": list(heavy.rpw),
        "heavy_child": list(heavy.heavy_child),
        "heavy_paths": [list(p.vertices) for p in heavy.heavy_paths],
    }


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def write_json(path, doc) -> None:
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_drawing(path) -> GridDrawing:
    return drawing_from_dict(read_json(path))


def load_trace(path) -> MorphTrace:
    return trace_from_dict(read_json(path))
