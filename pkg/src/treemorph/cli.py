"""Command-line interface.

Exit codes: 0 clean, 1 verification violations, 2 input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .core import metrics
from .decomposition import heavy_decomposition, long_path_decomposition, tradeoff_partition
from .export import FORMATS, export_frames
from .generate import SHAPES, generate
from .io import (
    InputError, decomposition_to_dict, drawing_to_dict, load_drawing, load_trace, trace_to_dict, write_json,
)
from .morph import ALGORITHMS, morph_between, morph_to_canonical
from .state import LiftError
from .verifier import check_trace

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _emit(doc, out):
    if out:
        write_json(out, doc)
    else:
        print(json.dumps(doc))


def cmd_gen(args) -> int:
    if args.n < 1:
        raise InputError("n must be at least 1")
    _emit(drawing_to_dict(generate(args.n, args.seed, args.shape)), args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    tree = load_drawing(args.input).tree
    doc = decomposition_to_dict(long_path_decomposition(tree), heavy_decomposition(tree))
    part = tradeoff_partition(tree)
    doc["long"] = [list(p.vertices) for p in part.long_paths]
    doc["short_edge_sets"] = [[list(e) for e in s] for s in part.short_edge_sets]
    _emit(doc, args.out)
    return EXIT_OK


def _box_summary(trace):
    pts = [p for d in trace.drawings() for p in d.pos]
    box = [(min(p[k] for p in pts), max(p[k] for p in pts)) for k in range(3)]
    return box, max(abs(c) for p in pts for c in p)


def cmd_morph(args) -> int:
    first = load_drawing(args.input)
    t0 = time.perf_counter()
    if args.input2:
        trace = morph_between(first, load_drawing(args.input2), args.alg)
    else:
        trace = morph_to_canonical(first, args.alg)
    wall = time.perf_counter() - t0
    write_json(args.out, trace_to_dict(trace))
    box, biggest = _box_summary(trace)
    print(f"algorithm   {trace.algorithm}")
    print(f"steps       {len(trace)}")
    print(f"box         x{list(box[0])} y{list(box[1])} z{list(box[2])}")
    print(f"max |coord| {biggest}")
    print(f"wall time   {wall:.3f}s")
    return EXIT_OK


def cmd_verify(args) -> int:
    trace = load_trace(args.trace)
    rep = check_trace(trace, samples=args.samples, strict=args.strict)
    print(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_stats(args) -> int:
    trace = load_trace(args.trace)
    rep = check_trace(trace, samples=args.samples)
    m0 = metrics(trace.initial)
    rows = [
        ("algorithm", trace.algorithm),
        ("n", trace.tree.n),
        ("steps", rep.step_count),
        ("step bound", rep.step_bound),
        ("input l x w", f"{m0.l} x {m0.w}"),
        ("input d", m0.d),
        ("box", " ".join(f"[{lo},{hi}]" for lo, hi in rep.box)),
        ("bound box", None if rep.bound_box is None else " ".join(f"[{lo},{hi}]" for lo, hi in rep.bound_box)),
        ("min separation^2", rep.min_separation),
        ("violations", len(rep.violations)),
    ]
    for k, v in rows:
        print(f"{k:<18}{v}")
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_export(args) -> int:
    trace = load_trace(args.trace)
    paths = export_frames(trace, args.out, args.format, args.frames_per_step)
    print(f"wrote {len(paths)} file(s) to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treemorph", description="3D grid morphs of planar tree drawings")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random tree with a planar grid layout")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shape", choices=SHAPES, default="random")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", help="print path and edge-set decompositions")
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("morph", help="morph a drawing to the canonical drawing (or to a second drawing)")
    p.add_argument("input")
    p.add_argument("input2", nargs="?")
    p.add_argument("--alg", choices=sorted(ALGORITHMS), default="paths")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_morph)

    p = sub.add_parser("verify", help="audit a trace")
    p.add_argument("trace")
    p.add_argument("--samples", type=int, default=16)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="summarise a trace")
    p.add_argument("trace")
    p.add_argument("--samples", type=int, default=16)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", help="write frames of a trace")
    p.add_argument("trace")
    p.add_argument("--format", choices=FORMATS, default="svg-frames")
    p.add_argument("--frames-per-step", type=int, default=4)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, LiftError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
