"""Frame export of a trace as SVG projections or OBJ polyline scenes."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .state import MorphTrace

FORMATS = ("json", "svg-frames", "obj-frames")


def frames(trace: MorphTrace, per_step: int):
    """(step, t, positions) for t = i/per_step in every step; shared endpoints appear once."""
    if per_step < 1:
        raise ValueError("frames_per_step must be at least 1")
    out = []
    for k, st in enumerate(trace.steps):
        for i in range(0 if k == 0 else 1, per_step + 1):
            pts = [tuple(Fraction(c, per_step) for c in p) for p in st.at(i, per_step)]
            out.append((k, Fraction(i, per_step), pts))
    return out


def _svg(tree, pts, size=400) -> str:
    panels = [(0, 1, "XY"), (0, 2, "XZ")]
    body = []
    for n_panel, (a, b, name) in enumerate(panels):
        us = [float(p[a]) for p in pts]
        vs = [float(p[b]) for p in pts]
        span = max(max(us) - min(us), max(vs) - min(vs), 1.0)
        sc = (size - 40) / span
        ox = n_panel * size + 20

        def tx(u, v):
            return ox + (u - min(us)) * sc, size - 20 - (v - min(vs)) * sc

        body.append(f'<text x="{ox}" y="14" font-size="12">{name}</text>')
        for p, c in tree.edges:
            x1, y1 = tx(us[p], vs[p])
            x2, y2 = tx(us[c], vs[c])
            body.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="black"/>')
        for u, v in zip(us, vs):
            x, y = tx(u, v)
            body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2" fill="crimson"/>')
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * size}" height="{size}">'
            + "".join(body) + "</svg>\n")


def _obj(tree, pts) -> str:
    lines = [f"v {float(p[0])} {float(p[1])} {float(p[2])}" for p in pts]
    lines += [f"l {p + 1} {c + 1}" for p, c in tree.edges]
    return "\n".join(lines) + "\n"


def export_frames(trace: MorphTrace, out_dir, fmt: str, per_step: int = 1) -> list[Path]:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        import json

        from .io import trace_to_dict

        path = out / "trace.json"
        path.write_text(json.dumps(trace_to_dict(trace)), encoding="utf-8")
        return [path]
    fr = frames(trace, per_step)
    width = max(4, len(str(len(fr))))
    paths = []
    for idx, (_, _, pts) in enumerate(fr):
        if fmt == "svg-frames":
            path = out / f"frame_{idx:0{width}d}.svg"
            path.write_text(_svg(trace.tree, pts), encoding="utf-8")
        else:
            path = out / f"frame_{idx:0{width}d}.obj"
            path.write_text(_obj(trace.tree, pts), encoding="utf-8")
        paths.append(path)
    return paths
