"""Exact audits of drawings, morph steps and whole traces."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

import numpy as np

from . import _kernels
from .core import GridDrawing, RootedTree, cross, dot, max_degree, segment_distance_sq, sub
from .primitives import MorphStep
from .state import MorphTrace

__all__ = [
    "MorphTrace", "Violation", "StepReport", "VerificationReport",
    "check_drawing", "check_drawing_crossing_free", "check_step", "check_trace",
    "certify_step", "brute_force_min_separation", "trace_bounds", "step_bound",
]


@dataclass(frozen=True)
class Violation:
    step: int | None
    t: Fraction
    kind: str  # "crossing", "overlap", "degenerate", "uncertified", "bounds", "steps"
    items: tuple
    witness: Fraction = Fraction(0)

    def as_dict(self):
        return {"step": self.step, "t": str(self.t), "kind": self.kind,
                "items": [list(x) if isinstance(x, tuple) else x for x in self.items],
                "witness": str(self.witness)}


@dataclass
class StepReport:
    min_separation: Fraction | None
    samples: list[tuple[Fraction, Fraction | None]]
    violations: list[Violation]


@dataclass
class VerificationReport:
    integral: bool
    crossing_free: bool
    bounds_ok: bool
    box: tuple
    bound_box: tuple | None
    step_count: int
    step_bound: int | None
    violations: list[Violation] = field(default_factory=list)
    min_separation: Fraction | None = None
    per_step_separation: list = field(default_factory=list)
    strict: bool = False

    @property
    def steps_ok(self) -> bool:
        return self.step_bound is None or self.step_count <= self.step_bound

    @property
    def ok(self) -> bool:
        return self.integral and self.crossing_free and self.bounds_ok and self.steps_ok

    def to_json(self) -> str:
        d = asdict(self)
        d["violations"] = [v.as_dict() for v in self.violations]
        d["min_separation"] = None if self.min_separation is None else str(self.min_separation)
        d["per_step_separation"] = [None if s is None else str(s) for s in self.per_step_separation]
        d["ok"] = self.ok
        return json.dumps(d, indent=2)


# Pair structure -----------------------------------------------------------


@dataclass(frozen=True)
class _Pairs:
    edges: tuple
    na0: np.ndarray
    na1: np.ndarray
    nb0: np.ndarray
    nb1: np.ndarray
    nonadj: tuple  # (i, j) edge indices
    adj_w: np.ndarray
    adj_a: np.ndarray
    adj_b: np.ndarray


@lru_cache(maxsize=64)
def _pairs(tree: RootedTree) -> _Pairs:
    edges = tuple(tree.edges)
    m = len(edges)
    nonadj, a0, a1, b0, b1 = [], [], [], [], []
    for i in range(m):
        ei = edges[i]
        for j in range(i + 1, m):
            ej = edges[j]
            if ei[0] in ej or ei[1] in ej:
                continue
            nonadj.append((i, j))
            a0.append(ei[0]); a1.append(ei[1]); b0.append(ej[0]); b1.append(ej[1])
    aw, aa, ab = [], [], []
    for w in range(tree.n):
        nb = list(tree.children[w]) + ([tree.parent[w]] if tree.parent[w] is not None else [])
        for x in range(len(nb)):
            for y in range(x + 1, len(nb)):
                aw.append(w); aa.append(nb[x]); ab.append(nb[y])
    arr = lambda x: np.asarray(x, dtype=np.int64)
    return _Pairs(edges, arr(a0), arr(a1), arr(b0), arr(b1), tuple(nonadj), arr(aw), arr(aa), arr(ab))


def _split(step: MorphStep) -> tuple[_Pairs, _Pairs]:
    """(rigid, live) pairs of a step.

    A pair is rigid when all its endpoints share one velocity, so its
    distance is the same at every t.
    """
    tree = step.src.tree
    pr = _pairs(tree)
    ids: dict = {}
    cls = np.asarray([ids.setdefault(sub(q, p), len(ids)) for p, q in zip(step.src.pos, step.dst.pos)],
                     dtype=np.int64)
    c0 = cls[pr.na0]
    rigid = (c0 == cls[pr.na1]) & (c0 == cls[pr.nb0]) & (c0 == cls[pr.nb1])
    cw = cls[pr.adj_w]
    arigid = (cw == cls[pr.adj_a]) & (cw == cls[pr.adj_b])
    erigid = [bool(cls[a] == cls[b]) for a, b in pr.edges]

    def pick(mask, amask, emask):
        idx = np.nonzero(mask)[0]
        return _Pairs(tuple(e for e, k in zip(pr.edges, emask) if k),
                      pr.na0[idx], pr.na1[idx], pr.nb0[idx], pr.nb1[idx],
                      tuple(pr.nonadj[i] for i in idx), pr.adj_w[amask], pr.adj_a[amask], pr.adj_b[amask])

    return pick(rigid, arigid, erigid), pick(~rigid, ~arigid, [not x for x in erigid])


def _check_config(tree: RootedTree, pts: Sequence[tuple], den: int, t: Fraction, step_idx,
                  use_numba=None, pr: _Pairs | None = None) -> tuple[Fraction | None, list[Violation]]:
    """Exact check of one configuration given by integer points scaled by ``den``."""
    pr = pr or _pairs(tree)
    bad: list[Violation] = []
    for p, c in pr.edges:
        if pts[p] == pts[c]:
            bad.append(Violation(step_idx, t, "degenerate", ((p, c),)))
    P = np.asarray(pts, dtype=np.float64)
    den2 = den * den
    best = None
    if len(pr.na0):
        fd2 = _kernels.seg_dist2(P, pr.na0, pr.na1, pr.nb0, pr.nb1, use_numba)
        L = float(np.abs(P).max()) if P.size else 1.0
        delta = 1e-11 * max(L, 1.0)
        fmin = float(fd2.min())
        cut = (np.sqrt(max(fmin, 0.0)) + 4 * delta) ** 2
        for k in np.nonzero(fd2 <= cut)[0]:
            a0, a1, b0, b1 = int(pr.na0[k]), int(pr.na1[k]), int(pr.nb0[k]), int(pr.nb1[k])
            ex = segment_distance_sq(pts[a0], pts[a1], pts[b0], pts[b1])
            if best is None or ex < best:
                best = ex
            if ex == 0:
                bad.append(Violation(step_idx, t, "crossing", ((a0, a1), (b0, b1))))
        best = best / den2
    if len(pr.adj_w):
        s2, dt = _kernels.adjacent_sin2(P, pr.adj_w, pr.adj_a, pr.adj_b, use_numba)
        for k in np.nonzero((s2 <= 1e-6) & (dt > 0))[0]:
            w, a, b = int(pr.adj_w[k]), int(pr.adj_a[k]), int(pr.adj_b[k])
            u, v = sub(pts[a], pts[w]), sub(pts[b], pts[w])
            if cross(u, v) == (0, 0, 0) and dot(u, v) > 0:
                bad.append(Violation(step_idx, t, "overlap", ((w, a), (w, b))))
    return best, bad


def check_drawing(drawing: GridDrawing) -> list[Violation]:
    """Exact crossing test of a single drawing; shared endpoints are allowed."""
    return _check_config(drawing.tree, drawing.pos, 1, Fraction(0), None)[1]


def check_drawing_crossing_free(drawing: GridDrawing) -> tuple[bool, list[Violation]]:
    bad = check_drawing(drawing)
    return not bad, bad


def min_separation(drawing: GridDrawing) -> Fraction | None:
    return _check_config(drawing.tree, drawing.pos, 1, Fraction(0), None)[0]


def check_step(step: MorphStep, samples: int = 16, include_start: bool = True,
               step_index: int | None = None, use_numba=None) -> StepReport:
    """Exact checks of the step at t = i/(samples+1), i = 0..samples+1."""
    if samples < 0:
        raise ValueError("samples must be non-negative")
    den = samples + 1
    tree = step.src.tree
    out, bad = [], []
    # rigidly co-moving pairs keep their distance: check them once
    rigid, live = _split(step)
    fixed_sep, v = _check_config(tree, step.src.pos, 1, Fraction(0), step_index, use_numba, rigid)
    bad.extend(v)
    best = fixed_sep
    for i in range(0 if include_start else 1, den + 1):
        t = Fraction(i, den)
        sep, v = _check_config(tree, step.at(i, den), den, t, step_index, use_numba, live)
        bad.extend(v)
        if sep is None or (fixed_sep is not None and fixed_sep < sep):
            sep = fixed_sep
        out.append((t, sep))
        if sep is not None and (best is None or sep < best):
            best = sep
    return StepReport(best, out, bad)


# Independent oracle ------------------------------------------------------


def _brute_seg_dist2(p0, p1, q0, q1) -> Fraction:
    """Minimum of |p(s) - q(u)|^2 over the unit square by enumerating KKT candidates."""
    d1 = [Fraction(b - a) for a, b in zip(p0, p1)]
    d2 = [Fraction(b - a) for a, b in zip(q0, q1)]
    r = [Fraction(a - b) for a, b in zip(p0, q0)]

    def val(s, u):
        return sum((r[k] + s * d1[k] - u * d2[k]) ** 2 for k in range(3))

    A = sum(x * x for x in d1)
    B = sum(x * y for x, y in zip(d1, d2))
    E = sum(x * x for x in d2)
    C = sum(x * y for x, y in zip(d1, r))
    F = sum(x * y for x, y in zip(d2, r))
    cands = [(s, u) for s in (0, 1) for u in (0, 1)]
    for s in (Fraction(0), Fraction(1)):
        if E:
            u = (B * s + F) / E
            if 0 <= u <= 1:
                cands.append((s, u))
    for u in (Fraction(0), Fraction(1)):
        if A:
            s = (B * u - C) / A
            if 0 <= s <= 1:
                cands.append((s, u))
    det = A * E - B * B
    if det:
        s = (B * F - C * E) / det
        u = (A * F - B * C) / det
        if 0 <= s <= 1 and 0 <= u <= 1:
            cands.append((s, u))
    return min(val(Fraction(s), Fraction(u)) for s, u in cands)


def brute_force_min_separation(step: MorphStep, samples: int = 16) -> Fraction | None:
    """Naive exact minimum distance over non-adjacent edge pairs at the sampled t."""
    tree = step.src.tree
    edges = [(tree.parent[v], v) for v in range(tree.n) if tree.parent[v] is not None]
    best = None
    for i in range(samples + 2):
        t = Fraction(i, samples + 1)
        pos = [tuple(Fraction(a) + t * (b - a) for a, b in zip(p, q))
               for p, q in zip(step.src.pos, step.dst.pos)]
        for x in range(len(edges)):
            for y in range(x + 1, len(edges)):
                if set(edges[x]) & set(edges[y]):
                    continue
                dd = _brute_seg_dist2(pos[edges[x][0]], pos[edges[x][1]], pos[edges[y][0]], pos[edges[y][1]])
                if best is None or dd < best:
                    best = dd
    return best


# Strict certification -------------------------------------------------------


def _lin(step: MorphStep, v: int):
    p, q = step.src.pos[v], step.dst.pos[v]
    return p, tuple(b - a for a, b in zip(p, q))


def _at(step: MorphStep, v: int, t: Fraction):
    p, q = step.src.pos[v], step.dst.pos[v]
    return tuple(a + t * (b - a) for a, b in zip(p, q))


def certify_step(step: MorphStep, step_index: int | None = None, max_refine: int = 80) -> list[Violation]:
    """Continuous-time certificate that no contact occurs for t in [0, 1].

    Contact times are roots of polynomials: the coplanarity cubic of each
    edge pair, the collinearity gcd of each endpoint against the other
    segment, and vertex coincidences.  Each root in [0, 1] is isolated by
    rational intervals and ruled out by a Lipschitz bound on the distance.
    Anything that cannot be ruled out is reported as ``uncertified``.
    """
    import sympy as sp

    tvar = sp.Symbol("t")
    tree = step.src.tree
    bad: list[Violation] = []
    bad.extend(_check_config(tree, step.src.pos, 1, Fraction(0), step_index)[1])
    bad.extend(_check_config(tree, step.dst.pos, 1, Fraction(1), step_index)[1])
    if step.is_identity:
        return bad
    vel = {v: _lin(step, v)[1] for v in range(tree.n)}

    def poly_of(p, dv):
        return [sp.Poly(p[k] + dv[k] * tvar, tvar, domain="QQ") for k in range(3)]

    pp = {v: poly_of(*_lin(step, v)) for v in range(tree.n)}

    def vsub(a, b):
        return [a[k] - b[k] for k in range(3)]

    def vcross(a, b):
        return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]

    def gcd_all(ps):
        g = None
        for p in ps:
            if p.is_zero:
                continue
            g = p if g is None else sp.gcd(g, p)
        return g

    def roots01(poly):
        if poly is None or poly.degree() < 1:
            return []
        return [(Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)))
                for (a, b), _ in poly.intervals(inf=0, sup=1)]

    # vertex coincidences
    moving = [v for v in range(tree.n) if any(vel[v])]
    moving_set = set(moving)
    for a in moving:
        for b in range(tree.n):
            if b == a or (b in moving_set and b < a):
                continue
            d0 = sub(step.src.pos[a], step.src.pos[b])
            dv = sub(vel[a], vel[b])
            t = None
            ok = True
            for k in range(3):
                if dv[k] == 0:
                    ok = ok and d0[k] == 0
                else:
                    tk = Fraction(-d0[k], dv[k])
                    if t is None:
                        t = tk
                    elif t != tk:
                        ok = False
            if ok and t is not None and 0 <= t <= 1:
                bad.append(Violation(step_index, t, "degenerate", ((a, b),)))

    def dist2(e, f, t):
        return segment_distance_sq(_at(step, e[0], t), _at(step, e[1], t), _at(step, f[0], t), _at(step, f[1], t))

    pr = _pairs(tree)
    for i, j in pr.nonadj:
        e, f = pr.edges[i], pr.edges[j]
        corners = [sub(vel[x], vel[y]) for x in e for y in f]
        L2 = max(dot(c, c) for c in corners)
        if L2 == 0:
            continue
        d0 = dist2(e, f, Fraction(0))
        if d0 > L2 or dist2(e, f, Fraction(1)) > L2:
            continue
        P0, P1, Q0, Q1 = pp[e[0]], pp[e[1]], pp[f[0]], pp[f[1]]
        polys = []
        u, v, w = vsub(P1, P0), vsub(Q0, P0), vsub(Q1, P0)
        cx = vcross(u, v)
        polys.append(gcd_all([cx[0] * w[0] + cx[1] * w[1] + cx[2] * w[2]]))
        for x, (a, b) in ((P0, (Q0, Q1)), (P1, (Q0, Q1)), (Q0, (P0, P1)), (Q1, (P0, P1))):
            polys.append(gcd_all(vcross(vsub(b, a), vsub(x, a))))
        for poly in polys:
            for lo, hi in roots01(poly):
                if not _rule_out(poly, lo, hi, lambda t: dist2(e, f, t), L2, max_refine):
                    bad.append(Violation(step_index, lo, "uncertified", (e, f), dist2(e, f, lo)))
                    break

    for k in range(len(pr.adj_w)):
        w_, a_, b_ = int(pr.adj_w[k]), int(pr.adj_a[k]), int(pr.adj_b[k])
        if not (any(vel[w_]) or any(vel[a_]) or any(vel[b_])):
            continue
        U, V = vsub(pp[a_], pp[w_]), vsub(pp[b_], pp[w_])
        g = gcd_all(vcross(U, V))
        dp = U[0] * V[0] + U[1] * V[1] + U[2] * V[2]
        for lo, hi in roots01(g):
            sign = _sign_at_root(g, dp, lo, hi, max_refine)
            if sign is None or sign > 0:
                bad.append(Violation(step_index, lo, "overlap" if sign else "uncertified", ((w_, a_), (w_, b_))))
    return bad


def _refine(poly, lo, hi):
    import sympy as sp

    if lo == hi:
        return lo, hi
    (a, b) = poly.refine_root(sp.Rational(lo.numerator, lo.denominator),
                              sp.Rational(hi.numerator, hi.denominator),
                              eps=sp.Rational((hi - lo).numerator, 4 * (hi - lo).denominator))
    return Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))


def _rule_out(poly, lo, hi, dist2, L2, max_refine) -> bool:
    """True if the distance stays positive on [lo, hi] (which brackets one root)."""
    for _ in range(max_refine):
        if lo == hi:
            return dist2(lo) > 0
        w2 = (hi - lo) ** 2 * L2
        if dist2(lo) > w2 or dist2(hi) > w2:
            return True
        lo, hi = _refine(poly, lo, hi)
    return False


def _sgn(val) -> int:
    f = Fraction(int(val.p), int(val.q))
    return (f > 0) - (f < 0)


def _sign_at_root(g, dp, lo, hi, max_refine):
    """Sign of ``dp`` at the root of ``g`` isolated in [lo, hi]; None if undecided."""
    import sympy as sp

    if dp.is_zero:
        return 0
    common = sp.gcd(g, dp)
    for _ in range(max_refine):
        if lo == hi:
            val = dp.eval(sp.Rational(lo.numerator, lo.denominator))
            return _sgn(val)
        if common.degree() > 0 and common.count_roots(
                sp.Rational(lo.numerator, lo.denominator), sp.Rational(hi.numerator, hi.denominator)):
            return 0
        if dp.count_roots(sp.Rational(lo.numerator, lo.denominator), sp.Rational(hi.numerator, hi.denominator)) == 0:
            val = dp.eval(sp.Rational(lo.numerator, lo.denominator))
            return _sgn(val)
        lo, hi = _refine(g, lo, hi)
    return None


# Bounds ----------------------------------------------------------------------


def _clog2(k: int) -> int:
    return (k - 1).bit_length() if k > 1 else 0


def step_bound(trace: MorphTrace) -> int | None:
    tree = trace.tree
    if tree.n == 1:
        return 1
    lg = _clog2(max_degree(tree))
    if trace.algorithm == "paths":
        return 15 * trace.info["paths"] + 1
    if trace.algorithm == "edges":
        return max(tree.depth) * (6 + lg) + 1
    if trace.algorithm == "tradeoff":
        s = isqrt(tree.n)
        return s * (6 + lg) + 15 * s + 1
    return None


def trace_bounds(trace: MorphTrace):
    """Explicit bounding box ((xlo, xhi), (ylo, yhi), (zlo, zhi)) promised for the trace.

    The stretched box is widened by the margin and joined with the input's box.
    """
    if trace.algorithm not in ("paths", "edges", "tradeoff"):
        return None
    g = trace.initial
    xs = [p[0] for p in g.pos]
    ys = [p[1] for p in g.pos]
    S = trace.info["stretch"]
    n = g.tree.n
    if trace.algorithm == "paths":
        m, ztop = 2 * trace.info["rpw"], 2 * n
    else:
        m, ztop = S, (n if trace.algorithm == "edges" else 2 * n)
    # the input itself sits inside the hull too; the stretch interpolates between the two
    return ((min(min(xs), S * min(xs) - m), max(max(xs), S * max(xs) + m)),
            (min(min(ys), S * min(ys) - m), max(max(ys), S * max(ys) + m)), (0, ztop))


def _box(drawings):
    lo = [min(p[k] for d in drawings for p in d.pos) for k in range(3)]
    hi = [max(p[k] for d in drawings for p in d.pos) for k in range(3)]
    return tuple(zip(lo, hi))


def check_trace(trace: MorphTrace, samples: int = 16, strict: bool = False,
                bounds: bool = True, use_numba=None) -> VerificationReport:
    steps = trace.steps
    for i in range(len(steps) - 1):
        if steps[i].dst != steps[i + 1].src:
            raise ValueError(f"steps {i} and {i + 1} do not chain")
    drawings = trace.drawings()
    integral = all(type(c) is int for d in drawings for p in d.pos for c in p)
    violations: list[Violation] = []
    per_step = []
    best = None
    for i, st in enumerate(steps):
        rep = check_step(st, samples, include_start=(i == 0), step_index=i, use_numba=use_numba)
        violations.extend(rep.violations)
        per_step.append(rep.min_separation)
        if rep.min_separation is not None and (best is None or rep.min_separation < best):
            best = rep.min_separation
        if strict:
            violations.extend(certify_step(st, i))
    crossing_free = not violations
    box = _box(drawings)
    bound_box = trace_bounds(trace) if bounds else None
    bounds_ok = True
    if bound_box is not None:
        bounds_ok = all(bound_box[k][0] <= box[k][0] and box[k][1] <= bound_box[k][1] for k in range(3))
        if not bounds_ok:
            violations.append(Violation(None, Fraction(0), "bounds", (box, bound_box)))
    sb = step_bound(trace)
    if sb is not None and len(steps) > sb:
        violations.append(Violation(None, Fraction(0), "steps", (len(steps), sb)))
    return VerificationReport(
        integral=integral, crossing_free=crossing_free, bounds_ok=bounds_ok, box=box,
        bound_box=bound_box, step_count=len(steps), step_bound=sb, violations=violations,
        min_separation=best, per_step_separation=per_step, strict=strict,
    )
