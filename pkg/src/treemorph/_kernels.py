"""Float prefilter for segment distances: numba kernels with a numpy fallback.

Set ``TREEMORPH_DISABLE_NUMBA=1`` to force the numpy path.  Both paths return
the same float64 values up to rounding; exact decisions are made elsewhere.
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("TREEMORPH_DISABLE_NUMBA", "") in ("", "0")


def _clamp01_np(x):
    return np.minimum(np.maximum(x, 0.0), 1.0)


def _pt_seg_np(p, a, b):
    ab = b - a
    den = np.einsum("ij,ij->i", ab, ab)
    num = np.einsum("ij,ij->i", p - a, ab)
    safe = np.where(den > 0, den, 1.0)
    t = _clamp01_np(np.where(den > 0, num / safe, 0.0))
    diff = a + t[:, None] * ab - p
    return np.einsum("ij,ij->i", diff, diff)


def seg_dist2_numpy(P, a0, a1, b0, b1):
    """Squared distances between segments P[a0]P[a1] and P[b0]P[b1], vectorised."""
    p0, p1, q0, q1 = P[a0], P[a1], P[b0], P[b1]
    d1, d2, r = p1 - p0, q1 - q0, p0 - q0
    a = np.einsum("ij,ij->i", d1, d1)
    e = np.einsum("ij,ij->i", d2, d2)
    b = np.einsum("ij,ij->i", d1, d2)
    c = np.einsum("ij,ij->i", d1, r)
    f = np.einsum("ij,ij->i", d2, r)
    den = a * e - b * b
    ok = (den > 1e-12 * a * e) & (a > 0) & (e > 0)
    s = np.where(ok, (b * f - c * e) / np.where(ok, den, 1.0), 0.0)
    s = _clamp01_np(s)
    t = np.where(e > 0, (b * s + f) / np.where(e > 0, e, 1.0), 0.0)
    lo, hi = t < 0, t > 1
    asafe = np.where(a > 0, a, 1.0)
    s = np.where(lo, _clamp01_np(-c / asafe), np.where(hi, _clamp01_np((b - c) / asafe), s))
    t = _clamp01_np(t)
    diff = r + s[:, None] * d1 - t[:, None] * d2
    best = np.einsum("ij,ij->i", diff, diff)
    for cand in (_pt_seg_np(p0, q0, q1), _pt_seg_np(p1, q0, q1), _pt_seg_np(q0, p0, p1), _pt_seg_np(q1, p0, p1)):
        best = np.minimum(best, cand)
    return best


def adjacent_sin2_numpy(P, w, a, b):
    """(sin^2 of the angle at w, dot sign) for edge pairs w-a and w-b."""
    u, v = P[a] - P[w], P[b] - P[w]
    cr = np.cross(u, v)
    num = np.einsum("ij,ij->i", cr, cr)
    den = np.einsum("ij,ij->i", u, u) * np.einsum("ij,ij->i", v, v)
    dt = np.einsum("ij,ij->i", u, v)
    return np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0), dt


if numba is not None:

    @numba.njit(cache=True, fastmath=False)
    def _pt_seg_nb(px, py, pz, ax, ay, az, bx, by, bz):
        abx, aby, abz = bx - ax, by - ay, bz - az
        den = abx * abx + aby * aby + abz * abz
        t = 0.0
        if den > 0:
            t = ((px - ax) * abx + (py - ay) * aby + (pz - az) * abz) / den
            t = min(max(t, 0.0), 1.0)
        dx, dy, dz = ax + t * abx - px, ay + t * aby - py, az + t * abz - pz
        return dx * dx + dy * dy + dz * dz

    @numba.njit(cache=True, fastmath=False)
    def _seg_dist2_nb(P, a0, a1, b0, b1):
        m = a0.shape[0]
        out = np.empty(m)
        for k in range(m):
            p0, p1, q0, q1 = P[a0[k]], P[a1[k]], P[b0[k]], P[b1[k]]
            d1x, d1y, d1z = p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]
            d2x, d2y, d2z = q1[0] - q0[0], q1[1] - q0[1], q1[2] - q0[2]
            rx, ry, rz = p0[0] - q0[0], p0[1] - q0[1], p0[2] - q0[2]
            a = d1x * d1x + d1y * d1y + d1z * d1z
            e = d2x * d2x + d2y * d2y + d2z * d2z
            b = d1x * d2x + d1y * d2y + d1z * d2z
            c = d1x * rx + d1y * ry + d1z * rz
            f = d2x * rx + d2y * ry + d2z * rz
            den = a * e - b * b
            s = 0.0
            if a > 0 and e > 0 and den > 1e-12 * a * e:
                s = min(max((b * f - c * e) / den, 0.0), 1.0)
            t = (b * s + f) / e if e > 0 else 0.0
            if t < 0:
                t = 0.0
                s = min(max(-c / a, 0.0), 1.0) if a > 0 else 0.0
            elif t > 1:
                t = 1.0
                s = min(max((b - c) / a, 0.0), 1.0) if a > 0 else 0.0
            dx = rx + s * d1x - t * d2x
            dy = ry + s * d1y - t * d2y
            dz = rz + s * d1z - t * d2z
            best = dx * dx + dy * dy + dz * dz
            best = min(best, _pt_seg_nb(p0[0], p0[1], p0[2], q0[0], q0[1], q0[2], q1[0], q1[1], q1[2]))
            best = min(best, _pt_seg_nb(p1[0], p1[1], p1[2], q0[0], q0[1], q0[2], q1[0], q1[1], q1[2]))
            best = min(best, _pt_seg_nb(q0[0], q0[1], q0[2], p0[0], p0[1], p0[2], p1[0], p1[1], p1[2]))
            best = min(best, _pt_seg_nb(q1[0], q1[1], q1[2], p0[0], p0[1], p0[2], p1[0], p1[1], p1[2]))
            out[k] = best
        return out

    @numba.njit(cache=True, fastmath=False)
    def _adjacent_nb(P, w, a, b):
        m = w.shape[0]
        s2 = np.empty(m)
        dt = np.empty(m)
        for k in range(m):
            ux, uy, uz = P[a[k], 0] - P[w[k], 0], P[a[k], 1] - P[w[k], 1], P[a[k], 2] - P[w[k], 2]
            vx, vy, vz = P[b[k], 0] - P[w[k], 0], P[b[k], 1] - P[w[k], 1], P[b[k], 2] - P[w[k], 2]
            cx, cy, cz = uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx
            den = (ux * ux + uy * uy + uz * uz) * (vx * vx + vy * vy + vz * vz)
            s2[k] = (cx * cx + cy * cy + cz * cz) / den if den > 0 else 0.0
            dt[k] = ux * vx + uy * vy + uz * vz
        return s2, dt


def seg_dist2(P, a0, a1, b0, b1, use_numba: bool | None = None):
    if use_numba is None:
        use_numba = USE_NUMBA
    if len(a0) == 0:
        return np.empty(0)
    if use_numba and numba is not None:
        return _seg_dist2_nb(P, a0, a1, b0, b1)
    return seg_dist2_numpy(P, a0, a1, b0, b1)


def adjacent_sin2(P, w, a, b, use_numba: bool | None = None):
    if use_numba is None:
        use_numba = USE_NUMBA
    if len(w) == 0:
        return np.empty(0), np.empty(0)
    if use_numba and numba is not None:
        return _adjacent_nb(P, w, a, b)
    return adjacent_sin2_numpy(P, w, a, b)
