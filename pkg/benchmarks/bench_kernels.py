"""Compare the numba kernels with the numpy fallback.

Two measurements: the raw segment-distance kernel on random pairs, and a
full samples=16 audit of a few morph traces.  Run from the repository root:

    python3 benchmarks/bench_kernels.py [--pairs 200000] [--repeat 5]
"""
import argparse
import time

import numpy as np

from treemorph import _kernels
from treemorph.generate import generate
from treemorph.morph import morph_to_canonical
from treemorph.verifier import check_trace


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=100, help="tree size for the trace audit")
    args = ap.parse_args()

    if _kernels.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    P = rng.integers(-10**4, 10**4, size=(2000, 3)).astype(np.float64)
    idx = [rng.integers(0, len(P), size=args.pairs) for _ in range(4)]
    _kernels.seg_dist2(P, *(i[:10] for i in idx), use_numba=True)  # compile

    a = _kernels.seg_dist2(P, *idx, use_numba=True)
    b = _kernels.seg_dist2(P, *idx, use_numba=False)
    agree = np.allclose(a, b, rtol=1e-9, atol=1e-6)
    t_nb = best_of(lambda: _kernels.seg_dist2(P, *idx, use_numba=True), args.repeat)
    t_np = best_of(lambda: _kernels.seg_dist2(P, *idx, use_numba=False), args.repeat)
    print(f"seg_dist2, {args.pairs} pairs: numba {t_nb * 1e3:8.2f} ms  numpy {t_np * 1e3:8.2f} ms  "
          f"speedup {t_np / t_nb:5.1f}x  agree={agree}")

    traces = [morph_to_canonical(generate(args.n, seed, shape), alg)
              for seed, shape in enumerate(("random", "caterpillar", "balanced"))
              for alg in ("paths", "edges", "tradeoff")]
    check_trace(traces[0], samples=1, use_numba=True)
    t_nb = best_of(lambda: [check_trace(t, samples=16, use_numba=True) for t in traces], 1)
    t_np = best_of(lambda: [check_trace(t, samples=16, use_numba=False) for t in traces], 1)
    steps = sum(len(t) for t in traces)
    print(f"check_trace, {len(traces)} traces / {steps} steps: numba {t_nb:6.2f} s  numpy {t_np:6.2f} s  "
          f"speedup {t_np / t_nb:5.1f}x")


if __name__ == "__main__":
    main()
