"""Compiled vs pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--reps 5]

Prints one line per kernel with the median time of each implementation and
the speedup.  Outputs of both implementations are compared before timing.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

import numpy as np

from cgedit import _pykernels
from cgedit.editing.oracle import SINGLE_BOUND
from cgedit.generate import generate_perturbed_cograph, gnp

try:
    from cgedit import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, reps: int) -> float:
    out = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t0)
    return statistics.median(out)


def _cases(rng: np.random.Generator):
    cograph = generate_perturbed_cograph(60, 0, 1).graph
    dense = gnp(60, 0.5, rng)
    small = [gnp(SINGLE_BOUND, 0.5, rng) for _ in range(20)]
    modsrc = [generate_perturbed_cograph(16, 4, s).graph for s in range(10)]
    q = np.triu(rng.random((150, 150)) < 0.5, 1)
    q = q | q.T
    sizes = rng.integers(1, 4, size=150).tolist()
    minids = list(range(150))
    weights = [[0 if a == b else 1 + (a * b) % 3 for b in range(9)] for a in range(9)]
    wgraphs = [gnp(9, 0.5, rng) for _ in range(10)]

    yield "find_p4 (cograph, n=60)", lambda k: k.find_p4(cograph.masks, cograph.n)
    yield "find_p4 (G(60,.5))", lambda k: k.find_p4(dense.masks, dense.n)
    yield "unit_edit_search (n=8, budget 4)", lambda k: [k.unit_edit_search(g.masks, g.n, 4, False) for g in small]
    yield "weighted_edit_search (n=9)", lambda k: [k.weighted_edit_search(g.masks, g.n, weights, 60)
                                                   for g in wgraphs]
    yield "module_masks (n=16)", lambda k: [k.module_masks(g.masks, g.n) for g in modsrc]
    yield "greedy_merge (150 blocks)", lambda k: k.greedy_merge(q, sizes, minids)


def _same(a, b) -> bool:
    def norm(x):
        if isinstance(x, list):
            return [norm(v) for v in x]
        if isinstance(x, tuple):
            return tuple(norm(v) for v in x)
        return x

    return norm(a) == norm(b)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':36} {'cython_ms':>10} {'python_ms':>10} {'speedup':>8}")
    for name, fn in _cases(rng):
        if not _same(fn(_ckernels), fn(_pykernels)):
            print(f"{name}: implementations disagree", file=sys.stderr)
            return 1
        tc = _time(lambda: fn(_ckernels), args.reps)
        tp = _time(lambda: fn(_pykernels), args.reps)
        print(f"{name:36} {tc * 1e3:10.3f} {tp * 1e3:10.3f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
