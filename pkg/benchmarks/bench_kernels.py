"""Compare the compiled saturation kernels against the pure-Python ones.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat N]

Workloads are real pipeline draws, so the numbers reflect what sampling
actually pays per machine.  The pure backend is imported directly; no
environment variable is needed here.
"""
from __future__ import annotations

import argparse
import time
from fractions import Fraction

import numpy as np

from rdpda import _kernels_py
from rdpda.core import Alphabets
from rdpda.pipelines import PipelineConfig, _draw, _pack_draw
from rdpda.rng import make_rng

try:
    from rdpda import _kernels
except ImportError:
    _kernels = None


def _packs(alpha, beta, lam, n, count, seed):
    cfg = PipelineConfig(
        num_states=n, alphabets=Alphabets.default(alpha, beta), lam=Fraction(lam)
    )
    rng = make_rng(seed)
    return [_pack_draw(cfg, _draw(cfg, rng)) for _ in range(count)]


def _time_saturate(kernels, packs, reach_only, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for p in packs:
            kernels.saturate(
                p.r_from, p.r_sym, p.r_to, p.r_off, p.r_pool,
                p.n_control, p.n_gamma, 0, 0, reach_only,
            )
        best = min(best, time.perf_counter() - t0)
    return best / len(packs)


def _time_canonical(kernels, tables, n, rho, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for flat in tables:
            kernels.canonical_accessible(flat, n, rho)
        best = min(best, time.perf_counter() - t0)
    return best / len(tables)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions, best is kept (default 3)")
    args = parser.parse_args()

    if _kernels is None:
        print("compiled extension not available; showing pure-Python times only")

    rows = []
    saturate_cases = [
        ("saturate reach-only", 2, 2, 1, 10, 300, True),
        ("saturate reach-only", 2, 2, 2, 50, 100, True),
        ("saturate reach-only", 3, 5, 2, 50, 50, True),
        ("saturate full", 2, 2, 1, 10, 300, False),
        ("saturate full", 2, 2, 2, 50, 50, False),
        ("saturate full", 3, 5, 1, 20, 20, False),
    ]
    for name, alpha, beta, lam, n, count, reach_only in saturate_cases:
        packs = _packs(alpha, beta, lam, n, count, seed=1)
        pure = _time_saturate(_kernels_py, packs, reach_only, args.repeat)
        fast = (
            _time_saturate(_kernels, packs, reach_only, args.repeat)
            if _kernels else None
        )
        rows.append((f"{name} a={alpha} b={beta} lam={lam} n={n}", fast, pure))

    rng = make_rng(2)
    for n, rho, count in [(10, 4, 2000), (100, 4, 400)]:
        tables = [
            rng.integers(0, n, size=n * rho, dtype=np.int32) for _ in range(count)
        ]
        pure = _time_canonical(_kernels_py, tables, n, rho, args.repeat)
        fast = (
            _time_canonical(_kernels, tables, n, rho, args.repeat)
            if _kernels else None
        )
        rows.append((f"canonical_accessible n={n} rho={rho}", fast, pure))

    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'cython':>10}  {'python':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fast, pure in rows:
        fast_txt = f"{fast * 1e6:8.1f}us" if fast is not None else "       n/a"
        ratio = f"{pure / fast:7.1f}x" if fast else "     n/a"
        print(f"{name:<{width}}  {fast_txt}  {pure * 1e6:8.1f}us  {ratio}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
