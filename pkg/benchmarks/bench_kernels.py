"""Time the numba and numpy paths of each hot kernel on representative inputs.

Usage: python benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from gdof_mimo import _kernels as K
from gdof_mimo.channel_model import SystemConfig, generate_channel
from gdof_mimo.hk_achievable import CLASSES, decode_catalog, generate_bounds


def _rank_input(rng):
    # stacked output map of a mid-size deterministic model: 60 rows, 90 columns
    return rng.integers(0, 2**63, size=(60, 2), dtype=np.uint64) & np.array([~np.uint64(0), (1 << 26) - 1], np.uint64)


def _lp_input():
    ch = generate_channel(SystemConfig(1, 2, 0.6, 0.45), 0)
    bounds = generate_bounds(ch, 1e9)
    plan = decode_catalog(ch.config)
    idx = [CLASSES.index(c) for c in plan.classes]
    A = np.array([[b.weights[i] for i in idx] for b in bounds], float)
    return A, np.array([b.value for b in bounds])


def _parity_input(rng):
    states = np.arange(2**18, dtype=np.uint64)
    rows = rng.integers(0, 2**18, size=20, dtype=np.uint64)
    return states, rows


def _time(fn, repeat: int, number: int) -> float:
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    rows = _rank_input(rng)
    A, b = _lp_input()
    states, prow = _parity_input(rng)
    cases = [
        ("gf2_rank 60x90", lambda: K.gf2_rank_numpy(rows), lambda: K.gf2_rank_numba(rows), 200),
        ("lp_vertex_max 32x3", lambda: K.lp_vertex_max_numpy(A, b), lambda: K.lp_vertex_max_numba(A, b), 50),
        ("parity_keys 2^18x20", lambda: K.parity_keys_numpy(states, prow), lambda: K.parity_keys_numba(states, prow), 3),
    ]
    print(f"numba available: {K.NUMBA_AVAILABLE}")
    print(f"{'kernel':<22}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, f_np, f_nb, number in cases:
        # first call compiles; keep it out of the timing
        assert np.array_equal(np.asarray(f_np()), np.asarray(f_nb()))
        t_np = _time(f_np, args.repeat, number) * 1e3
        if K.NUMBA_AVAILABLE:
            t_nb = _time(f_nb, args.repeat, number) * 1e3
            print(f"{name:<22}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{name:<22}{t_np:>12.3f}{'n/a':>12}{'':>10}")


if __name__ == "__main__":
    main()
