"""Compare the numba kernels with their numpy fallbacks.

Usage: ``python benchmarks/bench_kernels.py [--repeat N] [--quick]``.  Each
kernel is run once per backend to warm up (numba compiles on first call), then
timed as the best of ``--repeat`` runs.  Outputs of the two backends are
checked for equality before timing.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from bkcone import _accel
from bkcone.kernels import count_violations, dominate, localization_vector
from bkcone.rootsys import build_root_system
from bkcone.tensor import _dominant_mults_cached, _register
from bkcone.weyl import weyl_group


def _localization_case(label):
    W = weyl_group(label)
    w = W.longest
    # unit heights keep the bound inside int64, so both backends run their fast path
    heights = [1] * len(w.word)
    return lambda: localization_vector(W.rmul, W.lengths, w.word, heights)


def _dominate_case(label, n, seed=0):
    R = build_root_system(label)
    pts = np.random.default_rng(seed).integers(-12, 13, size=(n, R.rank))
    return lambda: dominate(pts, R.cartan)


def _freudenthal_case(label, lam):
    key = _register(build_root_system(label))
    return lambda: _dominant_mults_cached.__wrapped__(key, lam)


def _violations_case(rows, cols, n, seed=0):
    rng = np.random.default_rng(seed)
    cov = rng.integers(-4, 5, size=(rows, cols))
    pts = rng.integers(0, 10, size=(n, cols))
    return lambda: count_violations(cov, pts)


def cases(quick: bool):
    scale = 10 if quick else 1
    return [
        ("localization w0", _localization_case("B3" if quick else "F4")),
        ("dominate B3", _dominate_case("B3", 200_000 // scale)),
        ("freudenthal", _freudenthal_case("B3", (1, 1, 1)) if quick else _freudenthal_case("F4", (1, 1, 0, 1))),
        ("count_violations", _violations_case(294, 12, 200_000 // scale)),
    ]


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, dict):
        return a == b
    return np.array_equal(np.asarray(a), np.asarray(b))


def best_of(func, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - t0)
    return best


def run(repeat: int = 3, quick: bool = False) -> list[dict]:
    if _accel._numba is None:
        raise SystemExit("numba is not importable; nothing to compare")
    before = _accel.backend()
    rows = []
    try:
        for name, func in cases(quick):
            outputs, times = {}, {}
            for backend in ("numba", "numpy"):
                _accel.set_backend(backend)
                outputs[backend] = func()
                times[backend] = best_of(func, repeat)
            if not _same(outputs["numba"], outputs["numpy"]):
                raise AssertionError(f"backends disagree on {name}")
            rows.append({"kernel": name, "numba": times["numba"], "numpy": times["numpy"],
                         "speedup": times["numpy"] / max(times["numba"], 1e-12)})
    finally:
        _accel.set_backend(before)
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="small inputs for a smoke run")
    args = parser.parse_args(argv)
    rows = run(args.repeat, args.quick)
    print(f"{'kernel':<22}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for r in rows:
        print(f"{r['kernel']:<22}{r['numba']:>12.4f}{r['numpy']:>12.4f}{r['speedup']:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
