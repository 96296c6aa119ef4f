"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are called in-process through the ``use_numba`` switch, so the
numbers compare the kernels themselves (numba compile time is excluded by a
warm-up call).
"""
import argparse
import time

import numpy as np

from lineinv import _kernels
from lineinv.presentation import ideal_rows, reduced_relations


def octagon_ideal(k):
    """Degree-k multiples of the 14 octagon quadrics as a dense residue matrix."""
    polys = [rel.polynomial() for rel in reduced_relations((1,) * 8)]
    rows = ideal_rows(polys, 14, k)
    cols = {m: j for j, m in enumerate(sorted({m for row in rows for m in row}))}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, row in enumerate(rows):
        for m, c in row.items():
            mat[i, cols[m]] = c % _kernels.PRIME
    return mat


def best_of(fn, repeat):
    fn()  # warm-up (JIT compile)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    dense = rng.integers(0, _kernels.PRIME, size=(300, 300))
    yield "rank 300x300 dense", lambda nb: _kernels.rank_mod_p(dense, use_numba=nb)
    for k in (3, 4):
        mat = octagon_ideal(k)
        yield f"rank octagon ideal, degree {k} ({mat.shape[0]}x{mat.shape[1]})", lambda nb, m=mat: _kernels.rank_mod_p(m, use_numba=nb)
    yield "count D(40 * 1^12)", lambda nb: _kernels.count_paths((1,) * 12, 40, use_numba=nb)
    yield "count D(6 * (3,5,2,7,4,6,1,5))", lambda nb: _kernels.count_paths((3, 5, 2, 7, 4, 6, 1, 5), 6, use_numba=nb)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or LINEINV_DISABLE_NUMBA set); only the numpy column is meaningful")
    print(f"{'case':48s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, fn in cases():
        assert fn(True) == fn(False), name
        t_nb = best_of(lambda: fn(True), args.repeat)
        t_np = best_of(lambda: fn(False), args.repeat)
        print(f"{name:48s} {t_nb * 1e3:9.2f}ms {t_np * 1e3:9.2f}ms {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
