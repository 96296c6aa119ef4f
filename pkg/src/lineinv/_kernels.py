"""Numeric hot loops: modular Gaussian elimination and lattice-point counting.

Each kernel has a numba ``@njit`` version and a vectorised numpy version.  Set
``LINEINV_DISABLE_NUMBA=1`` to force the numpy path (also used automatically
when numba is not importable).
"""
from __future__ import annotations

import os
from typing import Sequence

import numpy as np

PRIME = 2_147_483_647  # 2**31 - 1, so products of residues fit in int64

_DISABLED = os.environ.get("LINEINV_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("numba disabled by environment")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------- rank mod p


@njit(cache=True)
def _rank_mod_p_jit(a, p):
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for i in range(rank, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                tmp = a[piv, j]
                a[piv, j] = a[rank, j]
                a[rank, j] = tmp
        # modular inverse by Fermat
        inv = 1
        base = a[rank, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(c, cols):
            a[rank, j] = (a[rank, j] * inv) % p
        for i in range(rank + 1, rows):
            f = a[i, c]
            if f != 0:
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[rank, j]) % p
        rank += 1
    return rank


def _rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank, c:] = (a[rank, c:] * inv) % p
        below = a[rank + 1 :, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + rank + 1
            a[idx, c:] = (a[idx, c:] - np.outer(below[mask], a[rank, c:])) % p
        rank += 1
    return rank


def to_residues(matrix, p: int = PRIME) -> np.ndarray:
    """Reduce an integer matrix (Python ints allowed) to an int64 array mod p."""
    if isinstance(matrix, np.ndarray) and matrix.dtype != object:
        return np.mod(matrix.astype(np.int64), p)
    rows = [[int(x) % p for x in row] for row in matrix]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def rank_mod_p(matrix, p: int = PRIME, use_numba: bool | None = None) -> int:
    """Rank over GF(p); a lower bound for the rank over the rationals."""
    a = to_residues(matrix, p).copy()
    if a.size == 0:
        return 0
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and HAVE_NUMBA:
        return int(_rank_mod_p_jit(a, np.int64(p)))
    return _rank_mod_p_numpy(a, p)


# ---------------------------------------------------------------- path counts


@njit(cache=True)
def _count_paths_jit(sides, start, end, width):
    layer = np.zeros(width, dtype=np.int64)
    layer[start] = 1
    for t in range(sides.shape[0]):
        s = sides[t]
        diff = np.zeros(width + 2, dtype=np.int64)
        for v in range(width):
            c = layer[v]
            if c != 0:
                lo = abs(v - s)
                diff[lo] += c
                diff[v + s + 2] -= c
        nxt = np.zeros(width, dtype=np.int64)
        acc0 = 0
        acc1 = 0
        for v in range(width):
            if v % 2 == 0:
                acc0 += diff[v]
                nxt[v] = acc0
            else:
                acc1 += diff[v]
                nxt[v] = acc1
        layer = nxt
    return layer[end]


def _count_paths_numpy(sides: np.ndarray, start: int, end: int, width: int) -> int:
    layer = np.zeros(width, dtype=np.int64)
    layer[start] = 1
    idx = np.arange(width)
    for s in sides:
        s = int(s)
        nz = layer != 0
        v = idx[nz]
        c = layer[nz]
        lo = np.abs(v - s)
        hi = v + s
        diff = np.zeros(width + 2, dtype=np.int64)
        np.add.at(diff, lo, c)
        np.add.at(diff, hi + 2, -c)
        nxt = np.empty(width, dtype=np.int64)
        nxt[0::2] = np.cumsum(diff[0:width:2])
        nxt[1::2] = np.cumsum(diff[1:width:2])
        layer = nxt
    return int(layer[end])


def count_paths(r: Sequence[int], N: int, use_numba: bool | None = None) -> int:
    """Number of lattice points of D(N r), n >= 2 and N |r| even."""
    r = [int(x) for x in r]
    sides = [N * x for x in r[1:-1]]
    start, end = N * r[0], N * r[-1]
    # the count never exceeds the number of unconstrained step sequences
    bound = 1
    for s in sides:
        bound *= s + 1
    if bound >= 2**62:
        from .polytopes import count_paths_python

        return count_paths_python(r, N)
    # every reachable diagonal is at most start + sum(sides)
    width = start + sum(sides) + 1
    if end >= width:
        return 0
    arr = np.array(sides, dtype=np.int64)
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and HAVE_NUMBA:
        return int(_count_paths_jit(arr, start, end, width))
    return _count_paths_numpy(arr, start, end, width)
