"""Exact and modular linear algebra on sparse integer vectors.

Vectors are dicts ``{column: value}``; routines that pick pivots themselves
need comparable column keys (integer positions in practice).  Exact work uses
``Fraction``; rank certificates use elimination modulo a large prime, which
gives a lower bound for the rank over the rationals, so equality with an upper
bound is a proof.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Sequence

import numpy as np

from ._kernels import PRIME, rank_mod_p

SparseVec = dict[Hashable, int]


def primitive(vec: dict[Hashable, Fraction | int], order: Sequence[Hashable] | None = None) -> dict[Hashable, int]:
    """Scale to coprime integers with a positive leading coefficient.

    The leading coefficient is taken in ``order`` when given, else in sorted key order.
    """
    vec = {k: Fraction(v) for k, v in vec.items() if v}
    if not vec:
        return {}
    den = 1
    for v in vec.values():
        den = den * v.denominator // gcd(den, v.denominator)
    ints = {k: int(v * den) for k, v in vec.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    keys = [k for k in order if k in ints] if order is not None else sorted(ints)
    lead = ints[keys[0]]
    s = 1 if lead > 0 else -1
    return {k: s * v // g for k, v in ints.items()}


def rref(rows: Iterable[dict[Hashable, int]], order: Sequence[Hashable]) -> list[dict[Hashable, Fraction]]:
    """Reduced row echelon form over Q with columns in ``order`` (pivots leftmost)."""
    pos = {k: i for i, k in enumerate(order)}
    basis: list[tuple[int, dict[Hashable, Fraction]]] = []  # (pivot position, row)
    for raw in rows:
        row = {k: Fraction(v) for k, v in raw.items() if v}
        for p, b in basis:
            key = order[p]
            c = row.get(key)
            if c:
                for k, v in b.items():
                    nv = row.get(k, 0) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        p = min(pos[k] for k in row)
        piv = row[order[p]]
        row = {k: v / piv for k, v in row.items()}
        # clear the new pivot from the existing rows
        key = order[p]
        for idx, (q, b) in enumerate(basis):
            c = b.get(key)
            if c:
                for k, v in row.items():
                    nv = b.get(k, 0) - c * v
                    if nv:
                        b[k] = nv
                    else:
                        b.pop(k, None)
        basis.append((p, row))
    basis.sort(key=lambda pr: pr[0])
    return [b for _, b in basis]


def left_kernel(rows: Sequence[dict[Hashable, int]]) -> list[dict[int, Fraction]]:
    """Basis of {c : sum_i c_i rows[i] = 0}, as sparse vectors over row indices."""
    # eliminate, tracking each reduced row as a combination of the originals
    pivots: dict[Hashable, tuple[dict[Hashable, Fraction], dict[int, Fraction]]] = {}
    kernel = []
    for i, raw in enumerate(rows):
        row = {k: Fraction(v) for k, v in raw.items() if v}
        combo: dict[int, Fraction] = {i: Fraction(1)}
        while row:
            key = min(row)
            if key not in pivots:
                break
            prow, pcombo = pivots[key]
            c = row[key] / prow[key]
            for k, v in prow.items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            for k, v in pcombo.items():
                nv = combo.get(k, 0) - c * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        if row:
            pivots[min(row)] = (row, combo)
        else:
            kernel.append(combo)
    return kernel


def rank_sparse(rows: Sequence[dict[Hashable, int]], columns: Sequence[Hashable] | None = None, p: int = PRIME) -> int:
    """Rank mod p of sparse integer rows (dense kernel call)."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    if columns is None:
        seen = {}
        for r in rows:
            for k in r:
                seen.setdefault(k, len(seen))
        index = seen
    else:
        index = {k: i for i, k in enumerate(columns)}
    mat = np.zeros((len(rows), len(index)), dtype=np.int64)
    for i, r in enumerate(rows):
        for k, v in r.items():
            mat[i, index[k]] = int(v) % p
    # fewer rows than columns is the cheaper orientation for elimination
    if mat.shape[0] > mat.shape[1]:
        mat = np.ascontiguousarray(mat.T)
    return rank_mod_p(mat, p)


class ModpEchelon:
    """Incremental echelon basis mod p, for greedy independence tests."""

    def __init__(self, p: int = PRIME):
        self.p = p
        self.rows: dict[Hashable, dict[Hashable, int]] = {}

    def _reduce(self, vec: dict[Hashable, int]) -> dict[Hashable, int]:
        p = self.p
        row = {k: v % p for k, v in vec.items() if v % p}
        while row:
            key = min(row)
            base = self.rows.get(key)
            if base is None:
                return row
            c = row[key]
            for k, v in base.items():
                nv = (row.get(k, 0) - c * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, vec: dict[Hashable, int]) -> bool:
        """Insert; True iff the vector was independent of the current span."""
        row = self._reduce(vec)
        if not row:
            return False
        key = min(row)
        inv = pow(row[key], self.p - 2, self.p)
        self.rows[key] = {k: v * inv % self.p for k, v in row.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)
