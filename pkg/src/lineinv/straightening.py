"""Straightening of products of 2x2 minors into the semistandard basis.

The only rewrite rule is the three-term identity

    (a, d)(b, c) = (a, c)(b, d) - (a, b)(c, d),      a < b < c < d,

applied to an adjacent pair of columns whose bottom entries descend.  The first
term keeps the top-row content, the second strictly lowers the LG-degree, so
the process terminates.  ``evaluate_numeric`` is an independent oracle: it
evaluates products of minors on integer matrices with Python integers.
"""
from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, EntryOutOfRange, InvalidParameter
from .tableau_core import LinearCombination, Tableau

Column = tuple[int, int]
ColumnKey = tuple[Column, ...]


@dataclass(frozen=True)
class ColumnProduct:
    """Signed ordered product of minors ``(i, j)``; i and j need not be ordered."""

    n: int
    columns: tuple[Column, ...]
    sign: int = 1

    def __post_init__(self) -> None:
        cols = tuple((int(i), int(j)) for i, j in self.columns)
        object.__setattr__(self, "columns", cols)
        if self.sign not in (1, -1):
            raise InvalidParameter("sign must be +1 or -1")
        for i, j in cols:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise EntryOutOfRange(f"column ({i},{j}) outside 1..{self.n}")

    @classmethod
    def of(cls, t: Tableau) -> "ColumnProduct":
        return cls(t.n, t.columns)

    def canonical(self) -> tuple[int, ColumnKey] | None:
        """(sign, sorted ordered columns), or None if some column is (i, i)."""
        sign = self.sign
        cols = []
        for i, j in self.columns:
            if i == j:
                return None
            if i > j:
                sign = -sign
                i, j = j, i
            cols.append((i, j))
        cols.sort()
        return sign, tuple(cols)


def product_of(tableaux: Iterable[Tableau], n: int | None = None) -> ColumnProduct:
    ts = list(tableaux)
    if n is None:
        if not ts:
            raise InvalidParameter("cannot infer n from an empty product")
        n = ts[0].n
    cols: list[Column] = []
    for t in ts:
        cols.extend(t.columns)
    return ColumnProduct(n, tuple(cols))


def _find_violation(cols: ColumnKey) -> int:
    # sorted by (top, bottom): a descent in the bottom row between adjacent
    # columns with strictly increasing tops is the only possible violation
    for p in range(len(cols) - 1):
        if cols[p][1] > cols[p + 1][1]:
            return p
    return -1


def _lg(cols: ColumnKey) -> int:
    return sum(i + 2 * j for i, j in cols)


def _inversions(cols: ColumnKey) -> int:
    bottoms = [j for _, j in cols]
    return sum(1 for p in range(len(bottoms)) for q in range(p + 1, len(bottoms)) if bottoms[p] > bottoms[q])


def _rewrite(cols: ColumnKey, p: int) -> tuple[ColumnKey, ColumnKey]:
    # sorted columns with a descent: a < b < c < d
    (a, d), (b, c) = cols[p], cols[p + 1]
    head, tail = cols[:p], cols[p + 2 :]
    first = tuple(sorted(head + ((a, c), (b, d)) + tail))
    second = tuple(sorted(head + ((a, b), (c, d)) + tail))
    return first, second


class _Cache:
    """Memo of straightened column multisets; writes are idempotent."""

    def __init__(self, limit: int = 200_000):
        self.limit = limit
        self._data: dict[ColumnKey, dict[ColumnKey, int]] = {}
        self._lock = threading.Lock()

    def get(self, key: ColumnKey):
        return self._data.get(key)

    def put(self, key: ColumnKey, value: dict[ColumnKey, int]) -> None:
        with self._lock:
            if len(self._data) >= self.limit:
                self._data.clear()
            self._data[key] = value

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_CACHE = _Cache()


def clear_cache() -> None:
    _CACHE.clear()


def _straighten_key(cols: ColumnKey) -> dict[ColumnKey, int]:
    """Expansion of a sorted ordered-column product as {semistandard key: coeff}."""
    hit = _CACHE.get(cols)
    if hit is not None:
        return hit
    result: dict[ColumnKey, int] = {}
    pending: dict[ColumnKey, int] = {cols: 1}
    # process high LG first and, within a level, the most inverted first, so
    # contributions to the same intermediate product are merged before expansion
    heap = [(-_lg(cols), -_inversions(cols), cols)]
    n = max((j for _, j in cols), default=1)
    cap = 10_000 * (len(cols) * n + 1) ** 2
    steps = 0
    while heap:
        _, _, key = heapq.heappop(heap)
        coeff = pending.pop(key, 0)
        if not coeff:
            continue
        cached = _CACHE.get(key) if key is not cols else None
        if cached is not None:
            for k, c in cached.items():
                v = result.get(k, 0) + coeff * c
                if v:
                    result[k] = v
                else:
                    result.pop(k, None)
            continue
        p = _find_violation(key)
        if p < 0:
            v = result.get(key, 0) + coeff
            if v:
                result[key] = v
            else:
                result.pop(key, None)
            continue
        steps += 1
        if steps > cap:
            raise AssertionError(f"straightening exceeded its step budget on {cols}")
        first, second = _rewrite(key, p)
        for new, c in ((first, coeff), (second, -coeff)):
            if new in pending:
                pending[new] += c
            else:
                pending[new] = c
                heapq.heappush(heap, (-_lg(new), -_inversions(new), new))
    _CACHE.put(cols, result)
    return result


def _key_to_tableau(key: ColumnKey, n: int) -> Tableau:
    return Tableau(n, tuple(i for i, _ in key), tuple(j for _, j in key))


def straighten_product(p: ColumnProduct | Tableau) -> LinearCombination:
    """Unique expansion of a product of minors in semistandard tableaux."""
    if isinstance(p, Tableau):
        return LinearCombination.single(p, 1)
    canon = p.canonical()
    if canon is None:
        return LinearCombination()
    sign, cols = canon
    return LinearCombination(
        {_key_to_tableau(k, p.n): sign * c for k, c in _straighten_key(cols).items()}
    )


def straighten_tableaux(tableaux: Sequence[Tableau], n: int) -> LinearCombination:
    return straighten_product(product_of(tableaux, n))


def straighten_combination(x: LinearCombination, n: int) -> LinearCombination:
    """Straighten a combination whose keys are ColumnProducts, Tableaux or tuples of Tableaux."""
    out = LinearCombination()
    for key, c in x.items():
        for t, v in straighten_product(_as_product(key, n)).items():
            out.add_term(t, c * v)
    return out


def _as_product(key, n: int | None) -> ColumnProduct:
    if isinstance(key, ColumnProduct):
        return key
    if isinstance(key, Tableau):
        return ColumnProduct.of(key)
    if isinstance(key, tuple):
        if n is None:
            n = key[0].n if key else None
        if n is None:
            raise InvalidParameter("empty monomial needs an explicit n")
        return product_of(key, n)
    raise InvalidParameter(f"cannot read {key!r} as a product of minors")


# ---------------------------------------------------------------- oracle


def _minor_table(M: Sequence[Sequence[int]]) -> list[list[int]]:
    rows = [(int(r[0]), int(r[1])) for r in M]
    n = len(rows)
    return [[rows[i][0] * rows[j][1] - rows[j][0] * rows[i][1] for j in range(n)] for i in range(n)]


def _eval_product(p: ColumnProduct, minors: list[list[int]]) -> int:
    v = p.sign
    for i, j in p.columns:
        v *= minors[i - 1][j - 1]
        if not v:
            return 0
    return v


def _value(x, minors: list[list[int]], n: int | None) -> int:
    size = len(minors)
    if isinstance(x, LinearCombination):
        total = 0
        for key, c in x.items():
            p = _as_product(key, n if n is not None else size)
            if p.n != size:
                raise DimensionMismatch(f"expected an {p.n}x2 matrix")
            total += c * _eval_product(p, minors)
        return total
    p = _as_product(x, n if n is not None else size)
    if p.n != size:
        raise DimensionMismatch(f"expected an {p.n}x2 matrix")
    return _eval_product(p, minors)


def evaluate_numeric(x, M: Sequence[Sequence[int]], n: int | None = None) -> int:
    """Exact value of a tableau, product of minors, or combination of either at M.

    ``M`` is an ``n x 2`` integer matrix; the minor (i, j) is
    ``M[i,0]*M[j,1] - M[j,0]*M[i,1]``.  For combinations of monomials (tuples of
    tableaux) the product of the factors is evaluated.
    """
    if any(len(row) != 2 for row in M):
        raise DimensionMismatch("expected a matrix with two columns")
    return _value(x, _minor_table(M), n)


@lru_cache(maxsize=512)
def _random_minors(n: int, count: int, seed: int, low: int, high: int) -> tuple:
    return tuple(_minor_table(M) for M in random_matrices(n, count, seed, low, high))


def random_matrices(n: int, count: int, seed: int = 0, low: int = -9, high: int = 9) -> list[list[list[int]]]:
    """Seeded integer ``n x 2`` matrices with entries in [low, high]."""
    rng = np.random.default_rng(seed)
    arr = rng.integers(low, high + 1, size=(count, n, 2))
    return [[[int(v) for v in row] for row in mat] for mat in arr]


def certify(lhs, rhs, n: int, trials: int = 20, seed: int = 0) -> bool:
    """True iff lhs and rhs agree exactly on ``trials`` seeded random matrices."""
    for minors in _random_minors(n, trials, seed, -9, 9):
        if _value(lhs, minors, n) != _value(rhs, minors, n):
            return False
    return True
