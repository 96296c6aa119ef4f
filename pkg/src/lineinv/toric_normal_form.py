"""Normal forms for monomials in the degenerate (toric) ring.

A D-matrix is an ordered list of lattice points of D(r) (degree 1) and D(2r)
(degree 2); two D-matrices are equivalent when their columns sum to the same
point.  Every class has exactly one normal representative:

* even degree 2m: m columns of degree 2, row i of every column within 2 of
  ``a_i / m``, and rows monotone on the intervals cut out by ``J_a``;
* odd degree 2m+1: the first column is ``xi(a)`` and the rest is normal.

``normal_form`` builds the representative directly; ``normalize`` reaches it
by column moves (F2 merge two degree-1 columns, F3 rebalance a 1+2 pair, F4
rebalance a 2+2 pair) and records the moves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .errors import EmptyDomain, InvalidIndexSet, InvalidParameter, WeightMismatch
from .polytopes import DiagonalVector, is_lattice_point
from .tableau_core import WeightVector, as_weights

Vec = tuple[int, ...]


# ---------------------------------------------------------------- rounding


def round_even(x: Fraction | int, mode: Literal["minus", "plus"]) -> int:
    """e^-(x) = min{k even : k + 1 >= x};  e^+(x) = max{k even : k - 1 <= x}."""
    x = Fraction(x)
    if mode == "minus":
        return 2 * math.ceil((x - 1) / 2)
    if mode == "plus":
        return 2 * math.floor((x + 1) / 2)
    raise InvalidParameter(f"mode must be 'minus' or 'plus', got {mode!r}")


def _xi(d: Vec, s: Sequence[int], ell: int) -> Vec:
    out = []
    for i, v in enumerate(d):
        x = Fraction(v, ell)
        k = math.floor(x)
        if (k - s[i]) % 2:
            # the other parity class: k+1 is within 1 of x unless x is the integer k
            k = k + 1 if x != k else None
        if k is None or abs(k - x) >= 1:
            raise AssertionError(f"no parity-correct integer within 1 of {x}")
        out.append(k)
    return tuple(out)


def xi_odd(d: DiagonalVector) -> DiagonalVector:
    """Degree-1 summand of an odd-degree lattice point: nearest correct-parity integers."""
    r = d.weights
    if r.total % 2:
        raise EmptyDomain("odd-degree lattice points need an even total weight")
    if d.N % 2 == 0:
        raise InvalidParameter(f"xi needs odd degree, got {d.N}")
    out = DiagonalVector(_xi(d.d, r.prefix_sums(), d.N), 1, r)
    assert is_lattice_point(out), f"xi({d}) = {out} is not a lattice point"
    assert is_lattice_point(d - out), f"{d} - xi is not a lattice point"
    return out


# ---------------------------------------------------------------- index sets


def j0_set(d: Vec, r: Sequence[int], m: int) -> frozenset[int]:
    """Indices i (2..n-1) where d_{i-1}/m, d_i/m are odd integers summing to 2 r_i."""
    out = set()
    for i in range(2, len(r)):
        p, q = d[i - 2], d[i - 1]
        if p % m == 0 and q % m == 0 and (p // m) % 2 == 1 and (q // m) % 2 == 1 and p + q == 2 * m * r[i - 1]:
            out.add(i)
    return frozenset(out)


def j1_set(d: Vec, r: Sequence[int], m: int) -> frozenset[int]:
    """Indices i (2..n-1) with d_{i-1} <= 2 m r_i and d_i <= 2 m r_i."""
    return frozenset(
        i for i in range(2, len(r)) if d[i - 2] <= 2 * m * r[i - 1] and d[i - 1] <= 2 * m * r[i - 1]
    )


def phases(J: Sequence[int] | frozenset[int], n: int) -> tuple[bool, ...]:
    """For coordinates 1..n-1: True on [i_0,i_1), [i_2,i_3), ... (the 'minus' intervals)."""
    cuts = sorted(J)
    out = []
    q = 0
    for i in range(1, n):
        while q < len(cuts) and cuts[q] <= i:
            q += 1
        out.append(q % 2 == 0)
    return tuple(out)


def _split(d: Vec, r: Sequence[int], m: int, J) -> tuple[Vec, Vec]:
    ph = phases(J, len(r))
    first, rest = [], []
    for v, minus in zip(d, ph):
        a, b = ("minus", "plus") if minus else ("plus", "minus")
        first.append(round_even(Fraction(v, m), a))
        rest.append(round_even(Fraction((m - 1) * v, m), b))
    return tuple(first), tuple(rest)


def split_even(d: DiagonalVector, J: Sequence[int] | None = None) -> tuple[DiagonalVector, DiagonalVector]:
    """Write a degree-2m point as (degree 2) + (degree 2m-2)."""
    if d.N % 2 or d.N < 4:
        raise InvalidParameter(f"split_even needs degree 2m with m >= 2, got {d.N}")
    r = d.weights
    m = d.N // 2
    lo, hi = j0_set(d.d, r.r, m), j1_set(d.d, r.r, m)
    Jset = lo if J is None else frozenset(J)
    if not (lo <= Jset <= hi):
        raise InvalidIndexSet(f"J={sorted(Jset)} must contain {sorted(lo)} and lie in {sorted(hi)}")
    a, b = _split(d.d, r.r, m, Jset)
    first, rest = DiagonalVector(a, 2, r), DiagonalVector(b, d.N - 2, r)
    assert is_lattice_point(first) and is_lattice_point(rest), f"bad split of {d}"
    return first, rest


def f_pair(d: Vec, r: Sequence[int]) -> tuple[Vec, Vec]:
    """(f^-, f^+) of a degree-4 point, using J0 of the point itself."""
    return _split(d, r, 2, j0_set(d, r, 2))


def g_pair(d: Vec, r: Sequence[int], J: frozenset[int]) -> tuple[Vec, Vec]:
    """(g^-, g^+) of a degree-4 point with an ambient index set J."""
    if not (j0_set(d, r, 2) <= J <= j1_set(d, r, 2)):
        raise AssertionError(f"ambient index set {sorted(J)} not admissible for {d}")
    return _split(d, r, 2, J)


# ---------------------------------------------------------------- D-matrices


@dataclass(frozen=True)
class DMatrix:
    columns: tuple[DiagonalVector, ...]
    weights: WeightVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", as_weights(self.weights))
        object.__setattr__(self, "columns", tuple(self.columns))
        for c in self.columns:
            if c.weights != self.weights:
                raise WeightMismatch("column over different weights")
            if c.N not in (1, 2) or not is_lattice_point(c):
                raise InvalidParameter(f"column {c} is not a lattice point of degree 1 or 2")

    @classmethod
    def from_vectors(cls, cols: Sequence[tuple[Sequence[int], int]], r) -> "DMatrix":
        r = as_weights(r)
        return cls(tuple(DiagonalVector(tuple(v), N, r) for v, N in cols), r)

    @property
    def degree(self) -> int:
        return sum(c.N for c in self.columns)

    def total(self) -> DiagonalVector:
        n = self.weights.n
        acc = [0] * (n - 1)
        for c in self.columns:
            for i, v in enumerate(c.d):
                acc[i] += v
        return DiagonalVector(tuple(acc), self.degree, self.weights)

    def raw(self) -> list[tuple[Vec, int]]:
        return [(tuple(c.d), c.N) for c in self.columns]

    def __str__(self) -> str:
        return " | ".join(str(c) for c in self.columns) or "(empty)"

    def to_json(self):
        return {
            "weights": list(self.weights.r),
            "columns": [{"d": [int(x) for x in c.d], "degree": c.N} for c in self.columns],
        }

    @classmethod
    def from_json(cls, obj) -> "DMatrix":
        return cls.from_vectors([(c["d"], c["degree"]) for c in obj["columns"]], obj["weights"])


def _add(*vs: Vec) -> Vec:
    return tuple(sum(x) for x in zip(*vs))


def _sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def _even_normal(a: Vec, r: Sequence[int], m: int) -> list[Vec]:
    if m == 0:
        return []
    ph = phases(j1_set(a, r, m), len(r))
    rows = []
    for v, up in zip(a, ph):
        k = 2 * math.floor(Fraction(v, 2 * m))
        t = (m * (k + 2) - v) // 2
        row = [k] * t + [k + 2] * (m - t)
        rows.append(row if up else row[::-1])
    return [tuple(row[j] for row in rows) for j in range(m)]


def normal_form_columns(a: Vec, degree: int, r: Sequence[int]) -> list[tuple[Vec, int]]:
    """Normal representative of the class of a lattice point, as (vector, degree) columns."""
    if degree == 0:
        return []
    if degree % 2:
        if sum(r) % 2:
            raise EmptyDomain("odd-degree lattice points need an even total weight")
        if degree == 1:
            return [(tuple(a), 1)]
        s = WeightVector(tuple(r)).prefix_sums()
        first = _xi(a, s, degree)
        return [(first, 1)] + [(c, 2) for c in _even_normal(_sub(a, first), r, (degree - 1) // 2)]
    return [(c, 2) for c in _even_normal(a, r, degree // 2)]


def normal_form(d: DiagonalVector) -> DMatrix:
    cols = normal_form_columns(tuple(d.d), d.N, d.weights.r)
    out = DMatrix.from_vectors(cols, d.weights)
    assert tuple(out.total().d) == tuple(d.d) or not cols
    return out


def _even_is_normal(cols: Sequence[Vec], r: Sequence[int]) -> bool:
    m = len(cols)
    if m == 0:
        return True
    a = _add(*cols)
    for i, v in enumerate(a):
        for c in cols:
            if abs(Fraction(c[i]) - Fraction(v, m)) >= 2:
                return False
    ph = phases(j1_set(a, r, m), len(r))
    for i, up in enumerate(ph):
        row = [c[i] for c in cols]
        if up and any(row[j] > row[j + 1] for j in range(m - 1)):
            return False
        if not up and any(row[j] < row[j + 1] for j in range(m - 1)):
            return False
    return True


def is_normal_raw(cols: Sequence[tuple[Vec, int]], r: Sequence[int]) -> bool:
    if not cols:
        return True
    degree = sum(N for _, N in cols)
    if degree % 2 == 0:
        return all(N == 2 for _, N in cols) and _even_is_normal([v for v, _ in cols], r)
    if cols[0][1] != 1 or any(N != 1 + (j > 0) for j, (_, N) in enumerate(cols)):
        return False
    s = WeightVector(tuple(r)).prefix_sums()
    a = _add(*(v for v, _ in cols))
    if cols[0][0] != _xi(a, s, degree):
        return False
    return _even_is_normal([v for v, _ in cols[1:]], r)


def is_normal(A: DMatrix) -> bool:
    return is_normal_raw(A.raw(), A.weights.r)


# ---------------------------------------------------------------- moves


@dataclass(frozen=True)
class Step:
    kind: Literal["F2", "F3", "F4"]
    indices: tuple[int, int]
    before: tuple[tuple[Vec, int], ...]
    after: tuple[tuple[Vec, int], ...]


@dataclass
class NormalizationTrace:
    steps: list[Step] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def kinds(self) -> list[str]:
        return [s.kind for s in self.steps]


def apply_step(cols: list[tuple[Vec, int]], step: Step) -> list[tuple[Vec, int]]:
    j, k = step.indices
    if (cols[j], cols[k]) != step.before:
        raise AssertionError("trace does not match the matrix it is replayed on")
    out = list(cols)
    if step.kind == "F2":
        merged = step.after[0]
        out = [c for p, c in enumerate(out) if p not in (j, k)] + [merged]
    else:
        out[j], out[k] = step.after
    return out


def replay(A: DMatrix, trace: NormalizationTrace) -> DMatrix:
    cols = A.raw()
    for step in trace.steps:
        cols = apply_step(cols, step)
    return DMatrix.from_vectors(cols, A.weights)


class _Normalizer:
    def __init__(self, cols: list[tuple[Vec, int]], r: Sequence[int]):
        self.cols = list(cols)
        self.r = tuple(r)
        self.s = WeightVector(self.r).prefix_sums()
        self.trace = NormalizationTrace()
        n_cols = max(len(cols), 1)
        self.budget = 200 * n_cols * n_cols * len(self.r) + 200

    def _record(self, kind, j, k, after) -> None:
        self.budget -= 1
        if self.budget < 0:
            raise AssertionError("normalization exceeded its step budget")
        step = Step(kind, (j, k), (self.cols[j], self.cols[k]), tuple(after))
        self.cols = apply_step(self.cols, step)
        self.trace.steps.append(step)

    def pair_move(self, kind, j, k, new_j: Vec, new_k: Vec, degs=(2, 2)) -> bool:
        after = ((new_j, degs[0]), (new_k, degs[1]))
        if after == (self.cols[j], self.cols[k]):
            return False
        self._record(kind, j, k, after)
        return True

    # F2 ------------------------------------------------------------
    def merge_degree_one(self, keep: int) -> None:
        while True:
            ones = [p for p, (_, N) in enumerate(self.cols) if N == 1]
            if len(ones) <= keep:
                return
            j, k = ones[0], ones[1]
            merged = (_add(self.cols[j][0], self.cols[k][0]), 2)
            self._record("F2", j, k, (merged,))

    # F4 with f-maps: bring every row of the degree-2 block within 2 of each other
    def balance(self, start: int) -> None:
        while True:
            moved = False
            m = len(self.cols)
            for i in range(len(self.r) - 1):
                for j in range(start, m):
                    for k in range(j + 1, m):
                        if abs(self.cols[j][0][i] - self.cols[k][0][i]) >= 4:
                            lo, hi = f_pair(_add(self.cols[j][0], self.cols[k][0]), self.r)
                            self.pair_move("F4", j, k, lo, hi)
                            moved = True
            if not moved:
                return

    # F4 with g-maps: sort rows into the monotone pattern of the ambient J
    def order(self, start: int) -> None:
        block = [v for v, _ in self.cols[start:]]
        m = len(block)
        if m <= 1:
            return
        J = j1_set(_add(*block), self.r, m)
        while True:
            moved = False
            for j in range(start, len(self.cols)):
                for k in range(j + 1, len(self.cols)):
                    lo, hi = g_pair(_add(self.cols[j][0], self.cols[k][0]), self.r, J)
                    if self.pair_move("F4", j, k, lo, hi):
                        moved = True
            if not moved:
                break
        assert _even_is_normal([v for v, _ in self.cols[start:]], self.r)

    def _row_distance(self, i: int, target: Fraction) -> Fraction:
        total = Fraction(0)
        for v, N in self.cols:
            total += N * (Fraction(v[i], N) - target) ** 2
        return total

    def seat_first(self) -> None:
        """Odd degree: drive the degree-1 column to xi(a) row by row (F3 and F4 moves)."""
        ones = [p for p, (_, N) in enumerate(self.cols) if N == 1]
        (p,) = ones
        if p != 0:
            d = _add(self.cols[0][0], self.cols[p][0])
            x = _xi(d, self.s, 3)
            self._record("F3", 0, p, ((x, 1), (_sub(d, x), 2)))
        degree = sum(N for _, N in self.cols)
        a = _add(*(v for v, _ in self.cols))
        for _ in range(self.budget):
            bad = None
            for i in range(len(self.r) - 1):
                v = Fraction(a[i], degree)
                if abs(self.cols[0][0][i] - v) >= 1 or any(
                    abs(c[i] - 2 * v) >= 2 for c, _ in self.cols[1:]
                ):
                    bad = i
                    break
            if bad is None:
                return
            self._improve_row(bad, Fraction(a[bad], degree))
        raise AssertionError("could not seat the degree-1 column")

    def _improve_row(self, i: int, v: Fraction) -> None:
        before = self._row_distance(i, v)
        best = None
        for k in range(1, len(self.cols)):
            d = _add(self.cols[0][0], self.cols[k][0])
            x = _xi(d, self.s, 3)
            cand = ((x, 1), (_sub(d, x), 2))
            if cand == (self.cols[0], self.cols[k]):
                continue
            gain = self._gain(i, v, [(0, cand[0]), (k, cand[1])])
            if gain > 0 and (best is None or gain > best[0]):
                best = (gain, "F3", 0, k, cand)
        for j in range(1, len(self.cols)):
            for k in range(j + 1, len(self.cols)):
                if abs(self.cols[j][0][i] - self.cols[k][0][i]) >= 4:
                    lo, hi = f_pair(_add(self.cols[j][0], self.cols[k][0]), self.r)
                    cand = ((lo, 2), (hi, 2))
                    gain = self._gain(i, v, [(j, cand[0]), (k, cand[1])])
                    if gain > 0 and (best is None or gain > best[0]):
                        best = (gain, "F4", j, k, cand)
        if best is None:
            raise AssertionError(f"row {i + 1} cannot be improved (distance {before})")
        _, kind, j, k, cand = best
        self._record(kind, j, k, cand)

    def _gain(self, i: int, v: Fraction, repl) -> Fraction:
        before = self._row_distance(i, v)
        saved = list(self.cols)
        for p, c in repl:
            self.cols[p] = c
        after = self._row_distance(i, v)
        self.cols = saved
        return before - after


def normalize_raw(cols: Sequence[tuple[Vec, int]], r: Sequence[int]):
    r = tuple(r)
    degree = sum(N for _, N in cols)
    if degree % 2 and sum(r) % 2:
        raise EmptyDomain("odd-degree lattice points need an even total weight")
    work = _Normalizer(list(cols), r)
    if is_normal_raw(work.cols, r):
        return work.cols, work.trace
    if degree % 2 == 0:
        work.merge_degree_one(keep=0)
        work.balance(0)
        work.order(0)
    else:
        work.merge_degree_one(keep=1)
        work.seat_first()
        work.balance(1)
        work.order(1)
    assert is_normal_raw(work.cols, r), "normalization ended in a non-normal matrix"
    return work.cols, work.trace


def normalize(A: DMatrix) -> tuple[DMatrix, NormalizationTrace]:
    cols, trace = normalize_raw(A.raw(), A.weights.r)
    return DMatrix.from_vectors(cols, A.weights), trace
