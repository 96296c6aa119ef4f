"""Diagonal-length polytopes, interlacing patterns and row-count matrices.

Three coordinate systems describe the same lattice points:

* diagonal vectors ``d = (d_1, ..., d_{n-1})`` with ``d_1 = N r_1``,
  ``d_{n-1} = N r_n`` and, for ``2 <= i <= n-1``, the triangle inequalities
  ``|d_{i-1} - d_i| <= N r_i <= d_{i-1} + d_i``;
* interlacing pairs ``(a, b)`` with ``a_i + b_i = N s_i`` and ``d = a - b``;
* row-count matrices ``(k1, k2)``, the first differences of ``a`` and ``b``,
  which are multiweights of tableaux.

A diagonal vector is a lattice point iff ``d_j = N s_j (mod 2)`` for all j.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Any, Iterator, Sequence

from .errors import InvalidParameter, NotLatticePoint, OutsidePolytope, WeightMismatch
from .tableau_core import (
    DEFAULT_LG_CONSTANT,
    Tableau,
    WeightVector,
    as_weights,
    multiweight,
    tableau_from_multiweight,
)

Number = int | Fraction


def _num(x) -> Number:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    return int(x)


@dataclass(frozen=True)
class DiagonalVector:
    d: tuple[Number, ...]
    N: int
    weights: WeightVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", tuple(_num(x) for x in self.d))
        object.__setattr__(self, "weights", as_weights(self.weights))
        if self.N < 0:
            raise InvalidParameter("degree must be nonnegative")
        if len(self.d) != self.weights.n - 1:
            raise WeightMismatch(f"expected {self.weights.n - 1} diagonals, got {len(self.d)}")

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.d) + f")@{self.N}"

    def __add__(self, other: "DiagonalVector") -> "DiagonalVector":
        if self.weights != other.weights:
            raise WeightMismatch("cannot add diagonals over different weights")
        return DiagonalVector(tuple(x + y for x, y in zip(self.d, other.d)), self.N + other.N, self.weights)

    def __sub__(self, other: "DiagonalVector") -> "DiagonalVector":
        if self.weights != other.weights:
            raise WeightMismatch("cannot subtract diagonals over different weights")
        return DiagonalVector(tuple(x - y for x, y in zip(self.d, other.d)), self.N - other.N, self.weights)

    def to_json(self) -> dict[str, Any]:
        return {"d": [int(x) for x in self.d], "N": self.N, "weights": list(self.weights.r)}

    @classmethod
    def from_json(cls, obj) -> "DiagonalVector":
        return cls(tuple(obj["d"]), int(obj["N"]), WeightVector(tuple(obj["weights"])))


@dataclass(frozen=True)
class GTPattern:
    a: tuple[Number, ...]
    b: tuple[Number, ...]
    Lam: Number

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(_num(x) for x in self.a))
        object.__setattr__(self, "b", tuple(_num(x) for x in self.b))
        object.__setattr__(self, "Lam", _num(self.Lam))

    def violations(self) -> list[str]:
        a, b, n = self.a, self.b, len(self.a)
        out = []
        if len(b) != n:
            return ["rows have different lengths"]
        if a[-1] != self.Lam or b[-1] != self.Lam:
            out.append("last entries must equal Lambda")
        if b[0] != 0:
            out.append("b_1 must vanish")
        for i in range(n - 1):
            if a[i + 1] < a[i]:
                out.append(f"a_{i + 2} < a_{i + 1}")
            if a[i] < b[i + 1]:
                out.append(f"a_{i + 1} < b_{i + 2}")
            if b[i + 1] < b[i]:
                out.append(f"b_{i + 2} < b_{i + 1}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def row_sums(self) -> tuple[Number, ...]:
        return tuple(_num(x + y) for x, y in zip(self.a, self.b))


@dataclass(frozen=True)
class SSPoint:
    k1: tuple[Number, ...]
    k2: tuple[Number, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "k1", tuple(_num(x) for x in self.k1))
        object.__setattr__(self, "k2", tuple(_num(x) for x in self.k2))

    def violations(self, r: WeightVector | None = None, N: int | None = None) -> list[str]:
        k1, k2, n = self.k1, self.k2, len(self.k1)
        out = []
        if any(x < 0 for x in (*k1, *k2)):
            out.append("negative entry")
        if sum(k1) != sum(k2):
            out.append("row sums differ")
        if k2[0] != 0:
            out.append("k2_1 must vanish")
        if k1[-1] != 0:
            out.append("k1_n must vanish")
        below, above = 0, 0
        for i in range(n):
            below += k2[i]
            if below > above:
                out.append(f"stairstep fails at {i + 1}")
            above += k1[i]
        if r is not None and N is not None:
            if any(x + y != N * w for x, y, w in zip(k1, k2, r.r)):
                out.append("weight mismatch")
        return out

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in (*self.k1, *self.k2))


# ---------------------------------------------------------------- maps


def _lam(r: WeightVector, N: int) -> Fraction:
    return Fraction(N * r.total, 2)


def phi(g: GTPattern) -> tuple[Number, ...]:
    """Diagonal coordinates d_i = a_i - b_i, i = 1..n-1 (rational)."""
    return tuple(_num(x - y) for x, y in zip(g.a[:-1], g.b[:-1]))


def phi_vector(g: GTPattern, r: WeightVector | Sequence[int], N: int) -> DiagonalVector:
    r = as_weights(r)
    s = r.prefix_sums()
    if len(g.a) != r.n:
        raise WeightMismatch("pattern length does not match the weights")
    if g.Lam != _lam(r, N) or any(x != N * y for x, y in zip(g.row_sums(), s)):
        raise WeightMismatch("row sums of the pattern do not match N*r")
    return DiagonalVector(phi(g), N, r)


def phi_inv(d: DiagonalVector) -> GTPattern:
    if not in_polytope(d):
        raise OutsidePolytope(f"{d} violates {polytope_violation(d)}")
    r, N = d.weights, d.N
    s = r.prefix_sums()
    lam = _lam(r, N)
    a = [_num(Fraction(N * s[j] + d.d[j], 2)) for j in range(r.n - 1)] + [lam]
    b = [_num(Fraction(N * s[j] - d.d[j], 2)) for j in range(r.n - 1)] + [lam]
    return GTPattern(tuple(a), tuple(b), lam)


def psi(g: GTPattern) -> SSPoint:
    """First differences of a and b (with a_0 = b_0 = 0)."""
    a = (0,) + g.a
    b = (0,) + g.b
    n = len(g.a)
    return SSPoint(tuple(a[i + 1] - a[i] for i in range(n)), tuple(b[i + 1] - b[i] for i in range(n)))


def psi_inv(p: SSPoint) -> GTPattern:
    a, b, sa, sb = [], [], 0, 0
    for x, y in zip(p.k1, p.k2):
        sa += x
        sb += y
        a.append(sa)
        b.append(sb)
    return GTPattern(tuple(a), tuple(b), a[-1])


# ---------------------------------------------------------------- membership


def polytope_violation(d: DiagonalVector) -> str | None:
    """Description of the first violated defining inequality, or None."""
    r, N, x = d.weights.r, d.N, d.d
    n = len(r)
    if n == 1:
        return None if N == 0 else "a single point carries no invariants in positive degree"
    if x[0] != N * r[0]:
        return f"d_1 must equal {N * r[0]}"
    if x[-1] != N * r[-1]:
        return f"d_{n - 1} must equal {N * r[-1]}"
    for v in x:
        if v < 0:
            return "negative diagonal"
    for i in range(2, n):
        p, q, side = x[i - 2], x[i - 1], N * r[i - 1]
        if abs(p - q) > side:
            return f"|d_{i - 1} - d_{i}| > {side}"
        if p + q < side:
            return f"d_{i - 1} + d_{i} < {side}"
    return None


def in_polytope(d: DiagonalVector) -> bool:
    return polytope_violation(d) is None


def lattice_status(d: DiagonalVector) -> tuple[bool, str]:
    why = polytope_violation(d)
    if why is not None:
        return False, "outside polytope: " + why
    s = d.weights.prefix_sums()
    for j, v in enumerate(d.d):
        if not isinstance(v, int):
            return False, f"d_{j + 1} is not an integer"
        if (v - d.N * s[j]) % 2:
            return False, f"d_{j + 1} has the wrong parity"
    return True, "lattice point"


def is_lattice_point(d: DiagonalVector) -> bool:
    return lattice_status(d)[0]


# ---------------------------------------------------------------- enumeration


def _backward_intervals(r: tuple[int, ...], N: int) -> list[tuple[int, int]] | None:
    """Feasible interval for each d_j (0-based j), from the right end inwards."""
    n = len(r)
    m = n - 1
    iv: list[tuple[int, int] | None] = [None] * m
    lo = hi = N * r[-1]
    iv[m - 1] = (lo, hi)
    for j in range(m - 1, 0, -1):
        side = N * r[j]
        nlo = max(0, side - hi, lo - side)
        nhi = side + hi
        if nlo > nhi:
            return None
        lo, hi = nlo, nhi
        iv[j - 1] = (lo, hi)
    first = N * r[0]
    if not iv[0][0] <= first <= iv[0][1]:
        return None
    return iv  # type: ignore[return-value]


def _raw_points(r: tuple[int, ...], N: int) -> Iterator[tuple[int, ...]]:
    n = len(r)
    if n == 1:
        if N == 0:
            yield ()
        return
    if (N * sum(r)) % 2:
        return
    iv = _backward_intervals(r, N)
    if iv is None:
        return
    m = n - 1
    d = [0] * m
    d[0] = N * r[0]

    def rec(j: int) -> Iterator[tuple[int, ...]]:
        if j == m:
            yield tuple(d)
            return
        prev, side = d[j - 1], N * r[j]
        lo = max(abs(prev - side), iv[j][0])
        hi = min(prev + side, iv[j][1])
        # parity: d_j = d_{j-1} + N r_j (mod 2), and |prev - side| has that parity
        if (lo - prev - side) % 2:
            lo += 1
        for v in range(lo, hi + 1, 2):
            d[j] = v
            yield from rec(j + 1)

    yield from rec(1)


def diagonal_lg(d: Sequence[int], r: WeightVector, N: int, C: int = DEFAULT_LG_CONSTANT) -> int:
    """LG-degree of the tableau attached to a lattice point, read off (a, b)."""
    s = r.prefix_sums()
    n = r.n
    a = [(N * s[j] + d[j]) // 2 for j in range(n - 1)] + [N * r.total // 2]
    b = [(N * s[j] - d[j]) // 2 for j in range(n - 1)] + [N * r.total // 2]
    top = sum((i + 1) * (a[i] - (a[i - 1] if i else 0)) for i in range(n))
    bottom = sum((i + 1) * (b[i] - (b[i - 1] if i else 0)) for i in range(n))
    return top + C * bottom


def canonical_key(d: DiagonalVector, C: int = DEFAULT_LG_CONSTANT) -> tuple:
    return (diagonal_lg(d.d, d.weights, d.N, C), d.d)


@lru_cache(maxsize=256)
def _enumerate_cached(r: tuple[int, ...], N: int, C: int) -> tuple[DiagonalVector, ...]:
    w = WeightVector(r)
    pts = [DiagonalVector(p, N, w) for p in _raw_points(r, N)]
    pts.sort(key=lambda v: canonical_key(v, C))
    return tuple(pts)


def enumerate_lattice(r: WeightVector | Sequence[int], N: int, C: int = DEFAULT_LG_CONSTANT) -> list[DiagonalVector]:
    """All lattice points of D(N r), ordered by (LG-degree, lexicographic d)."""
    if N < 0:
        raise InvalidParameter("degree must be nonnegative")
    return list(_enumerate_cached(as_weights(r).r, int(N), int(C)))


def count_lattice(r: WeightVector | Sequence[int], N: int) -> int:
    """Number of lattice points of D(N r) by dynamic programming over d_j."""
    r = as_weights(r).r
    if N < 0:
        raise InvalidParameter("degree must be nonnegative")
    n = len(r)
    if n == 1:
        return 1 if N == 0 else 0
    if (N * sum(r)) % 2:
        return 0
    from ._kernels import count_paths

    return count_paths(r, N)


def count_paths_python(r: Sequence[int], N: int) -> int:
    n = len(r)
    layer = {N * r[0]: 1}
    for j in range(1, n - 1):
        side = N * r[j]
        nxt: dict[int, int] = {}
        for prev, c in layer.items():
            for v in range(abs(prev - side), prev + side + 1, 2):
                nxt[v] = nxt.get(v, 0) + c
        layer = nxt
    return layer.get(N * r[-1], 0)


def brute_force_lattice(r: WeightVector | Sequence[int], N: int) -> set[tuple[int, ...]]:
    """Reference enumeration by scanning a bounding box (small cases only)."""
    r = as_weights(r)
    n = r.n
    if n == 1:
        return {()} if N == 0 else set()
    if n == 2:
        candidates = [(N * r[0],)]
    else:
        bound = N * r.total
        candidates = [
            (N * r[0],) + mid + (N * r[-1],) for mid in iproduct(range(bound + 1), repeat=n - 3)
        ]
    return {d for d in candidates if is_lattice_point(DiagonalVector(d, N, r))}


# ---------------------------------------------------------------- tableaux


def sspoint_of(d: DiagonalVector) -> SSPoint:
    return psi(phi_inv(d))


def tableau_from_diagonal(d: DiagonalVector) -> Tableau:
    ok, why = lattice_status(d)
    if not ok:
        raise NotLatticePoint(f"{d}: {why}")
    p = sspoint_of(d)
    return tableau_from_multiweight(p.k1, p.k2)


def diagonal_of_tableau(t: Tableau, r: WeightVector | Sequence[int]) -> DiagonalVector:
    r = as_weights(r)
    if t.n != r.n:
        raise WeightMismatch(f"tableau over {t.n} points, weights over {r.n}")
    k1, k2 = multiweight(t)
    w = [x + y for x, y in zip(k1, k2)]
    if t.k == 0:
        N = 0
    else:
        if w[0] % r[0]:
            raise WeightMismatch(f"tableau weight {w} is not a multiple of {r.r}")
        N = w[0] // r[0]
    if any(x != N * y for x, y in zip(w, r.r)):
        raise WeightMismatch(f"tableau weight {tuple(w)} is not a multiple of {r.r}")
    d, up, down = [], 0, 0
    for j in range(r.n - 1):
        up += k1[j]
        down += k2[j]
        d.append(up - down)
    return DiagonalVector(tuple(d), N, r)
