"""Two-row semistandard tableaux, weight vectors, multiweights and the *-product.

A tableau with ``k`` columns over ``1..n`` is stored as its two rows. Each
column ``(top[j], bottom[j])`` stands for the 2x2 minor on rows ``top[j]`` and
``bottom[j]`` of an ``n x 2`` matrix, so a tableau is a product of ``k`` minors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import EntryOutOfRange, InvalidParameter, NotSemistandard

DEFAULT_LG_CONSTANT = 2


@dataclass(frozen=True)
class WeightVector:
    r: tuple[int, ...]

    def __post_init__(self) -> None:
        r = tuple(int(x) for x in self.r)
        object.__setattr__(self, "r", r)
        if len(r) < 1:
            raise InvalidParameter("a weight vector needs at least one entry")
        if any(x < 1 for x in r):
            raise InvalidParameter(f"weights must be positive integers, got {r}")

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def total(self) -> int:
        return sum(self.r)

    def prefix_sums(self) -> tuple[int, ...]:
        """s_j = r_1 + ... + r_j for j = 1..n."""
        out, acc = [], 0
        for x in self.r:
            acc += x
            out.append(acc)
        return tuple(out)

    def scaled(self, k: int) -> "WeightVector":
        return WeightVector(tuple(k * x for x in self.r))

    def __iter__(self) -> Iterator[int]:
        return iter(self.r)

    def __len__(self) -> int:
        return len(self.r)

    def __getitem__(self, i: int) -> int:
        return self.r[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.r))


def as_weights(r: WeightVector | Sequence[int]) -> WeightVector:
    return r if isinstance(r, WeightVector) else WeightVector(tuple(r))


@dataclass(frozen=True, order=True)
class Tableau:
    """A validated two-row semistandard tableau.

    Ordering (``<``) is structural and only used for deterministic sorting.
    """

    n: int
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "top", tuple(int(x) for x in self.top))
        object.__setattr__(self, "bottom", tuple(int(x) for x in self.bottom))
        _validate(self.top, self.bottom, self.n)

    @property
    def k(self) -> int:
        return len(self.top)

    @property
    def columns(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.top, self.bottom))

    def weight(self) -> tuple[int, ...]:
        k1, k2 = multiweight(self)
        return tuple(a + b for a, b in zip(k1, k2))

    def __str__(self) -> str:
        return format_tableau(self)

    def to_json(self) -> dict[str, Any]:
        return {"top": list(self.top), "bottom": list(self.bottom), "n": self.n}

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "Tableau":
        return make_tableau(obj["top"], obj["bottom"], obj["n"])


def _validate(top: Sequence[int], bottom: Sequence[int], n: int) -> None:
    if n < 1:
        raise InvalidParameter(f"n must be positive, got {n}")
    if len(top) != len(bottom):
        raise NotSemistandard(f"rows have different lengths {len(top)} and {len(bottom)}")
    for x in (*top, *bottom):
        if not 1 <= x <= n:
            raise EntryOutOfRange(f"entry {x} outside 1..{n}")
    for j, (a, b) in enumerate(zip(top, bottom), start=1):
        if a >= b:
            raise NotSemistandard(f"column {j} is not strictly increasing ({a} over {b})")
    for name, row in (("top", top), ("bottom", bottom)):
        for j in range(1, len(row)):
            if row[j - 1] > row[j]:
                raise NotSemistandard(f"{name} row decreases at column {j + 1}")


def make_tableau(top: Sequence[int], bottom: Sequence[int], n: int) -> Tableau:
    return Tableau(n, tuple(top), tuple(bottom))


def empty_tableau(n: int) -> Tableau:
    return Tableau(n, (), ())


def multiweight(t: Tableau) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-row index counts (k1, k2)."""
    k1 = [0] * t.n
    k2 = [0] * t.n
    for a in t.top:
        k1[a - 1] += 1
    for b in t.bottom:
        k2[b - 1] += 1
    return tuple(k1), tuple(k2)


def check_multiweight(k1: Sequence[int], k2: Sequence[int]) -> None:
    """Raise NotSemistandard unless (k1, k2) is the multiweight of some tableau."""
    n = len(k1)
    if len(k2) != n:
        raise InvalidParameter("k1 and k2 must have the same length")
    if any(x < 0 for x in (*k1, *k2)):
        raise InvalidParameter("multiweight entries must be nonnegative")
    if sum(k1) != sum(k2):
        raise NotSemistandard("row counts differ")
    if n and (k2[0] != 0 or k1[-1] != 0):
        raise NotSemistandard("1 cannot sit in the bottom row, n cannot sit in the top row")
    below, above = 0, 0
    for i in range(n):
        below += k2[i]
        if below > above:
            raise NotSemistandard(f"stairstep inequality fails at index {i + 1}")
        above += k1[i]


def tableau_from_multiweight(k1: Sequence[int], k2: Sequence[int]) -> Tableau:
    check_multiweight(k1, k2)
    top = [i + 1 for i, c in enumerate(k1) for _ in range(c)]
    bottom = [i + 1 for i, c in enumerate(k2) for _ in range(c)]
    return make_tableau(top, bottom, len(k1))


def lg_degree(t: Tableau, C: int = DEFAULT_LG_CONSTANT) -> int:
    if C < 2:
        raise InvalidParameter(f"LG constant must be at least 2, got {C}")
    return sum(t.top) + C * sum(t.bottom)


def star_product(t: Tableau, s: Tableau) -> Tableau:
    if t.n != s.n:
        raise InvalidParameter(f"tableaux over different n ({t.n} and {s.n})")
    return Tableau(t.n, tuple(sorted(t.top + s.top)), tuple(sorted(t.bottom + s.bottom)))


def star_all(ts: Iterable[Tableau], n: int) -> Tableau:
    top: list[int] = []
    bottom: list[int] = []
    for t in ts:
        top.extend(t.top)
        bottom.extend(t.bottom)
    return Tableau(n, tuple(sorted(top)), tuple(sorted(bottom)))


def format_tableau(t: Tableau) -> str:
    return "[" + " ".join(map(str, t.top)) + " / " + " ".join(map(str, t.bottom)) + "]"


_TABLEAU_RE = re.compile(r"^\s*\[([\d\s]*)/([\d\s]*)\]\s*$")


def parse_tableau(text: str, n: int) -> Tableau:
    m = _TABLEAU_RE.match(text)
    if not m:
        raise InvalidParameter(f"cannot parse tableau {text!r}")
    return make_tableau([int(x) for x in m.group(1).split()], [int(x) for x in m.group(2).split()], n)


class LinearCombination:
    """Finite formal sum with exact integer coefficients; zero terms are dropped.

    Keys are any hashable canonical objects: tableaux, or sorted tuples of
    generator tableaux (monomials).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, int] | Iterable[tuple[Hashable, int]] | None = None):
        self._terms: dict[Hashable, int] = {}
        if terms is None:
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            self.add_term(key, c)

    @classmethod
    def single(cls, key: Hashable, coeff: int = 1) -> "LinearCombination":
        return cls({key: coeff})

    def add_term(self, key: Hashable, coeff: int) -> None:
        if not coeff:
            return
        c = self._terms.get(key, 0) + coeff
        if c:
            self._terms[key] = c
        else:
            del self._terms[key]

    @property
    def terms(self) -> dict[Hashable, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, key: Hashable) -> int:
        return self._terms.get(key, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinearCombination):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        raise TypeError("LinearCombination is mutable during construction and not hashable")

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        out = LinearCombination(self._terms)
        for k, c in other.items():
            out.add_term(k, c)
        return out

    def __neg__(self) -> "LinearCombination":
        return LinearCombination({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LinearCombination") -> "LinearCombination":
        return self + (-other)

    def scale(self, c: int) -> "LinearCombination":
        return LinearCombination({k: c * v for k, v in self._terms.items()})

    def map_keys(self, fn: Callable[[Hashable], Hashable | None]) -> "LinearCombination":
        """Push keys through ``fn``; keys mapped to None are dropped."""
        out = LinearCombination()
        for k, c in self._terms.items():
            nk = fn(k)
            if nk is not None:
                out.add_term(nk, c)
        return out

    def sorted_items(self, key=None) -> list[tuple[Hashable, int]]:
        return sorted(self._terms.items(), key=(lambda kv: key(kv[0])) if key else None)

    def __repr__(self) -> str:
        inner = ", ".join(f"{c:+d}*{k}" for k, c in self._terms.items())
        return f"LinearCombination({inner})"
