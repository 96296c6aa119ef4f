"""Factoring tableaux into lowest-degree tableaux (Kempe's algorithm).

A tableau of weight ``N * 1^n`` is an N-regular multigraph on ``1..n`` (one
edge per column).  A perfect matching of the doubled bipartite graph gives a
permutation whose cycles sit inside the graph; odd cycles are merged in pairs
with the three-term identity, even cycles split into two alternating perfect
matchings, and one of them is peeled off as a degree-1 factor.  Recursing on
the (N-1)-regular remainder writes the tableau as a signed sum of products of
N perfect matchings.

General weights are lifted to ``1^{|r|}`` by splitting every point i into
``r_i`` points, factored there and pushed back down.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Sequence

from .errors import InfeasibleWeight, InvalidParameter, WeightMismatch
from .straightening import ColumnProduct, straighten_product
from .tableau_core import LinearCombination, Tableau, WeightVector, as_weights, multiweight

Edge = tuple[int, int]


@dataclass(frozen=True)
class TableauGraph:
    n: int
    edges: tuple[Edge, ...]

    def valence(self) -> tuple[int, ...]:
        out = [0] * self.n
        for i, j in self.edges:
            out[i - 1] += 1
            out[j - 1] += 1
        return tuple(out)

    def to_json(self):
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


def tableau_graph(t: Tableau) -> TableauGraph:
    return TableauGraph(t.n, tuple(sorted(t.columns)))


# ---------------------------------------------------------------- side splitting


@dataclass(frozen=True)
class SplitMap:
    """Nondecreasing surjection ``phi: 1..n -> 1..n'`` with r'_i = sum of r_j over phi(j) = i."""

    phi: tuple[int, ...]
    source: WeightVector
    target: WeightVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi", tuple(int(x) for x in self.phi))
        object.__setattr__(self, "source", as_weights(self.source))
        object.__setattr__(self, "target", as_weights(self.target))
        phi, src, tgt = self.phi, self.source, self.target
        if len(phi) != src.n:
            raise InvalidParameter("phi must be defined on every source point")
        if any(phi[k] > phi[k + 1] for k in range(len(phi) - 1)):
            raise InvalidParameter("phi must be nondecreasing")
        if set(phi) != set(range(1, tgt.n + 1)):
            raise InvalidParameter("phi must be onto 1..n'")
        pushed = [0] * tgt.n
        for j, i in enumerate(phi):
            pushed[i - 1] += src[j]
        if tuple(pushed) != tgt.r:
            raise WeightMismatch(f"phi pushes {src.r} to {tuple(pushed)}, not {tgt.r}")

    @classmethod
    def unfold(cls, r: WeightVector | Sequence[int]) -> "SplitMap":
        """The map 1^{|r|} -> r sending consecutive blocks of size r_i to i."""
        r = as_weights(r)
        phi = [i + 1 for i, w in enumerate(r.r) for _ in range(w)]
        return cls(tuple(phi), WeightVector((1,) * r.total), r)

    def block(self, i: int) -> list[int]:
        return [j + 1 for j, v in enumerate(self.phi) if v == i]


def side_split(m: SplitMap, t: Tableau) -> Tableau | None:
    """Relabel entries by phi; None (zero) when some column collapses."""
    if t.n != m.source.n:
        raise WeightMismatch("tableau does not live over the source of the map")
    top = tuple(m.phi[a - 1] for a in t.top)
    bottom = tuple(m.phi[b - 1] for b in t.bottom)
    if any(a == b for a, b in zip(top, bottom)):
        return None
    return Tableau(m.target.n, top, bottom)


def side_split_product(m: SplitMap, p: ColumnProduct) -> ColumnProduct | None:
    cols = tuple((m.phi[a - 1], m.phi[b - 1]) for a, b in p.columns)
    if any(a == b for a, b in cols):
        return None
    return ColumnProduct(m.target.n, cols, p.sign)


def side_split_combination(m: SplitMap, x: LinearCombination) -> LinearCombination:
    return x.map_keys(lambda t: side_split(m, t))


def split_preimage(t: Tableau, m: SplitMap) -> Tableau:
    """A semistandard preimage of weight N 1^{|r|}, where t has weight N r and m = unfold(r).

    Reading the i's of t top row first, left to right, the first N become the
    first point of block i, the next N the second point, and so on.
    """
    r = m.target
    k1, k2 = multiweight(t)
    w = [a + b for a, b in zip(k1, k2)]
    N = w[0] // r[0] if r[0] else 0
    if any(x != N * y for x, y in zip(w, r.r)):
        raise WeightMismatch(f"tableau weight {tuple(w)} is not a multiple of {r.r}")
    seen = [0] * r.n
    blocks = [m.block(i + 1) for i in range(r.n)]

    def relabel(i: int) -> int:
        j = blocks[i - 1][seen[i - 1] // N]
        seen[i - 1] += 1
        return j

    top = [relabel(i) for i in t.top]
    bottom = [relabel(i) for i in t.bottom]
    return Tableau(m.source.n, tuple(top), tuple(bottom))


# ---------------------------------------------------------------- matching


def _perfect_matching(n: int, edges: Sequence[Edge]) -> list[int]:
    """sigma with {i, sigma(i)} an edge for every i (Kuhn's augmenting paths)."""
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for lst in adj:
        lst.sort()
    woman_of = [0] * (n + 1)  # man -> woman
    man_of = [0] * (n + 1)  # woman -> man

    def augment(man: int, seen: list[bool]) -> bool:
        for w in adj[man]:
            if seen[w]:
                continue
            seen[w] = True
            if man_of[w] == 0 or augment(man_of[w], seen):
                man_of[w] = man
                woman_of[man] = w
                return True
        return False

    for man in range(1, n + 1):
        if not augment(man, [False] * (n + 1)):
            raise AssertionError("regular multigraph without a perfect matching")
    return woman_of


def _walk(edges: Sequence[Edge]) -> list[int]:
    """Edge indices of a single cycle in traversal order."""
    adj: dict[int, list[int]] = {}
    for k, (a, b) in enumerate(edges):
        adj.setdefault(a, []).append(k)
        adj.setdefault(b, []).append(k)
    order = [0]
    used = {0}
    v = edges[0][1]
    while len(order) < len(edges):
        nxt = next(k for k in adj[v] if k not in used)
        used.add(nxt)
        order.append(nxt)
        a, b = edges[nxt]
        v = b if a == v else a
    return order


def _alternate(cycle: Sequence[Edge]) -> tuple[list[Edge], list[Edge]]:
    order = _walk(cycle)
    return [cycle[k] for k in order[0::2]], [cycle[k] for k in order[1::2]]


def _peel(n: int, edges: list[Edge]) -> list[tuple[int, list[Edge], list[Edge]]]:
    """One Kempe step: signed (factor, remainder) pairs with factor * remainder = edges."""
    sigma = _perfect_matching(n, edges)
    pool: dict[frozenset, list[int]] = {}
    for k, (a, b) in enumerate(edges):
        pool.setdefault(frozenset((a, b)), []).append(k)
    taken: set[int] = set()

    def take(a: int, b: int) -> Edge:
        ks = pool[frozenset((a, b))]
        for k in ks:
            if k not in taken:
                taken.add(k)
                return edges[k]
        raise AssertionError("matching uses an edge twice")

    common: list[Edge] = []
    cycles: list[list[Edge]] = []
    done = [False] * (n + 1)
    for start in range(1, n + 1):
        if done[start]:
            continue
        verts = [start]
        done[start] = True
        v = sigma[start]
        while v != start:
            verts.append(v)
            done[v] = True
            v = sigma[v]
        if len(verts) == 2:
            # a 2-cycle uses its edge once as a common factor
            common.append(take(verts[0], verts[1]))
        else:
            cycles.append([take(verts[k], verts[(k + 1) % len(verts)]) for k in range(len(verts))])
    rest = [e for k, e in enumerate(edges) if k not in taken]

    # cycles come out ordered by smallest vertex; pair odd ones in that order
    odd = [c for c in cycles if len(c) % 2]
    even = [c for c in cycles if len(c) % 2 == 0]
    assert len(odd) % 2 == 0
    pairs = [(odd[k], odd[k + 1]) for k in range(0, len(odd), 2)]
    options = []
    for c1, c2 in pairs:
        k1 = min(range(len(c1)), key=lambda k: tuple(sorted(c1[k])))
        k2 = min(range(len(c2)), key=lambda k: tuple(sorted(c2[k])))
        (a, b), (c, d) = c1[k1], c2[k2]
        base = c1[:k1] + c1[k1 + 1 :] + c2[:k2] + c2[k2 + 1 :]
        # (a,b)(c,d) = (a,c)(b,d) - (a,d)(b,c)
        options.append([(1, base + [(a, c), (b, d)]), (-1, base + [(a, d), (b, c)])])

    out = []
    for choice in iproduct(*options) if options else [()]:
        sign = 1
        factor = list(common)
        remainder = list(rest)
        for s, cyc in choice:
            sign *= s
            f, g = _alternate(cyc)
            factor += f
            remainder += g
        for cyc in even:
            f, g = _alternate(cyc)
            factor += f
            remainder += g
        out.append((sign, factor, remainder))
    return out


def kempe_expand_graph(n: int, edges: Sequence[Edge]) -> list[tuple[int, list[list[Edge]]]]:
    """Signed products of perfect matchings equal to the product of minors ``edges``."""
    edges = list(edges)
    if not edges:
        return [(1, [])]
    val = [0] * (n + 1)
    for a, b in edges:
        if a == b:
            raise InvalidParameter("loops are zero minors")
        val[a] += 1
        val[b] += 1
    N = val[1]
    if any(v != N for v in val[1:]):
        raise InvalidParameter("graph is not regular")
    if N == 1:
        return [(1, [edges])]
    out = []
    for sign, factor, remainder in _peel(n, edges):
        for s, rest in kempe_expand_graph(n, remainder):
            out.append((sign * s, [factor] + rest))
    return out


def _lowest(r: WeightVector) -> tuple[WeightVector, int]:
    """Weight of the lowest-degree tableaux and its multiple of r."""
    return (r, 1) if r.total % 2 == 0 else (r.scaled(2), 2)


def _degree_over(t: Tableau, r: WeightVector) -> int:
    k1, k2 = multiweight(t)
    w = [a + b for a, b in zip(k1, k2)]
    if t.n != r.n:
        raise WeightMismatch("tableau and weights over different n")
    N = w[0] // r[0]
    if any(x != N * y for x, y in zip(w, r.r)):
        raise WeightMismatch(f"tableau weight {tuple(w)} is not a multiple of {r.r}")
    return N


def kempe_expand(t: Tableau, r: WeightVector | Sequence[int]) -> list[tuple[int, list[ColumnProduct]]]:
    """Raw factorization: signed products of column products of the lowest weight."""
    r = as_weights(r)
    N = _degree_over(t, r)
    low, mult = _lowest(r)
    if N % mult:
        raise InfeasibleWeight(f"weight {N}*r is not a multiple of the lowest weight {low.r}")
    if N == 0:
        return [(1, [])]
    from .polytopes import count_lattice

    if count_lattice(low, 1) == 0:
        raise InfeasibleWeight(f"no lowest-degree tableaux for weights {r.r}")
    m = SplitMap.unfold(low)
    up = split_preimage(t, m)
    out = []
    for sign, factors in kempe_expand_graph(m.source.n, up.columns):
        pushed = [side_split_product(m, ColumnProduct(m.source.n, tuple(f))) for f in factors]
        if any(p is None for p in pushed):
            continue
        out.append((sign, pushed))
    return out


def _expand_product(combos: list[LinearCombination]) -> LinearCombination:
    acc: dict[tuple, int] = {(): 1}
    for combo in combos:
        nxt: dict[tuple, int] = {}
        for mono, c in acc.items():
            for t, v in combo.items():
                key = tuple(sorted(mono + (t,)))
                nxt[key] = nxt.get(key, 0) + c * v
        acc = {k: v for k, v in nxt.items() if v}
    return LinearCombination(acc)


def kempe_factor(t: Tableau, r: WeightVector | Sequence[int]) -> LinearCombination:
    """t as an integer polynomial in lowest-degree semistandard tableaux.

    Keys are sorted tuples of lowest-degree tableaux (monomials).
    """
    out = LinearCombination()
    for sign, factors in kempe_expand(t, r):
        combos = [straighten_product(p) for p in factors]
        for mono, c in _expand_product(combos).items():
            out.add_term(mono, sign * c)
    return out
