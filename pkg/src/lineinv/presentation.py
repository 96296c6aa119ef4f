"""Generators and relations of the invariant ring.

Degree-k pieces have two bases indexed by the lattice points of D(k r): the
semistandard tableaux, and the *normal monomials* (products of degree-1 and
degree-2 generators read off the normal-form D-matrix of each point).  The
exchange matrix between them is unipotent, so any product of generators is
expanded in normal monomials by straightening followed by back-substitution.
Doing this for every non-normal product of two generators gives the lifted
relations; replacing each degree-2 generator by its Kempe factorization turns
them into relations among degree-1 generators.
"""
from __future__ import annotations

import string
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial
from typing import Iterable, Literal, Sequence

from .errors import OddTotalWeight, TooLarge
from .kempe import kempe_factor
from .linalg import ModpEchelon, primitive, rank_sparse, rref
from .polytopes import DiagonalVector, count_lattice, enumerate_lattice, tableau_from_diagonal
from .straightening import evaluate_numeric, random_matrices, straighten_tableaux
from .tableau_core import DEFAULT_LG_CONSTANT, LinearCombination, Tableau, WeightVector, as_weights
from .toric_normal_form import is_normal_raw, normal_form_columns

Monomial = tuple[int, ...]
Kind = Literal["F2", "F3", "F4"]


# ---------------------------------------------------------------- generators


@dataclass(frozen=True)
class GeneratorSet:
    """Degree-1 and degree-2 generators, each list sorted by descending diagonal."""

    weights: WeightVector
    G1: tuple[Tableau, ...]
    G2: tuple[Tableau, ...]
    D1: tuple[tuple[int, ...], ...]
    D2: tuple[tuple[int, ...], ...]

    @property
    def all(self) -> tuple[Tableau, ...]:
        return self.G1 + self.G2

    def index(self, t: Tableau) -> int:
        return self._ids()[t]

    def _ids(self) -> dict[Tableau, int]:
        cache = self.__dict__.get("_id_cache")
        if cache is None:
            cache = {t: i for i, t in enumerate(self.all)}
            object.__setattr__(self, "_id_cache", cache)
        return cache

    def labels(self) -> list[str]:
        g1, g2 = len(self.G1), len(self.G2)
        first = list(string.ascii_uppercase[:g1]) if g1 <= 26 else [f"x{i + 1}" for i in range(g1)]
        return first + [f"t{j + 1}" for j in range(g2)]

    def tableaux_of(self, mono: Monomial) -> tuple[Tableau, ...]:
        gens = self.all
        return tuple(gens[i] for i in mono)


def _points_desc(r: WeightVector, N: int) -> list[tuple[int, ...]]:
    return sorted((tuple(d.d) for d in enumerate_lattice(r, N)), reverse=True)


@lru_cache(maxsize=64)
def _generators(r: tuple[int, ...]) -> GeneratorSet:
    w = WeightVector(r)
    d1 = _points_desc(w, 1)
    d2 = _points_desc(w, 2)
    g1 = tuple(tableau_from_diagonal(DiagonalVector(d, 1, w)) for d in d1)
    g2 = tuple(tableau_from_diagonal(DiagonalVector(d, 2, w)) for d in d2)
    return GeneratorSet(w, g1, g2, tuple(d1), tuple(d2))


def generators(r: WeightVector | Sequence[int]) -> GeneratorSet:
    return _generators(as_weights(r).r)


# ---------------------------------------------------------------- normal monomials


@dataclass(frozen=True)
class NormalMonomial:
    point: DiagonalVector
    columns: tuple[tuple[tuple[int, ...], int], ...]
    ids: Monomial
    tableaux: tuple[Tableau, ...]


def _column_id(gens: GeneratorSet, vec: tuple[int, ...], deg: int) -> int:
    table = gens.__dict__.get("_point_ids")
    if table is None:
        table = {(d, 1): i for i, d in enumerate(gens.D1)}
        table.update({(d, 2): len(gens.D1) + j for j, d in enumerate(gens.D2)})
        object.__setattr__(gens, "_point_ids", table)
    return table[(vec, deg)]


def normal_monomials(r: WeightVector | Sequence[int], k: int, C: int = DEFAULT_LG_CONSTANT) -> list[NormalMonomial]:
    """One normal monomial per lattice point of D(k r), in the canonical point order."""
    r = as_weights(r)
    gens = generators(r)
    out = []
    for d in enumerate_lattice(r, k, C):
        cols = tuple(normal_form_columns(tuple(d.d), k, r.r))
        ids = tuple(sorted(_column_id(gens, v, deg) for v, deg in cols))
        out.append(NormalMonomial(d, cols, ids, gens.tableaux_of(ids)))
    return out


# ---------------------------------------------------------------- change of basis


@dataclass
class BasisExchange:
    """Columns expand normal monomials in the semistandard basis (sparse storage)."""

    k: int
    N_list: list[NormalMonomial]
    SS_list: list[Tableau]
    columns: list[dict[int, int]]
    ss_index: dict[Tableau, int] = field(repr=False)
    n_index: dict[Monomial, int] = field(repr=False)

    @property
    def C(self) -> list[list[int]]:
        size = len(self.SS_list)
        mat = [[0] * size for _ in range(size)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                mat[i][j] = v
        return mat

    def is_unipotent_upper(self) -> bool:
        for j, col in enumerate(self.columns):
            if col.get(j) != 1 or any(i > j for i in col):
                return False
        return True

    def solve(self, b: dict[int, int]) -> dict[int, int]:
        """x with C x = b, by back-substitution (exact, integer)."""
        res = dict(b)
        x: dict[int, int] = {}
        for j in range(len(self.columns) - 1, -1, -1):
            v = res.pop(j, 0)
            if not v:
                continue
            x[j] = v
            for i, c in self.columns[j].items():
                if i != j:
                    nv = res.get(i, 0) - v * c
                    if nv:
                        res[i] = nv
                    else:
                        res.pop(i, None)
        assert not res, "right-hand side outside the span of the exchange matrix"
        return x

    def ss_vector(self, combo: LinearCombination) -> dict[int, int]:
        return {self.ss_index[t]: c for t, c in combo.items()}

    def express(self, tableaux: Sequence[Tableau], n: int) -> LinearCombination:
        """Product of tableaux of total degree k as a combination of normal monomials."""
        b = self.ss_vector(straighten_tableaux(tableaux, n))
        return LinearCombination({self.N_list[j].ids: c for j, c in self.solve(b).items()})


@lru_cache(maxsize=64)
def _exchange(r: tuple[int, ...], k: int, C: int) -> BasisExchange:
    w = WeightVector(r)
    nms = normal_monomials(w, k, C)
    ss = [tableau_from_diagonal(d) for d in enumerate_lattice(w, k, C)]
    ss_index = {t: i for i, t in enumerate(ss)}
    cols = []
    for nm in nms:
        combo = straighten_tableaux(nm.tableaux, w.n) if nm.tableaux else LinearCombination({ss[0]: 1})
        cols.append({ss_index[t]: c for t, c in combo.items()})
    return BasisExchange(k, nms, ss, cols, ss_index, {nm.ids: j for j, nm in enumerate(nms)})


def change_of_basis(r: WeightVector | Sequence[int], k: int, C: int = DEFAULT_LG_CONSTANT) -> BasisExchange:
    return _exchange(as_weights(r).r, int(k), int(C))


# ---------------------------------------------------------------- relations


@dataclass
class Relation:
    """``lhs_coeff * lhs = rhs`` among generator monomials (ids into a GeneratorSet)."""

    kind: Kind
    lhs: Monomial
    rhs: LinearCombination
    degree: int
    kempe_form: LinearCombination | None = None
    lhs_coeff: int = 1

    def polynomial(self) -> LinearCombination:
        """lhs_coeff * lhs - rhs, which vanishes in the ring."""
        out = LinearCombination({self.lhs: self.lhs_coeff})
        return out - self.rhs

    def evaluate(self, gens: GeneratorSet, M) -> int:
        return evaluate_polynomial(self.polynomial(), gens, M)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "degree": self.degree,
            "lhs": list(self.lhs),
            "rhs": _terms_json(self.rhs),
        }
        if self.lhs_coeff != 1:
            out["lhs_coeff"] = self.lhs_coeff
        if self.kempe_form is not None:
            out["kempe_form"] = _terms_json(self.kempe_form)
        return out


def _terms_json(x: LinearCombination) -> list[dict]:
    return [{"coeff": c, "monomial": list(m)} for m, c in sorted(x.items(), key=lambda kv: kv[0])]


def evaluate_polynomial(poly: LinearCombination, gens: GeneratorSet, M) -> int:
    n = gens.weights.n
    return evaluate_numeric(LinearCombination({gens.tableaux_of(m): c for m, c in poly.items()}), M, n)


def relation_holds(rel: Relation, gens: GeneratorSet, trials: int = 20, seed: int = 0) -> bool:
    for M in random_matrices(gens.weights.n, trials, seed):
        if rel.evaluate(gens, M) != 0:
            return False
    if rel.kempe_form is not None:
        for M in random_matrices(gens.weights.n, trials, seed + 1):
            if evaluate_polynomial(rel.kempe_form, gens, M) != 0:
                return False
    return True


def _feasible(r: WeightVector) -> bool:
    low = r if r.total % 2 == 0 else r.scaled(2)
    return count_lattice(low, 1) > 0


def _is_doubled(r: WeightVector) -> bool:
    return r.total % 2 == 1 or all(x % 2 == 0 for x in r.r)


def _base_of(r: WeightVector) -> WeightVector:
    """Weight r' whose doubled ring is presented for r (r itself when |r| is odd)."""
    if r.total % 2:
        return r
    return WeightVector(tuple(x // 2 for x in r.r))


def _lifts(r: WeightVector, degrees: Iterable[int], C: int) -> list[Relation]:
    gens = generators(r)
    n = r.n
    g1 = len(gens.G1)
    out: list[Relation] = []
    degrees = set(degrees)
    if 2 in degrees and g1:
        ex = change_of_basis(r, 2, C)
        for p, q in combinations_with_replacement(range(g1), 2):
            rhs = ex.express([gens.G1[p], gens.G1[q]], n)
            out.append(Relation("F2", (p, q), rhs, 2))
    if 3 in degrees and g1:
        ex = change_of_basis(r, 3, C)
        for p in range(g1):
            for j, d2 in enumerate(gens.D2):
                if is_normal_raw([(gens.D1[p], 1), (d2, 2)], r.r):
                    continue
                q = g1 + j
                rhs = ex.express([gens.G1[p], gens.G2[j]], n)
                out.append(Relation("F3", (p, q), rhs, 3))
    if 4 in degrees:
        ex = change_of_basis(r, 4, C)
        for a, b in combinations_with_replacement(range(len(gens.D2)), 2):
            da, db = gens.D2[a], gens.D2[b]
            if is_normal_raw([(da, 2), (db, 2)], r.r) or is_normal_raw([(db, 2), (da, 2)], r.r):
                continue
            rhs = ex.express([gens.G2[a], gens.G2[b]], n)
            out.append(Relation("F4", (g1 + a, g1 + b), rhs, 4))
    return out


def minimal_relations_doubled(r: WeightVector | Sequence[int], C: int = DEFAULT_LG_CONSTANT) -> list[Relation]:
    """Quadratic relations presenting the ring of weight 2r in its degree-1 generators.

    One relation per non-normal unordered pair of lattice points of D(2r);
    ids refer to ``generators(2r)``.
    """
    base = as_weights(r)
    gens = generators(base.scaled(2))
    own = generators(base)
    g1 = len(own.G1)
    shift = {g1 + j: j for j in range(len(own.G2))}
    assert own.D2 == gens.D1
    out = []
    ex = change_of_basis(base, 4, C) if gens.G1 else None
    for a, b in combinations_with_replacement(range(len(gens.D1)), 2):
        da, db = gens.D1[a], gens.D1[b]
        if is_normal_raw([(da, 2), (db, 2)], base.r) or is_normal_raw([(db, 2), (da, 2)], base.r):
            continue
        rhs = ex.express([gens.G1[a], gens.G1[b]], base.n)
        rhs = rhs.map_keys(lambda m: tuple(sorted(shift[i] for i in m)))
        rel = Relation("F4", (a, b), rhs, 4)
        rel.kempe_form = rel.polynomial()
        out.append(rel)
    return out


def lift_relations(r: WeightVector | Sequence[int], C: int = DEFAULT_LG_CONSTANT, degrees: Iterable[int] = (2, 3, 4)) -> list[Relation]:
    """Lifted relations, one per non-normal product of two generators.

    Weights with all entries even, or with odd total, are presented through the
    doubled ring (see ``minimal_relations_doubled``); ids then refer to
    ``generators(presented_weights(r))``.
    """
    r = as_weights(r)
    if not _feasible(r):
        return []
    if _is_doubled(r):
        return minimal_relations_doubled(_base_of(r), C)
    return _lifts(r, degrees, C)


def presented_weights(r: WeightVector | Sequence[int]) -> WeightVector:
    r = as_weights(r)
    return r.scaled(2) if r.total % 2 else r


@lru_cache(maxsize=64)
def _kempe_images(r: tuple[int, ...]) -> dict[int, LinearCombination]:
    """f(tau) for each degree-2 generator, as a polynomial in degree-1 ids."""
    gens = generators(r)
    w = WeightVector(r)
    g1 = len(gens.G1)
    out = {}
    for j, t in enumerate(gens.G2):
        f = kempe_factor(t, w)
        out[g1 + j] = f.map_keys(lambda mono: tuple(sorted(gens.index(s) for s in mono)))
    return out


def poly_mul(a: LinearCombination, b: LinearCombination) -> LinearCombination:
    out: dict[Monomial, int] = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            key = tuple(sorted(m1 + m2))
            out[key] = out.get(key, 0) + c1 * c2
    return LinearCombination(out)


def substitute(poly: LinearCombination, images: dict[int, LinearCombination]) -> LinearCombination:
    out = LinearCombination()
    for mono, c in poly.items():
        acc = LinearCombination({(): c})
        for i in mono:
            acc = poly_mul(acc, images.get(i) or LinearCombination({(i,): 1}))
        out = out + acc
    return out


def kempe_relations(r: WeightVector | Sequence[int], C: int = DEFAULT_LG_CONSTANT, degrees: Iterable[int] = (2, 3, 4)) -> list[Relation]:
    """Lifted relations rewritten purely in degree-1 generators; trivial ones dropped."""
    r = as_weights(r)
    if r.total % 2:
        raise OddTotalWeight(f"total weight {r.total} is odd; present 2r instead")
    if not _feasible(r):
        return []
    if _is_doubled(r):
        return minimal_relations_doubled(_base_of(r), C)
    images = _kempe_images(r.r)
    out = []
    for rel in _lifts(r, degrees, C):
        form = substitute(rel.polynomial(), images)
        if form:
            rel.kempe_form = form
            out.append(rel)
    return out


# ---------------------------------------------------------------- reduced presentation


def _monomials(g: int, k: int) -> list[Monomial]:
    return list(combinations_with_replacement(range(g), k))


def _order_desc(g: int, k: int) -> list[Monomial]:
    return sorted(_monomials(g, k), reverse=True)


def ideal_rows(polys: Sequence[LinearCombination], g: int, k: int) -> list[dict[Monomial, int]]:
    """Degree-k part of the ideal: every generator-monomial multiple of each polynomial."""
    rows = []
    for p in polys:
        deg = len(next(iter(p.keys())))
        if deg > k:
            continue
        for m in _monomials(g, k - deg):
            rows.append({tuple(sorted(mono + m)): c for mono, c in p.items()})
    return rows


def ideal_rank(polys: Sequence[LinearCombination], g: int, k: int) -> int:
    return rank_sparse(ideal_rows(polys, g, k), _monomials(g, k))


@dataclass
class HilbertCheck:
    degree: int
    free: int
    hilbert: int
    ideal_rank: int

    @property
    def relations_needed(self) -> int:
        return self.free - self.hilbert

    @property
    def complete(self) -> bool:
        return self.ideal_rank == self.relations_needed

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "free": self.free,
            "hilbert": self.hilbert,
            "ideal_rank": self.ideal_rank,
            "complete": self.complete,
        }


def hilbert_checks(polys: Sequence[LinearCombination], g: int, ring_weights: WeightVector, max_degree: int = 4, max_monomials: int = 6000) -> list[HilbertCheck]:
    """Compare the ideal generated by ``polys`` with the kernel size in each degree.

    The kernel of (free degree-k) -> (ring degree-k) has dimension
    ``C(g+k-1, k) - H(k)`` because the degree-1 generators span every degree;
    a mod-p rank equal to it certifies that the polynomials generate the kernel.
    """
    out = []
    for k in range(1, max_degree + 1):
        free = comb(g + k - 1, k)
        if free > max_monomials:
            break
        rank = ideal_rank([p for p in polys if p], g, k) if polys else 0
        out.append(HilbertCheck(k, free, count_lattice(ring_weights, k), rank))
    return out


def _relation_from_row(row: dict[Monomial, int], order: Sequence[Monomial], kind: Kind, degree: int) -> Relation:
    prim = primitive(row, order)
    keys = [m for m in order if m in prim]
    lead = keys[0]
    rhs = LinearCombination({m: -c for m, c in prim.items() if m != lead})
    poly = LinearCombination(prim)
    return Relation(kind, lead, rhs, degree, kempe_form=poly, lhs_coeff=prim[lead])


_KIND = {2: "F2", 3: "F3", 4: "F4"}


MAX_MONOMIALS = 6000


def _reduced(r: WeightVector, C: int, cap: int) -> tuple[list[Relation], list[int]]:
    g = len(generators(r).G1)
    chosen: list[Relation] = []
    skipped: list[int] = []
    for k in (2, 3, 4):
        if comb(g + k - 1, k) > cap:
            if k == 2:
                raise TooLarge(f"{comb(g + 1, 2)} quadratic monomials in {g} generators exceed the limit {cap}")
            skipped.append(k)
            continue
        lower = [rel.kempe_form for rel in chosen]
        need = comb(g + k - 1, k) - count_lattice(r, k)
        rows = ideal_rows(lower, g, k)
        cols = {m: i for i, m in enumerate(_order_desc(g, k))}
        if rank_sparse(rows, list(cols)) == need:
            continue
        ech = ModpEchelon()
        for row in rows:
            ech.add({cols[m]: c for m, c in row.items()})
        fresh = []
        for rel in kempe_relations(r, C, degrees=(k,)):
            vec = rel.kempe_form
            if ech.add({cols[m]: c for m, c in vec.items()}):
                fresh.append(dict(vec.items()))
        if ech.rank != need:
            raise AssertionError(f"degree {k}: relations span {ech.rank} of {need} dimensions")
        order = list(cols)
        # listed with the smallest pivot monomial first
        for row in reversed(rref(fresh, order)):
            chosen.append(_relation_from_row(row, order, _KIND[k], k))
    return chosen, skipped


def reduced_relations(r: WeightVector | Sequence[int], C: int = DEFAULT_LG_CONSTANT, cap: int = MAX_MONOMIALS) -> list[Relation]:
    """A generating set of relations among degree-1 generators, built degree by degree.

    In each degree the lifted relations are added only if the ideal generated
    so far does not already fill the kernel; the added ones are returned as the
    reduced row echelon basis of their span (pivot = largest monomial).
    Degrees whose monomial count exceeds ``cap`` are skipped (uncertified).
    """
    r = as_weights(r)
    if r.total % 2:
        raise OddTotalWeight(f"total weight {r.total} is odd; present 2r instead")
    if not _feasible(r):
        return []
    if _is_doubled(r):
        return minimal_relations_doubled(_base_of(r), C)
    return _reduced(r, C, cap)[0]


@dataclass
class Presentation:
    weights: WeightVector
    ring_weights: WeightVector | None
    generators: GeneratorSet | None
    relations: list[Relation]
    note: str = ""

    @property
    def trivial(self) -> bool:
        return self.ring_weights is None


def presentation(r: WeightVector | Sequence[int], C: int = DEFAULT_LG_CONSTANT) -> Presentation:
    """Degree-1 generators and a generating set of relations (the CLI's view)."""
    r = as_weights(r)
    if not _feasible(r):
        return Presentation(r, None, None, [], "empty moduli space; trivial ring")
    if r.total % 2:
        R = r.scaled(2)
        note = f"total weight is odd; presenting the same ring in the doubled weight ({R})"
        return Presentation(r, R, generators(R), minimal_relations_doubled(r, C), note)
    if _is_doubled(r):
        note = f"all weights even; quadratic relations from the normal forms over ({_base_of(r)})"
        return Presentation(r, r, generators(r), minimal_relations_doubled(_base_of(r), C), note)
    rels, skipped = _reduced(r, C, MAX_MONOMIALS)
    note = ""
    if skipped:
        degs = ", ".join(map(str, skipped))
        note = f"degree(s) {degs} not checked (more than {MAX_MONOMIALS} monomials); relations listed are complete only below that degree"
    return Presentation(r, r, generators(r), rels, note)


# ---------------------------------------------------------------- complete intersections


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def riordan(n: int) -> int:
    """Riordan numbers 1, 0, 1, 1, 3, 6, 15, 36, ... via the Motzkin relation."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    motzkin = [1, 1]
    for k in range(2, n + 1):
        motzkin.append(((2 * k + 1) * motzkin[-1] + (3 * k - 3) * motzkin[-2]) // (k + 2))
    # R(n) = M(n-1) - R(n-1), R(0) = 1
    out = 1
    for k in range(1, n + 1):
        out = motzkin[k - 1] - out
    return out


def ci_report(r: WeightVector | Sequence[int]) -> dict:
    """Embedding dimension, codimension and the degree inequality for equal weights."""
    r = as_weights(r)
    n = r.n
    ones = all(x == 1 for x in r.r)
    twos = all(x == 2 for x in r.r)
    rep: dict = {"weights": list(r.r), "n": n}
    if n % 2 == 0 and ones:
        gens = count_lattice(r, 1)
        rep.update(family="even", count_name=f"C_{n // 2}", generators=gens)
        codim = gens - n + 2
        lhs, rhs = (2**codim, factorial(n - 3)) if n >= 3 else (None, None)
        ci = n in (2, 4, 6)
    elif n % 2 == 1 and (ones or twos):
        R = WeightVector((2,) * n)
        gens = count_lattice(R, 1)
        rep.update(family="odd", count_name=f"R({n})", generators=gens)
        codim = gens - n + 2
        lhs, rhs = (2**codim, 2 ** (n - 3) * factorial(n - 3)) if n >= 3 else (None, None)
        ci = n in (1, 3)
        if 3 <= n <= 7:
            rep["relations"] = len(minimal_relations_doubled(WeightVector((1,) * n)))
    else:
        rep.update(covered=False, verdict="criterion not covered (only equal weights are treated)")
        return rep
    rep.update(
        covered=True,
        dim=n - 3,
        codim=codim,
        inequality_lhs=lhs,
        inequality_rhs=rhs,
        inequality_violated=(lhs is not None and lhs > rhs),
        complete_intersection=ci,
        verdict="complete intersection" if ci else "not a complete intersection",
    )
    return rep


def clear_caches() -> None:
    """Drop every memo table (straightening, lattice points, generators, exchange matrices)."""
    from .polytopes import _enumerate_cached
    from .straightening import _random_minors, clear_cache

    clear_cache()
    _random_minors.cache_clear()
    _enumerate_cached.cache_clear()
    for fn in (_generators, _exchange, _kempe_images):
        fn.cache_clear()
