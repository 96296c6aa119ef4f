"""Acceptance criteria 1-10, each checked at its stated size and time limit.

Run under pytest (one line per criterion is added to the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.  Memo caches are cleared
before each criterion so its runtime does not depend on test order.
"""
import itertools
import random
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from golden import (  # noqa: E402
    OCTAGON_TABLEAUX,
    PENTAGON_RELATIONS,
    PENTAGON_TABLEAUX,
    corrected_octagon_table,
    parse_relation,
    up_to_sign,
)
from helpers import all_dmatrices, column_sum, compositions, minkowski  # noqa: E402
from lineinv.kempe import SplitMap, kempe_expand, kempe_factor, side_split  # noqa: E402
from lineinv.polytopes import DiagonalVector, count_lattice, enumerate_lattice, in_polytope, tableau_from_diagonal  # noqa: E402
from lineinv.presentation import (  # noqa: E402
    ci_report,
    clear_caches,
    generators,
    hilbert_checks,
    kempe_relations,
    lift_relations,
    presentation,
    reduced_relations,
    relation_holds,
)
from lineinv.straightening import ColumnProduct, certify, straighten_product  # noqa: E402
from lineinv.tableau_core import Tableau, WeightVector, empty_tableau, lg_degree, star_all  # noqa: E402
from lineinv.toric_normal_form import DMatrix, is_normal_raw, j1_set, normalize, normalize_raw, replay, xi_odd  # noqa: E402

RESULTS: dict[int, str] = {}


@contextmanager
def within(seconds):
    clear_caches()
    t = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t
    assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"


def criterion_1():
    with within(1):
        p = presentation((1, 1, 1, 1))
        assert len(p.generators.G1) == 2
        assert p.relations == []
        # lifted relations exist but all vanish once degree-2 generators are Kempe-factored
        assert lift_relations((1, 1, 1, 1))
        assert kempe_relations((1, 1, 1, 1)) == []


def criterion_2():
    with within(5):
        r = (2, 2, 2, 2, 2)
        g = generators(r)
        assert [str(t) for t in g.G1] == PENTAGON_TABLEAUX
        labels = g.labels()
        rels = lift_relations(r)
        assert {"".join(labels[i] for i in rel.lhs) for rel in rels} == {"BC", "AE", "AF", "BF", "CE"}
        # identity sign map: the relations agree exactly
        assert {frozenset(rel.polynomial().items()) for rel in rels} == {
            frozenset(parse_relation(t).items()) for t in PENTAGON_RELATIONS
        }
        assert all(relation_holds(rel, g, trials=50, seed=7) for rel in rels)


def criterion_3():
    with within(60):
        r = (1,) * 8
        g = generators(r)
        expect = []
        for item in OCTAGON_TABLEAUX.split():
            top, bottom = item.split("/")
            expect.append(Tableau(8, tuple(map(int, top)), tuple(map(int, bottom))))
        assert g.G1 == tuple(expect)
        rels = reduced_relations(r)
        assert len(rels) == 14 and all(rel.degree == 2 for rel in rels)
        table = corrected_octagon_table(g)
        assert sorted(map(sorted_key, (up_to_sign(rel.polynomial()) for rel in rels))) == sorted(
            map(sorted_key, (up_to_sign(p) for p in table))
        )
        assert all(relation_holds(rel, g, trials=20) for rel in rels)
        checks = {c.degree: c for c in hilbert_checks([rel.polynomial() for rel in rels], 14, WeightVector(r))}
        assert checks[3].complete and checks[4].complete
        assert (checks[3].ideal_rank, checks[4].ideal_rank) == (560 - 364, 2380 - 1085)


def sorted_key(fs):
    return tuple(sorted(fs))


def criterion_4():
    with within(5):
        r = WeightVector((1,) * 6)
        assert len(generators(r).G1) == 5
        rels = reduced_relations(r)
        assert not [rel for rel in rels if rel.degree == 2]
        checks = hilbert_checks([rel.polynomial() for rel in rels], 5, r, max_degree=3)
        assert [c.relations_needed for c in checks] == [0, 0, 1]
        assert [rel.degree for rel in rels] == [3]
        assert checks[2].complete
        assert all(relation_holds(rel, generators(r)) for rel in rels)


def integral_points(r, N):
    r = WeightVector(r)
    box = range(N * r.total + 1)
    out = set()
    for mid in itertools.product(box, repeat=r.n - 3):
        d = (N * r[0],) + mid + (N * r[-1],)
        if in_polytope(DiagonalVector(d, N, r)):
            out.add(d)
    return out


def criterion_5():
    with within(5):
        catalan = [1, 2, 5, 14, 42, 132]
        assert [count_lattice((1,) * (2 * m), 1) for m in range(1, 7)] == catalan
        assert count_lattice((2, 2, 2, 2, 2), 1) == 6
        assert integral_points((1, 1, 1, 1), 1) == {(1, 2, 1), (1, 1, 1), (1, 0, 1)}
        assert {p.d for p in enumerate_lattice((1, 1, 1, 1), 1)} == {(1, 2, 1), (1, 0, 1)}


def criterion_6():
    with within(30):
        r8 = WeightVector((1,) * 8)
        A = DMatrix.from_vectors([((1, 2, 1, 2, 3, 2, 1), 1), ((2, 2, 0, 2, 0, 2, 2), 2), ((2, 0, 2, 4, 4, 2, 2), 2)], r8)
        B = DMatrix.from_vectors([((1, 0, 1, 2, 1, 2, 1), 1), ((2, 2, 0, 2, 2, 2, 2), 2), ((2, 2, 2, 4, 4, 2, 2), 2)], r8)
        d = DiagonalVector((5, 4, 3, 8, 7, 6, 5), 5, r8)
        assert xi_odd(d).d == (1, 0, 1, 2, 1, 2, 1)
        assert j1_set((4, 4, 2, 6, 6, 4, 4), r8.r, 2) == {2, 3, 7}
        out, trace = normalize(A)
        assert out == B and replay(A, trace) == B
        for r in [(1, 1, 1, 1), (1,) * 6, (2, 2, 2, 2, 2)]:
            classes = {}
            for cols in all_dmatrices(r, 4):
                nf, _ = normalize_raw(cols, r)
                assert is_normal_raw(nf, r) and column_sum(nf) == column_sum(cols)
                key = (column_sum(cols), sum(N for _, N in cols))
                assert classes.setdefault(key, tuple(nf)) == tuple(nf)
            assert len(set(classes.values())) == len(classes)


def criterion_7():
    with within(30):
        for total in range(2, 9):
            for r in compositions(total):
                pts = {N: {tuple(p.d) for p in enumerate_lattice(r, N)} for N in range(1, 6)}
                for m in (1, 2):
                    assert pts[2 * m + 1] == minkowski(pts[1], pts[2 * m])
                    assert pts[2 * m] == minkowski(*([pts[2]] * m))


def criterion_8():
    with within(60):
        rng = random.Random(2024)
        cases = 0
        while cases < 250:
            n = rng.randint(2, 8)
            k = rng.randint(1, 6)
            cols = []
            for _ in range(k):
                i, j = rng.sample(range(1, n + 1), 2)
                cols.append((i, j))
            p = ColumnProduct(n, tuple(cols))
            out = straighten_product(p)
            assert certify(p, out, n, trials=20, seed=cases)
            sign, canon = p.canonical()
            lead = star_all([Tableau(n, (a,), (b,)) for a, b in canon], n)
            assert out.coeff(lead) == sign
            assert all(lg_degree(t) < lg_degree(lead) for t in out if t != lead)
            for t in out:
                assert straighten_product(ColumnProduct.of(t)) == {t: 1}
            cases += 1
        assert straighten_product(empty_tableau(4)) == {empty_tableau(4): 1}


def criterion_9():
    with within(60):
        hexagon = Tableau(6, (1, 1, 2, 3, 4, 5), (2, 3, 4, 5, 6, 6))
        triangles = Tableau(6, (1, 1, 2, 4, 4, 5), (2, 3, 3, 5, 6, 6))
        assert len(kempe_expand(hexagon, (1,) * 6)) == 1
        f = kempe_factor(triangles, (1,) * 6)
        assert len(f) == 2 and all(len(mono) == 2 for mono in f)
        m = SplitMap((1, 1, 2, 2, 3, 3, 4, 4), (1,) * 8, (2, 2, 2, 2))
        assert side_split(m, Tableau(8, (1, 2, 4, 6), (3, 5, 7, 8))) == Tableau(4, (1, 1, 2, 3), (2, 3, 4, 4))
        checked = 0
        for total in range(2, 11):
            for r in compositions(total):
                w = WeightVector(r)
                pts = enumerate_lattice(w, 2)
                if not pts:
                    continue
                for p in pts:
                    t = tableau_from_diagonal(p)
                    assert certify(t, kempe_factor(t, w), w.n, trials=20, seed=total), (r, t)
                    checked += 1
        assert checked > 20000


def criterion_10():
    with within(1):
        rep8 = ci_report((1,) * 8)
        assert (rep8["inequality_lhs"], rep8["inequality_rhs"], rep8["inequality_violated"]) == (256, 120, True)
        assert rep8["verdict"] == "not a complete intersection"
        assert ci_report((1,) * 6)["verdict"] == "complete intersection"
        rep5 = ci_report((2,) * 5)
        assert (rep5["count_name"], rep5["generators"], rep5["relations"]) == ("R(5)", 6, 5)
        assert rep5["verdict"] == "not a complete intersection"


CRITERIA = {
    1: ("square: two generators, no relations", criterion_1),
    2: ("pentagon: six generators, five relations as printed", criterion_2),
    3: ("octagon: fourteen generators and quadrics, cubic and quartic spans", criterion_3),
    4: ("hexagon: no quadrics, one cubic", criterion_4),
    5: ("lattice point counts", criterion_5),
    6: ("normal form example and exhaustive uniqueness", criterion_6),
    7: ("Minkowski sum identities", criterion_7),
    8: ("straightening oracle suite", criterion_8),
    9: ("Kempe factoring sweep", criterion_9),
    10: ("complete-intersection reports", criterion_10),
}


def run_criterion(num):
    name, fn = CRITERIA[num]
    t = time.perf_counter()
    try:
        fn()
    except Exception as exc:
        RESULTS[num] = f"criterion {num:2d} FAIL  {name} ({type(exc).__name__}: {exc})"
        raise
    RESULTS[num] = f"criterion {num:2d} PASS  {name} ({time.perf_counter() - t:.2f}s)"


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    run_criterion(num)


if __name__ == "__main__":
    failed = 0
    for num in sorted(CRITERIA):
        try:
            run_criterion(num)
        except Exception:
            failed += 1
        print(RESULTS[num], flush=True)
    sys.exit(1 if failed else 0)
