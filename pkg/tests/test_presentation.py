from itertools import combinations_with_replacement

import pytest

from helpers import compositions
from golden import (
    OCTAGON_TABLEAUX,
    PENTAGON_RELATIONS,
    PENTAGON_TABLEAUX,
    corrected_octagon_table,
    parse_relation,
    up_to_sign,
)
from lineinv.errors import OddTotalWeight
from lineinv.polytopes import DiagonalVector, count_lattice, enumerate_lattice, tableau_from_diagonal
from lineinv.presentation import (
    catalan,
    change_of_basis,
    ci_report,
    generators,
    hilbert_checks,
    kempe_relations,
    lift_relations,
    minimal_relations_doubled,
    normal_monomials,
    presentation,
    reduced_relations,
    relation_holds,
    riordan,
)
from lineinv.straightening import straighten_tableaux
from lineinv.tableau_core import Tableau, WeightVector, lg_degree

def test_generator_tables(octagon, pentagon):
    X, Y = Tableau(4, (1, 2), (3, 4)), Tableau(4, (1, 3), (2, 4))
    assert generators((1, 1, 1, 1)).G1 == (X, Y)
    assert [str(t) for t in generators(pentagon).G1] == PENTAGON_TABLEAUX
    expect = []
    for item in OCTAGON_TABLEAUX.split():
        top, bottom = item.split("/")
        expect.append(Tableau(8, tuple(map(int, top)), tuple(map(int, bottom))))
    assert generators(octagon).G1 == tuple(expect)
    assert generators(octagon).labels()[:3] == ["A", "B", "C"]


def test_normal_monomials_examples(pentagon):
    nms = normal_monomials((1, 1, 1, 1), 2)
    assert sorted(tuple(c for c, _ in nm.columns) for nm in nms) == [((2, 0, 2),), ((2, 2, 2),), ((2, 4, 2),)]
    # pentagon generators are the degree-2 points over 1^5; products are degree-4 monomials there
    g = generators(pentagon)
    shift = len(generators((1,) * 5).G1)
    normal_pairs = {tuple(i - shift for i in nm.ids) for nm in normal_monomials((1,) * 5, 4)}
    assert len(normal_pairs) == 16
    labels = g.labels()
    missing = {labels[a] + labels[b] for a, b in combinations_with_replacement(range(6), 2)} - {
        labels[a] + labels[b] for a, b in normal_pairs
    }
    assert missing == {"BC", "AE", "AF", "BF", "CE"}


def test_normal_monomial_odd_degree_starts_with_xi(octagon):
    from lineinv.toric_normal_form import xi_odd

    for nm in normal_monomials(octagon, 3)[:200]:
        assert nm.columns[0][1] == 1
        assert nm.columns[0][0] == xi_odd(nm.point).d


def test_change_of_basis_examples(pentagon):
    ex = change_of_basis((1, 1, 1, 1), 2)
    assert ex.C == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    ex = change_of_basis(pentagon, 2)
    assert len(ex.N_list) == len(ex.SS_list) == 16
    assert ex.is_unipotent_upper()
    for r in [(1, 2, 3, 2), (1,) * 6]:
        one = change_of_basis(r, 1)
        assert all(one.columns[j] == {j: 1} for j in range(len(one.columns)))


def test_basis_property_and_bookkeeping():
    cases = [r for t in range(2, 7, 2) for r in compositions(t)] + [(1,) * 8, (1, 1, 2, 2, 2), (3, 1, 2, 2, 2)]
    for r in cases:
        for k in range(1, 5 if sum(r) <= 6 else 4):
            ex = change_of_basis(r, k)
            assert len(ex.N_list) == len(ex.SS_list) == count_lattice(r, k)
            assert ex.is_unipotent_upper()


def test_leading_term_contract(octagon, pentagon):
    # every product of two generators straightens with the *-product as unique top term
    for r in (octagon, pentagon, (1,) * 6):
        g = generators(r)
        w = WeightVector(r)
        for a, b in combinations_with_replacement(range(len(g.G1)), 2):
            combo = straighten_tableaux([g.G1[a], g.G1[b]], w.n)
            top = max(lg_degree(t) for t in combo)
            leaders = [t for t in combo if lg_degree(t) == top]
            point = DiagonalVector(tuple(x + y for x, y in zip(g.D1[a], g.D1[b])), 2, w)
            assert leaders == [tableau_from_diagonal(point)]
            assert combo.coeff(leaders[0]) == 1


def test_pentagon_relations_exact(pentagon):
    rels = lift_relations(pentagon)
    assert len(rels) == 5
    got = {frozenset(rel.polynomial().items()) for rel in rels}
    assert got == {frozenset(parse_relation(t).items()) for t in PENTAGON_RELATIONS}
    g = generators(pentagon)
    assert all(relation_holds(rel, g, trials=50, seed=7) for rel in rels)
    assert {frozenset(r.polynomial().items()) for r in kempe_relations(pentagon)} == got


def test_square_has_no_relations():
    assert kempe_relations((1, 1, 1, 1)) == []
    assert presentation((1, 1, 1, 1)).relations == []


def test_octagon_quadrics(octagon):
    rels = reduced_relations(octagon)
    assert len(rels) == 14 and {r.kind for r in rels} == {"F2"}
    g = generators(octagon)
    table = corrected_octagon_table(g)
    assert [up_to_sign(r.polynomial()) for r in rels] == [up_to_sign(p) for p in table]
    assert all(relation_holds(rel, g, trials=20) for rel in rels)
    checks = hilbert_checks([r.polynomial() for r in rels], 14, WeightVector(octagon))
    assert [c.complete for c in checks] == [True] * 4


def test_hexagon_single_cubic():
    rels = reduced_relations((1,) * 6)
    assert [r.kind for r in rels] == ["F3"]
    checks = hilbert_checks([r.polynomial() for r in rels], 5, WeightVector((1,) * 6))
    assert [(c.free, c.hilbert) for c in checks[:3]] == [(5, 5), (15, 15), (35, 34)]
    assert all(c.complete for c in checks)


@pytest.mark.parametrize("r", [(1,) * 6, (1, 1, 1, 1, 2), (1, 1, 2, 2, 2), (1, 2, 1, 2, 1, 1)])
def test_lifted_relations_are_sound(r):
    g = generators(r)
    rels = lift_relations(r)
    kinds = {rel.kind for rel in rels}
    assert kinds <= {"F2", "F3", "F4"}
    for rel in rels[:: max(1, len(rels) // 40)]:
        assert relation_holds(rel, g, trials=20, seed=1)


def test_kempe_relations_in_degree_one_generators():
    r = (1, 1, 2, 2, 2)
    g1 = len(generators(r).G1)
    for rel in kempe_relations(r):
        assert all(i < g1 for mono in rel.kempe_form for i in mono)
        assert {len(m) for m in rel.kempe_form} == {rel.degree}
    with pytest.raises(OddTotalWeight):
        kempe_relations((1, 1, 1))


def test_doubled_minimal_relations(pentagon):
    assert len(minimal_relations_doubled((1,) * 5)) == 5
    pts = enumerate_lattice((2, 2, 2, 2), 1)
    expected = len(pts) * (len(pts) + 1) // 2 - count_lattice((2, 2, 2, 2), 2)
    assert len(minimal_relations_doubled((1, 1, 1, 1))) == expected
    g = generators((2, 2, 2, 2, 2, 2))
    rels = minimal_relations_doubled((1,) * 6)
    assert len(rels) == 120 - count_lattice((2,) * 6, 2)
    for rel in rels[::7]:
        assert relation_holds(rel, g, trials=20)
    checks = hilbert_checks([r.polynomial() for r in rels], len(g.G1), WeightVector((2,) * 6), max_degree=3)
    assert all(c.complete for c in checks)


def test_presentation_reductions():
    p = presentation((1, 1, 1, 1, 1))
    assert p.ring_weights.r == (2,) * 5 and len(p.relations) == 5 and "odd" in p.note
    trivial = presentation((5, 1, 1, 1))
    assert trivial.trivial and trivial.relations == []
    assert lift_relations((5, 1, 1, 1)) == []


def test_counting_sequences():
    assert [catalan(m) for m in range(7)] == [1, 1, 2, 5, 14, 42, 132]
    assert [riordan(n) for n in range(10)] == [1, 0, 1, 1, 3, 6, 15, 36, 91, 232]
    for n in (3, 5, 7, 9):
        assert count_lattice((2,) * n, 1) == riordan(n)


def test_ci_reports():
    rep = ci_report((1,) * 8)
    assert (rep["inequality_lhs"], rep["inequality_rhs"]) == (256, 120)
    assert rep["verdict"] == "not a complete intersection"
    assert ci_report((1,) * 6)["verdict"] == "complete intersection"
    odd = ci_report((2,) * 5)
    assert (odd["generators"], odd["relations"]) == (6, 5)
    assert odd["verdict"] == "not a complete intersection"
    assert ci_report((1,) * 3)["complete_intersection"]
    assert not ci_report((1, 2, 3, 4))["covered"]
