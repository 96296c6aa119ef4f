import pytest
from hypothesis import given

from conftest import column_products, tableaux
from lineinv.errors import DimensionMismatch, EntryOutOfRange
from lineinv.straightening import (
    ColumnProduct,
    certify,
    evaluate_numeric,
    random_matrices,
    straighten_combination,
    straighten_product,
)
from lineinv.tableau_core import LinearCombination, Tableau, empty_tableau, lg_degree, star_all

X = Tableau(4, (1, 2), (3, 4))
Y = Tableau(4, (1, 3), (2, 4))


def test_three_term_relation():
    p = ColumnProduct(4, ((1, 4), (2, 3)))
    assert straighten_product(p) == {X: 1, Y: -1}


def test_semistandard_product_is_fixed():
    assert straighten_product(ColumnProduct(4, ((1, 3), (2, 4)))) == {X: 1}


def test_antisymmetry():
    assert straighten_product(ColumnProduct(2, ((2, 1),))) == {Tableau(2, (1,), (2,)): -1}
    assert straighten_product(ColumnProduct(3, ((2, 2),))) == LinearCombination()


def test_bad_column():
    with pytest.raises(EntryOutOfRange):
        ColumnProduct(3, ((1, 4),))


def test_oracle_examples():
    M = [[1, 0], [0, 1], [0, 0], [0, 0]]
    assert evaluate_numeric(Tableau(2, (1,), (2,)), M[:2]) == 1
    assert evaluate_numeric(empty_tableau(4), M) == 1
    p = ColumnProduct(4, ((1, 4), (2, 3)))
    diff = LinearCombination({p: 1}) - straighten_product(p)
    for A in random_matrices(4, 50, seed=11):
        assert evaluate_numeric(diff, A, 4) == 0
    with pytest.raises(DimensionMismatch):
        evaluate_numeric(X, M[:3])


def test_random_matrices_seeded():
    assert random_matrices(5, 3, 4) == random_matrices(5, 3, 4)
    flat = [v for M in random_matrices(6, 30, 1) for row in M for v in row]
    assert min(flat) >= -9 and max(flat) <= 9


@given(column_products())
def test_oracle_soundness(p):
    assert certify(p, straighten_product(p), p.n, trials=20, seed=3)


@given(column_products())
def test_leading_term(p):
    out = straighten_product(p)
    canon = p.canonical()
    if canon is None:
        assert not out
        return
    sign, cols = canon
    lead = star_all([Tableau(p.n, (i,), (j,)) for i, j in cols], p.n) if cols else empty_tableau(p.n)
    assert out.coeff(lead) == sign
    top = lg_degree(lead)
    assert all(lg_degree(t) < top for t in out if t != lead)


@given(tableaux())
def test_idempotent(t):
    assert straighten_product(ColumnProduct.of(t)) == {t: 1}
    assert straighten_combination(LinearCombination({t: 3}), t.n) == {t: 3}
