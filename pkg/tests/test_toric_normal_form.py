from fractions import Fraction

import pytest

from helpers import all_dmatrices, column_sum, compositions, minkowski
from lineinv.errors import EmptyDomain, InvalidIndexSet, InvalidParameter
from lineinv.polytopes import DiagonalVector, enumerate_lattice
from lineinv.tableau_core import WeightVector
from lineinv.toric_normal_form import (
    DMatrix,
    is_normal,
    is_normal_raw,
    j0_set,
    j1_set,
    normal_form,
    normalize,
    normalize_raw,
    replay,
    round_even,
    split_even,
    xi_odd,
)

R8 = WeightVector((1,) * 8)
R4 = WeightVector((1, 1, 1, 1))
A_COLS = [((1, 2, 1, 2, 3, 2, 1), 1), ((2, 2, 0, 2, 0, 2, 2), 2), ((2, 0, 2, 4, 4, 2, 2), 2)]
B_COLS = [((1, 0, 1, 2, 1, 2, 1), 1), ((2, 2, 0, 2, 2, 2, 2), 2), ((2, 2, 2, 4, 4, 2, 2), 2)]


def test_round_even():
    assert (round_even(3, "minus"), round_even(3, "plus")) == (2, 4)
    assert (round_even(2, "minus"), round_even(2, "plus")) == (2, 2)
    assert (round_even(-1, "plus"), round_even(-1, "minus")) == (0, -2)
    for k in range(-12, 13):
        x = Fraction(k, 5)
        assert round_even(-x, "plus") == -round_even(x, "minus")
    with pytest.raises(InvalidParameter):
        round_even(1, "up")


def test_xi_examples():
    d = DiagonalVector((5, 4, 3, 8, 7, 6, 5), 5, R8)
    assert xi_odd(d).d == (1, 0, 1, 2, 1, 2, 1)
    one = DiagonalVector((1, 2, 1), 1, R4)
    assert xi_odd(one) == one
    assert xi_odd(DiagonalVector((3, 6, 3), 3, R4)).d == (1, 2, 1)
    with pytest.raises(EmptyDomain):
        xi_odd(DiagonalVector((3, 3), 3, WeightVector((1, 1, 1))))


def test_index_sets_of_example():
    dprime = (4, 4, 2, 6, 6, 4, 4)
    assert j1_set(dprime, R8.r, 2) == {2, 3, 7}


def test_split_even_examples():
    a, b = split_even(DiagonalVector((4, 4, 4), 4, R4))
    assert (a.d, b.d) == ((2, 2, 2), (2, 2, 2))
    a, b = split_even(DiagonalVector((4, 8, 4), 4, R4))
    assert (a.d, b.d) == ((2, 4, 2), (2, 4, 2))
    with pytest.raises(InvalidIndexSet):
        split_even(DiagonalVector((4, 8, 4), 4, R4), J=[2, 3])


def test_split_even_decomposes_fully():
    for total in range(2, 9, 2):
        for r in compositions(total):
            for m in (2, 3):
                for d in enumerate_lattice(r, 2 * m):
                    parts, rest = [], d
                    while rest.N > 2:
                        lo, hi = j0_set(rest.d, rest.weights.r, rest.N // 2), j1_set(rest.d, rest.weights.r, rest.N // 2)
                        for J in (lo, hi):
                            split_even(rest, J)
                        first, rest = split_even(rest)
                        parts.append(first)
                    parts.append(rest)
                    assert len(parts) == m
                    assert tuple(map(sum, zip(*(p.d for p in parts)))) == d.d


def test_worked_octagon_example():
    A = DMatrix.from_vectors(A_COLS, R8)
    B = DMatrix.from_vectors(B_COLS, R8)
    assert is_normal(B) and not is_normal(A)
    assert A.total().d == (5, 4, 3, 8, 7, 6, 5)
    out, trace = normalize(A)
    assert out == B
    assert replay(A, trace) == B
    assert normal_form(A.total()) == B
    assert DMatrix.from_json(B.to_json()) == B


def test_pentagon_f4():
    r = WeightVector((1,) * 5)
    A = DMatrix.from_vectors([((2, 4, 2, 2), 2), ((2, 2, 4, 2), 2)], r)
    out, trace = normalize(A)
    assert {tuple(c.d) for c in out.columns} == {(2, 2, 2, 2), (2, 4, 4, 2)}
    assert trace.kinds() == ["F4"]


def test_fixed_points():
    B = DMatrix.from_vectors(B_COLS, R8)
    out, trace = normalize(B)
    assert out == B and len(trace) == 0
    assert is_normal_raw([((2, 2, 2), 2)], R4.r)
    assert is_normal_raw([], R4.r)


@pytest.mark.parametrize("r", [(1, 1, 1, 1), (1, 1, 1, 1, 1, 1), (2, 2, 2, 2, 2)])
def test_normalize_exhaustive(r):
    seen = {}
    for cols in all_dmatrices(r, 4):
        out, trace = normalize_raw(cols, r)
        degree = sum(N for _, N in cols)
        key = (column_sum(cols), degree)
        assert is_normal_raw(out, r)
        assert column_sum(out) == key[0]
        assert seen.setdefault(key, tuple(out)) == tuple(out)
        if degree % 2 == 0 and all(N == 2 for _, N in cols):
            assert set(trace.kinds()) <= {"F4"}
        for step in trace.steps:
            before, after = step.before, step.after
            assert column_sum(list(before)) == column_sum(list(after))
            degs = sorted(N for _, N in before), sorted(N for _, N in after)
            if step.kind == "F2":
                assert degs == ([1, 1], [2])
            else:
                assert degs[0] == degs[1]
    # distinct classes have distinct normal forms
    assert len(set(seen.values())) == len(seen)


def test_minkowski_sum_identities():
    for total in range(2, 9):
        for r in compositions(total):
            pts = {N: {tuple(p.d) for p in enumerate_lattice(r, N)} for N in range(1, 6)}
            for m in (1, 2):
                assert pts[2 * m + 1] == minkowski(pts[1], pts[2 * m])
                assert pts[2 * m] == minkowski(*([pts[2]] * m))
