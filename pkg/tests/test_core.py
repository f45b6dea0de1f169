import numpy as np
import pytest

from ninf import fixtures
from ninf.core import (Hypercube, LatinSquare, PerturbedSquare, boost, corrupted_product, cyclic_square,
                       direct_product, eta_plan, near_copy, relabel_prec1, row_cycle, shift_by,
                       shifted_near_copy, switch_eta, switch_row_cycle)
from ninf.errors import BadDim, BadShift, InvalidCycle, NotApplicable, NotLatin, SameSymbol

from conftest import random_square


def test_shift_by_wraps_into_one_to_n():
    assert shift_by(5, 1, 5) == 1
    assert shift_by(1, -1, 5) == 5
    assert shift_by(3, 10, 5) == 3


def test_latin_validation_reports_the_repeat():
    with pytest.raises(NotLatin) as err:
        LatinSquare.from_rows([[1, 2, 3], [2, 3, 1], [2, 1, 3]])
    assert "repeats" in str(err.value)
    with pytest.raises(NotLatin):
        LatinSquare.from_rows([[1, 2], [2, 3]])
    with pytest.raises(NotLatin):
        LatinSquare.from_rows([[1, 2, 3], [2, 3, 1]])


def test_square_accessors_are_one_based():
    L = cyclic_square(5)
    assert L[1, 1] == 2 and L[2, 3] == 5 and L[3, 3] == 1
    assert L.column_of(2, 5) == 3
    assert L.row_of(3, 5) == 2
    assert L.tau(1, 2, 2) == 3
    assert L.transpose() == L
    assert len(list(L.entries())) == 25


def test_order_two_row_cycle_covers_both_columns():
    rho = row_cycle(cyclic_square(2), 1, 2, 1)
    assert rho.length == 2 and rho.column_set == {1, 2}


def test_row_cycle_of_cyclic_square_is_full_length():
    L = cyclic_square(6)
    rho = row_cycle(L, 1, 2, 1)
    assert rho.length == 6
    rho3 = row_cycle(L, 1, 3, 1)
    assert rho3.length == 3 and rho3.column_set == {1, 3, 5}


def test_switch_rejects_a_stale_cycle():
    L = random_square(7, 3)
    rho = row_cycle(L, 1, 2, 1)
    other = cyclic_square(7)
    if row_cycle(other, 1, 2, rho.columns[0]).column_set != rho.column_set:
        with pytest.raises(InvalidCycle):
            switch_row_cycle(other, rho)


def test_perturbed_square_tracks_holes_and_aliens():
    L = cyclic_square(5)
    P = near_copy(L, (2, 3), 1)
    assert P.k == 1 and P.holes == [(2, 3)]
    assert P[2, 3] == 1 and P.displaced_natives == {(2, 3): 5}
    assert set(P.columns_with(2, 1)) == {3, 4}
    assert P.with_override((2, 3), 5).k == 0
    with pytest.raises(SameSymbol):
        near_copy(L, (2, 3), 5)


def test_shifted_near_copy_adds_the_shift():
    L = cyclic_square(7)
    P = shifted_near_copy(L, (3, 4), 2)
    assert P[3, 4] == shift_by(L[3, 4], 2, 7)
    with pytest.raises(SameSymbol):
        shifted_near_copy(L, (1, 1), 7)


def test_eta_trade_moves_exactly_its_cells():
    E = fixtures.square("E")
    for (i, j, x) in [(1, 2, 3), (2, 5, 1), (4, 7, 6)]:
        try:
            plan = eta_plan(E, i, j, x)
        except NotApplicable:
            continue
        T = switch_eta(E, plan)
        LatinSquare(T.array)  # still Latin
        assert set(E.differing_cells(T)) == set(plan.cell_set)
        assert len(plan.cell_set) == 2 * plan.ell + 6


def test_eta_needs_distinct_rows():
    with pytest.raises(NotApplicable):
        eta_plan(cyclic_square(5), 2, 2, 1)


def test_direct_product_entries():
    A, M = cyclic_square(3), fixtures.square("E")
    P = direct_product(A, M)
    for (i, j, k, l) in [(1, 1, 1, 1), (2, 5, 3, 8), (3, 8, 2, 4)]:
        assert P[(i, j), (k, l)] == (A[i, k], M[j, l])
    assert P.phi(*P.pair(17)) == 17


def test_corrupted_product_blocks():
    A, B, M = fixtures.square("A8"), fixtures.square("B8"), cyclic_square(10)
    s = 3
    P = corrupted_product(A, B, s, M)
    assert P.order == 80
    for i in range(1, 9):
        for k in range(1, 9):
            for j in (1, 4):
                for l in (1, 7):
                    want = (A[i, k], M[j, l])
                    if i == k == 1:
                        want = (A[1, 1], shift_by(M[j, l], s, 10))
                    elif j == l == 1:
                        want = (B[i, k], M[1, 1])
                    assert P[(i, j), (k, l)] == want
    assert relabel_prec1(P) is P.flat
    with pytest.raises(BadShift):
        corrupted_product(A, B, 0, M)


def test_hypercube_validation_and_layers():
    C = fixtures.cube(4)
    assert (C.order, C.dim) == (4, 3)
    bad = np.zeros((3, 3, 3), np.int64)
    with pytest.raises(NotLatin):
        Hypercube(bad)


def test_boost_formula_and_dimension_guard():
    L = fixtures.square("E")
    H = boost(L, 4)
    assert H.dim == 4
    for coords in [(1, 1, 1, 1), (3, 5, 2, 8), (8, 8, 8, 8)]:
        i, j, a, b = coords
        assert H[coords] == shift_by(L[i, j], a + b, 8)
    with pytest.raises(BadDim):
        boost(H, 3)
