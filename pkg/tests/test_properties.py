"""Property-based checks of the structural invariants."""
import json

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

from ninf import io
from ninf.core import (LatinSquare, boost, corrupted_product, direct_product, eta_plan, random_latin_square,
                       row_cycle, shift_by, switch_eta, switch_row_cycle)
from ninf.errors import NotApplicable
from ninf.fixtures import square
from ninf.verify import closure, find_proper_subsquare, is_subsquare


@st.composite
def squares(draw, lo=2, hi=12):
    n = draw(st.integers(lo, hi))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_latin_square(n, np.random.default_rng(seed))


@given(st.integers(1, 30), st.data())
def test_shift_by_full_turn_is_identity(n, data):
    v = data.draw(st.integers(1, n))
    t = data.draw(st.integers(-3 * n, 3 * n))
    assert shift_by(v, n, n) == v
    assert 1 <= shift_by(v, t, n) <= n
    assert shift_by(shift_by(v, t, n), -t, n) == v


@given(squares())
def test_inverse_tables_agree_with_cells(L):
    for (r, c, s) in L.entries():
        assert L.column_of(r, s) == c and L.row_of(c, s) == r
    assert LatinSquare.from_rows(L.rows()) == L


@given(squares(), st.data())
def test_row_cycle_switch_is_an_involution_of_size_twice_the_cycle(L, data):
    n = L.order
    i, j = data.draw(st.lists(st.integers(1, n), min_size=2, max_size=2, unique=True))
    c = data.draw(st.integers(1, n))
    rho = row_cycle(L, i, j, c)
    T = switch_row_cycle(L, rho)
    LatinSquare(T.array)
    changed = L.differing_cells(T)
    assert len(changed) == 2 * rho.length
    assert len(changed) >= 4 or n < 2
    back = switch_row_cycle(T, row_cycle(T, i, j, c))
    assert back == L


@given(squares(lo=3), st.data())
def test_eta_trade_changes_exactly_its_cells(L, data):
    n = L.order
    i, j = data.draw(st.lists(st.integers(1, n), min_size=2, max_size=2, unique=True))
    x = data.draw(st.integers(1, n))
    try:
        plan = eta_plan(L, i, j, x)
    except NotApplicable:
        assume(False)
    T = switch_eta(L, plan)
    LatinSquare(T.array)
    assert set(L.differing_cells(T)) == set(plan.cell_set)
    assert len(plan.cell_set) == 2 * plan.ell + 6


@given(squares(hi=6), squares(hi=6), st.data())
def test_direct_product_projections(L, M, data):
    P = direct_product(L, M)
    i, x = data.draw(st.integers(1, L.order)), data.draw(st.integers(1, L.order))
    j, y = data.draw(st.integers(1, M.order)), data.draw(st.integers(1, M.order))
    first, second = P[(i, j), (x, y)]
    assert first == L[i, x] and second == M[j, y]
    outer, inner = P.m_block(i, x)
    assert (outer == L[i, x]).all() and (inner == M.array + 1).all()


@given(squares(lo=3, hi=7), st.data())
def test_corrupted_product_matches_direct_product_off_principal_blocks(M, data):
    alpha = data.draw(st.sampled_from([8, 9]))
    A, B = square(f"A{alpha}"), square(f"B{alpha}")
    s = data.draw(st.integers(1, M.order - 1))
    P = corrupted_product(A, B, s, M)
    D = direct_product(A, M)
    mu = M.order
    diff = P.flat.array != D.flat.array
    rows, cols = np.nonzero(diff)
    for r, c in zip(rows, cols):
        (i, j), (k, l) = P.pair(r + 1), P.pair(c + 1)
        assert (i == k == 1) or (j == l == 1)
    LatinSquare(P.flat.array)
    assert P.order == alpha * mu


@given(squares(hi=6), st.integers(3, 4), st.data())
def test_boost_slices_are_shifted_copies(L, d2, data):
    H = boost(L, d2)
    tail = data.draw(st.lists(st.integers(1, L.order), min_size=d2 - 2, max_size=d2 - 2))
    t = sum(tail)
    for i in range(1, L.order + 1):
        for j in range(1, L.order + 1):
            assert H[(i, j, *tail)] == shift_by(L[i, j], t, L.order)


@given(squares())
def test_text_and_json_round_trip(L):
    assert io.as_square(io.parse_text(io.square_to_text(L))) == L
    a, _ = io.parse_any(json.dumps(io.square_to_json(L)))
    assert io.as_square(a) == L


@given(squares(lo=4, hi=10), st.data())
def test_closure_output_is_a_subsquare(L, data):
    n = L.order
    r = data.draw(st.integers(1, n))
    c1, c2 = data.draw(st.lists(st.integers(1, n), min_size=2, max_size=2, unique=True))
    box = closure(L, {r}, {c1, c2}, n)
    assert box is not None
    assert is_subsquare(L, box.rows, box.cols)
    found = find_proper_subsquare(L)
    if box.order <= n // 2:
        assert found is not None and found <= box
