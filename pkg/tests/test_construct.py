import pytest

from ninf import fixtures
from ninf.certify import CertLevel, check_condition_ii, check_condition_iii
from ninf.construct import (BASE_ORDERS, base_square, base_square_with_recipe, build_hypercube, build_square,
                            eta_plan, extend, kotzig_turgeon, plan_order, search_ninf, theta, triple_inflate)
from ninf.core import boost, cyclic_square, shift_by
from ninf.errors import (BadOrder, BudgetExhausted, NoSuchObject, OddOrder, UnsupportedOrder,
                         WitnessPropagationFailed)
from ninf.verify import find_proper_subhypercube, find_proper_subsquare, minimal_subsquares


@pytest.mark.parametrize("m", [13, 29])
def test_theta_families_are_disjoint_transversals(m):
    fams = [theta(m, k) for k in (-1, 0, 1)]
    C = cyclic_square(m)
    for fam in fams:
        assert len({r for r, _, _ in fam}) == m
        assert len({c for _, c, _ in fam}) == m
        assert len({s for _, _, s in fam}) == m
        assert all(C[r, c] == s for r, c, s in fam)
    cells = [{(r, c) for r, c, _ in fam} for fam in fams]
    assert not (cells[0] & cells[1]) and not (cells[0] & cells[2]) and not (cells[1] & cells[2])


def test_kotzig_turgeon_sixteen_has_only_the_corner_copy():
    K = kotzig_turgeon(16)
    boxes = minimal_subsquares(K)
    assert {(b.rows, b.cols) for b in boxes} == {((14, 15, 16), (14, 15, 16))}
    with pytest.raises(BadOrder):
        kotzig_turgeon(18)
    with pytest.raises(BadOrder):
        kotzig_turgeon(10)


def test_triple_inflate_layout():
    E = fixtures.square("E")
    L = triple_inflate(E, (1, 2))
    assert L.order == 24
    phi = lambda i, j: 8 * (i - 1) + j  # noqa: E731
    assert L[phi(1, 1), phi(1, 2)] == phi(2, E[1, 2])
    assert L[phi(1, 3), phi(1, 5)] == phi(1, E[3, 5])
    Z = fixtures.square("Z")
    assert L[phi(2, 4), phi(2, 6)] == phi(Z[2, 2], shift_by(E[4, 6], 4, 8))
    assert L[phi(3, 4), phi(1, 6)] == phi(Z[3, 1], E[4, 6])
    with pytest.raises(OddOrder):
        triple_inflate(cyclic_square(5), (1, 1))


@pytest.mark.parametrize("n", [16, 24, 32, 64, 72])
def test_recipe_trades_apply_and_outputs_repeat(n):
    a = base_square_with_recipe(n)
    b = base_square_with_recipe.__wrapped__(n)  # bypass the cache
    assert a is not b and a.member.square == b.member.square and a.recipe == b.recipe
    assert a.member.cert_level == CertLevel.FULLY_VERIFIED and a.member.shift == 1


def test_eta_recipes_are_applicable():
    K = kotzig_turgeon(16)
    eta_plan(K, 16, 1, 7)
    eta_plan(triple_inflate(fixtures.square("E"), (1, 2)), 6, 14, 18)


def test_search_small_orders():
    L = search_ninf(11, 0)
    assert L.order == 11 and find_proper_subsquare(L) is None
    with pytest.raises(BudgetExhausted):
        search_ninf(4, 0, 300)


def test_search_is_seeded():
    assert search_ninf(10, 3) == search_ninf(10, 3)


def test_base_set_rejects_other_orders():
    with pytest.raises(UnsupportedOrder):
        base_square(20)
    assert BASE_ORDERS == (12, 16, 18, 24, 32, 36, 48, 54, 64, 72)


def test_extend_order_shift_and_witnesses():
    m = base_square(12)
    x = extend(m, 8, verify_threshold=0)
    assert x.order == 96 and x.shift == 12
    assert x.cert_level == CertLevel.WITNESSED and x.checks["derived"]
    assert check_condition_ii(x.square, x.shift, x.w_ii)
    assert check_condition_iii(x.square, x.shift, x.w_iii)
    for (r, c, sym) in x.w_iii.entries(x.square, x.shift):
        assert x.square[r, c] == sym
    y = extend(x, 9, verify_threshold=0)
    assert y.order == 864 and y.shift == 96


def test_extend_rejects_witness_only_inputs():
    from dataclasses import replace

    m = base_square(12)
    bare = replace(m, cert_level=CertLevel.WITNESSED, checks={})
    with pytest.raises(WitnessPropagationFailed):
        extend(bare, 8)


def test_plan_examples():
    assert tuple(plan_order(96)) == (1, 0, 12)
    assert tuple(plan_order(12)) == (0, 0, 12)
    assert tuple(plan_order(82944)) == (2, 2, 16)
    assert str(plan_order(96)) == "8^1 * 9^0 * 12"
    for bad in (8, 9, 40, 27, 81, 10):
        with pytest.raises(UnsupportedOrder):
            plan_order(bad)


def test_build_square_small_orders():
    for n in (1, 2, 3, 5, 7, 8, 9, 10, 11, 13):
        L = build_square(n)
        assert L.order == n and find_proper_subsquare(L) is None
    assert build_square(7) == cyclic_square(7)
    for n in (4, 6):
        with pytest.raises(UnsupportedOrder):
            build_square(n)


def test_build_hypercube_surface():
    assert build_hypercube(4, 3) == fixtures.cube(4)
    for n in (4, 6):
        with pytest.raises(NoSuchObject):
            build_hypercube(n, 2)
    H = build_hypercube(8, 4)
    assert H == boost(fixtures.square("E"), 4)
    assert H.dim == 4 and find_proper_subhypercube(build_hypercube(5, 3)) is None
