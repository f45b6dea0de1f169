import numpy as np
import pytest

from ninf import fixtures
from ninf.certify import (CertLevel, CondIIIWitness, CondIIWitness, CorrupterData, certify_x_member,
                          check_condition_i, check_condition_ii, check_condition_iii, check_corrupting_pair,
                          check_properties, condition_i_violations, corrupter, corrupter_data, find_p3,
                          find_witnesses)
from ninf.construct import base_square
from ninf.core import LatinSquare, cyclic_square, row_cycle, switch_row_cycle
from ninf.errors import CertificationFailed


def test_d_triples_and_stored_patterns():
    assert corrupter(8).d_triple == (4, 8, 6)
    assert corrupter(9).d_triple == (2, 8, 6)
    assert corrupter(9).p3 == (3, 6, 2, 5, 9, 4)
    assert corrupter(8).p3 == (5, 7, 4, 6, 7, 4)


def _pattern_holds(A, p3):
    i, j, l1, l2, l3, k = p3
    n = A.order
    orbit = [k]
    for _ in range(3):
        orbit.append(A.tau(i, j, orbit[-1]))
    cols_ok = [A[i, l] for l in (l1, l2, l3)] == orbit[:3]
    return cols_ok and orbit[3] == k % n + 1


def test_nine_pattern_orbit():
    A9 = fixtures.square("A9")
    assert _pattern_holds(A9, (3, 6, 2, 5, 9, 4))
    orbit = [4]
    for _ in range(3):
        orbit.append(A9.tau(3, 6, orbit[-1]))
    assert orbit == [4, 2, 9, 5]


def test_eight_pattern_column_one_is_four_not_two():
    # The orbit 4 -> 8 -> 7 -> 5 sits in columns 4, 6, 7 of row 5.
    A8 = fixtures.square("A8")
    assert A8[5, 2] != 4 and A8[5, 4] == 4
    assert not _pattern_holds(A8, (5, 7, 2, 6, 7, 4))
    assert _pattern_holds(A8, (5, 7, 4, 6, 7, 4))


@pytest.mark.parametrize("alpha", [8, 9])
def test_embedded_pairs_pass_everything(alpha):
    data = corrupter(alpha)
    rep = check_corrupting_pair(data.A, data.B)
    assert rep.ok, rep.failures
    props = check_properties(data)
    assert props.ok, props.failures
    for name in ("P2", "P3", "P4", "P5", "P6", "P7"):
        assert props.checks[name]


def test_pair_negative_control():
    A8 = fixtures.square("A8")
    rep = check_corrupting_pair(A8, A8)
    assert not rep.ok and not rep.checks["agreement"]
    props = check_properties(CorrupterData(A8, A8, corrupter(8).p3))
    assert not props.checks["P4"]


def test_find_p3_returns_a_valid_pattern():
    for alpha in (8, 9):
        A = corrupter(alpha).A
        p3 = find_p3(A)
        assert p3 is not None and _pattern_holds(A, p3)
    assert corrupter_data(corrupter(8).A, corrupter(8).B) == corrupter(8)


def test_witness_expansion_and_entries():
    L = base_square(24).square
    w2, w3 = CondIIWitness(2, 7, 16), CondIIIWitness(2, 5, 3)
    y1, y2, z1, z2, z3 = w2.expand(L)
    assert row_cycle(L, 2, 7, 16).column_set == {y1, y2, 16}
    assert (L[7, y1], L[7, y2], L[7, 16]) == (z2, z3, z1)
    for (r, c, sym) in w3.entries(L, 1):
        assert L[r, c] == sym
    assert check_condition_ii(L, 1, w2) and check_condition_iii(L, 1, w3)
    assert not check_condition_ii(L, 1, CondIIWitness(1, 7, 16))
    assert not check_condition_iii(L, 1, CondIIIWitness(1, 5, 3))


def test_find_witnesses_small_orders():
    assert find_witnesses(cyclic_square(4), 1) is None
    assert find_witnesses(fixtures.square("E"), 1) is None
    L = base_square(24).square
    w2, w3 = find_witnesses(L, 1)
    assert check_condition_ii(L, 1, w2) and check_condition_iii(L, 1, w3)
    assert (w2, w3) <= (CondIIWitness(2, 7, 16), CondIIIWitness(2, 5, 3))


def test_certify_rejections():
    with pytest.raises(CertificationFailed) as err:
        certify_x_member(cyclic_square(4), 1)
    assert err.value.clause == "order"
    L = base_square(16).square
    with pytest.raises(CertificationFailed) as err:
        certify_x_member(L, 0)
    assert err.value.clause == "shift"
    with pytest.raises(CertificationFailed) as err:
        certify_x_member(cyclic_square(12), 1)
    assert err.value.clause in ("witnesses", "ninf")
    with pytest.raises(ValueError):
        check_condition_i(L, 0)


def test_certify_levels():
    L = base_square(16).square
    x = certify_x_member(L, 1, "witnessed")
    assert x.cert_level == CertLevel.WITNESSED and "ninf" not in x.checks
    y = certify_x_member(L, 1, "conditionsChecked")
    assert y.checks["ninf"] and "condition_i" not in y.checks
    assert CertLevel.parse("fullyVerified") is CertLevel.FULLY_VERIFIED


def _blocked_square():
    E = fixtures.square("E").array
    T = LatinSquare(np.block([[E, E + 8], [E + 8, E]]))
    return switch_row_cycle(T, row_cycle(T, 3, 11, 5))


def test_condition_one_negative_path():
    L = _blocked_square()
    bad = condition_i_violations(L, 8)
    assert ((3, 5), ) == bad[0][:1] and bad[0][1].order == 8
    assert not check_condition_i(L, 8)
    assert check_condition_i(L, 3)


def test_condition_one_on_base_sixteen():
    assert check_condition_i(base_square(16).square, 1)
