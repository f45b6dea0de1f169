"""Acceptance suite: one PASS/FAIL line per criterion, printed to the terminal."""
import json
import time
from contextlib import contextmanager

import numpy as np
import pytest

from ninf import _kernels as K
from ninf import fixtures, io
from ninf.certify import (CertLevel, CondIIIWitness, CondIIWitness, certify_x_member, check_condition_i,
                          check_condition_ii, check_condition_iii, check_corrupting_pair, check_properties,
                          corrupter)
from ninf.cli import main
from ninf.construct import (BASE_ORDERS, _load_shipped, base_square, build_square, extend, plan_order,
                            search_ninf)
from ninf.core import LatinSquare, boost, cyclic_square, random_latin_square
from ninf.verify import (brute_force_subsquares, find_proper_subhypercube, find_proper_subsquare,
                         is_subhypercube, sampled_subsquare_search)


@contextmanager
def criterion(capsys, number, title):
    notes = []
    start = time.perf_counter()
    try:
        yield notes
    except BaseException as exc:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} FAIL  {title}: {type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        extra = ("; " + "; ".join(notes)) if notes else ""
        print(f"\nACCEPTANCE {number} PASS  {title} ({elapsed:.1f} s{extra})")


def _warm_kernels():
    find_proper_subsquare(cyclic_square(6))
    find_proper_subhypercube(boost(cyclic_square(4), 3))


def test_1_embedded_fixtures(capsys):
    _warm_kernels()
    with criterion(capsys, 1, "embedded fixtures are subsquare-free") as notes:
        t0 = time.perf_counter()
        for name in ("E", "A8", "B8", "A9", "B9"):
            L = LatinSquare.from_rows(fixtures.square(name).rows())
            assert find_proper_subsquare(L) is None, name
        for order in (4, 6):
            H = io.as_hypercube(fixtures.cube(order).array + 1)
            assert find_proper_subhypercube(H) is None, order
        elapsed = time.perf_counter() - t0
        notes.append(f"checks took {elapsed:.3f} s after kernel warm-up")
        assert elapsed < 1.0


def test_2_corrupting_pairs(capsys):
    with criterion(capsys, 2, "corrupting pairs and properties 2-7") as notes:
        t0 = time.perf_counter()
        for alpha, d in ((8, (4, 8, 6)), (9, (2, 8, 6))):
            data = corrupter(alpha)
            rep = check_corrupting_pair(data.A, data.B)
            assert rep.ok, rep.failures
            props = check_properties(data)
            assert props.ok, props.failures
            assert data.d_triple == d
        assert corrupter(9).p3 == (3, 6, 2, 5, 9, 4)
        # Highlighted cells of A8 sit in columns 4, 6, 7 of row 5.
        assert corrupter(8).p3 == (5, 7, 4, 6, 7, 4)
        A8 = corrupter(8).A
        assert [A8[5, c] for c in (4, 6, 7)] == [4, 8, 7] and A8[5, 2] == 2
        notes.append("A8 tuple read from the highlighted cells is (5,7,4,6,7,4); "
                     "the listed (5,7,2,6,7,4) has A8[5,2]=2, not k=4")
        assert time.perf_counter() - t0 < 300


@pytest.mark.slow
def test_3_base_cases(capsys):
    with criterion(capsys, 3, "base cases fully verified with s = 1") as notes:
        t0 = time.perf_counter()
        for n in (16, 24, 32, 36, 48, 54, 64, 72):
            x = base_square(n)
            assert x.order == n and x.shift == 1 and x.cert_level == CertLevel.FULLY_VERIFIED
            for key in ("condition_ii", "condition_iii", "ninf", "condition_i"):
                assert x.checks[key], (n, key)
        for n, w2, w3 in ((24, CondIIWitness(2, 7, 16), CondIIIWitness(2, 5, 3)),
                          (72, CondIIWitness(2, 7, 48), CondIIIWitness(2, 5, 19))):
            L = base_square(n).square
            assert check_condition_ii(L, 1, w2) and check_condition_iii(L, 1, w3)
            assert (base_square(n).w_ii, base_square(n).w_iii) == (w2, w3)
        recipes = time.perf_counter() - t0
        assert recipes < 15 * 60
        notes.append(f"eight recipes {recipes:.0f} s")
        t1 = time.perf_counter()
        for n in (12, 18):
            shipped = _load_shipped(n)
            L = search_ninf(n, shipped["seed_start"], 6000)
            assert L.rows() == shipped["rows"], f"search for {n} does not reproduce the shipped square"
            x = certify_x_member(L, 1, CertLevel.FULLY_VERIFIED)
            assert x.cert_level == CertLevel.FULLY_VERIFIED
            assert base_square(n).square == L
        searched = time.perf_counter() - t1
        assert searched < 2 * 3600
        notes.append(f"orders 12 and 18 re-searched and certified in {searched:.0f} s")


@pytest.mark.slow
def test_4_recursion(capsys):
    with criterion(capsys, 4, "extend base 12 by 8 and 9") as notes:
        m = base_square(12)
        for alpha, order in ((8, 96), (9, 108)):
            t0 = time.perf_counter()
            x = extend(m, alpha, verify_threshold=0)
            assert x.order == order
            assert check_condition_ii(x.square, x.shift, x.w_ii)
            assert check_condition_iii(x.square, x.shift, x.w_iii)
            t1 = time.perf_counter()
            assert find_proper_subsquare(x.square) is None
            ninf_time = time.perf_counter() - t1
            assert ninf_time < 600
            notes.append(f"{order}: subsquare scan {ninf_time:.0f} s")
            if order == 96:
                t2 = time.perf_counter()
                assert check_condition_i(x.square, x.shift)
                cond_time = time.perf_counter() - t2
                assert cond_time < 1800
                notes.append(f"96: condition (i) {cond_time:.0f} s")
            del t0


@pytest.mark.slow
def test_5_deep_chain(capsys):
    with criterion(capsys, 5, "two extensions to order 768") as notes:
        x = extend(extend(base_square(12), 8, verify_threshold=0), 8, verify_threshold=0)
        assert x.order == 768
        L = LatinSquare(x.square.array)  # fresh object, nothing cached
        t0 = time.perf_counter()
        hit = K.find_intercalate(L.array, L.row_inv, np.zeros((1, 1), np.bool_), False)
        scan = time.perf_counter() - t0
        assert hit[0] < 0 and scan < 600
        t1 = time.perf_counter()
        assert sampled_subsquare_search(L, 10**6, np.random.default_rng(768)) is None
        sampled = time.perf_counter() - t1
        t2 = time.perf_counter()
        full = find_proper_subsquare(L)
        notes.append(f"intercalate scan {scan:.1f} s, 10^6 closures {sampled:.0f} s, "
                     f"exhaustive subsquare scan {'clean' if full is None else full} "
                     f"({time.perf_counter() - t2:.0f} s), shift condition not re-run")
        assert full is None


def test_6_detector_matches_oracle(capsys):
    with criterion(capsys, 6, "closure detector equals brute force") as notes:
        squares = [random_latin_square(n, np.random.default_rng(1000 * n + s)) for n in range(4, 8)
                   for s in range(100)]
        squares += [cyclic_square(n) for n in range(2, 9)]
        with_boxes = 0
        for L in squares:
            oracle = brute_force_subsquares(L)
            found = find_proper_subsquare(L)
            assert (found is None) == (not oracle)
            assert found == (oracle[0] if oracle else None)
            with_boxes += bool(oracle)
        notes.append(f"{len(squares)} squares, {with_boxes} with subsquares")


def test_7_boost_preservation(capsys):
    with criterion(capsys, 7, "boosted subsquare-free squares stay subsquare-free") as notes:
        certified = [fixtures.square(n) for n in ("E", "A8", "B8", "A9", "B9")]
        certified += [cyclic_square(p) for p in (5, 7, 11)]
        certified += [build_square(10), base_square(12).square]
        for L in certified:
            assert find_proper_subsquare(L) is None
            assert find_proper_subhypercube(boost(L, 3)) is None, L.order
        H = boost(cyclic_square(4), 3)
        box = find_proper_subhypercube(H)
        assert box is not None and box.order == 2
        assert is_subhypercube(H, [(1, 3), (1, 3), (2, 4)])
        notes.append(f"{len(certified)} squares; control box {[list(c) for c in box.coords]}")


def test_8_planner(capsys):
    with criterion(capsys, 8, "planner covers 2^x 3^y in [12, 10^6]") as notes:
        t0 = time.perf_counter()
        count = 0
        x = 1
        while 2 ** x <= 10**6:
            n = 2 ** x
            while n <= 10**6:
                if n >= 12:
                    p = plan_order(n)
                    assert 8 ** p.i * 9 ** p.k * p.base == n and p.base in BASE_ORDERS
                    count += 1
                n *= 3
            x += 1
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0
        notes.append(f"{count} orders")


@pytest.mark.slow
def test_9_generation_surface(capsys, tmp_path):
    with criterion(capsys, 9, "gen exits 1 exactly for (4,2) and (6,2)") as notes:
        codes = {}
        for n in range(2, 13):
            for d in (2, 3):
                out = tmp_path / f"g{n}_{d}.json"
                code = main(["gen", "--order", str(n), "--dim", str(d), "--out", str(out)])
                codes[n, d] = code
                if code == 0:
                    mode = "ninf" if d == 2 else "hypercube"
                    assert main(["verify", str(out), "--mode", mode]) == 0, (n, d)
                    assert json.loads(out.read_text())["order"] == n
        capsys.readouterr()
        ones = {k for k, v in codes.items() if v == 1}
        assert ones == {(4, 2), (6, 2)}
        assert all(v in (0, 3) for k, v in codes.items() if k not in ones)
        budget = sorted(k for k, v in codes.items() if v == 3)
        notes.append(f"budget-limited cells: {budget or 'none'}")
