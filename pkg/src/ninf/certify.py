"""Checkers for corrupting pairs and for membership of the recursion family.

A member of the family is a subsquare-free square ``L`` of order at least ten
with a shift ``s`` such that

* (i)   no near copy ``(L[i,j]+s) -> L[i,j]`` has a subsquare of order 8 or 9,
* (ii)  a length-3 row cycle avoiding row/column 1 exists whose one-cell
        mixture has no intercalate, and
* (iii) a "twisted" length-3 pattern of entries whose last symbol is
        shifted by ``s`` exists, again away from row/column 1.

Witnesses for (ii) and (iii) are small index triples that expand
deterministically into the full list of cells and symbols.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import NamedTuple

from . import _kernels as K
from . import fixtures
from .core import LatinSquare, PerturbedSquare, near_copy, row_cycle, shift_by, shifted_near_copy
from .errors import CertificationFailed
from .verify import (SubBox, find_intercalate, find_proper_subsquare, has_single_symbol_square,
                     is_isotopic, perturbed_subsquares)


class CertLevel(IntEnum):
    WITNESSED = 1
    CONDITIONS_CHECKED = 2
    FULLY_VERIFIED = 3

    @property
    def label(self) -> str:
        return {1: "witnessed", 2: "conditionsChecked", 3: "fullyVerified"}[int(self)]

    @classmethod
    def parse(cls, value: "CertLevel | str | int") -> "CertLevel":
        if isinstance(value, cls):
            return value
        if isinstance(value, int):
            return cls(value)
        for lvl in cls:
            if value in (lvl.label, lvl.name, lvl.name.lower()):
                return lvl
        raise ValueError(f"unknown certification level {value!r}")


@dataclass
class Report:
    """Named boolean checks; ``failures`` keeps the first detail of each failed one."""

    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks[name] = bool(ok)
        if not ok:
            self.failures.append(f"{name}: {detail}" if detail else name)
        return ok

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def merge(self, other: "Report") -> "Report":
        self.checks.update(other.checks)
        self.failures.extend(other.failures)
        return self


# ---------------------------------------------------------------------------
# Corrupting pairs


@dataclass(frozen=True)
class CorrupterData:
    """A corrupting pair with its distinguished row-1 triple and length-3 pattern.

    ``p3 = (i, j, l1, l2, l3, k)``: on rows ``i < j`` the row permutation sends
    ``k`` through ``A[i, l1], A[i, l2], A[i, l3]`` to ``k + 1``.
    """

    A: LatinSquare
    B: LatinSquare
    p3: tuple[int, int, int, int, int, int]

    @property
    def alpha(self) -> int:
        return self.A.order

    @property
    def d_triple(self) -> tuple[int, int, int]:
        return (self.A[1, 1], self.A[1, 2], self.A[1, 3])


_P3 = {8: (5, 7, 4, 6, 7, 4), 9: (3, 6, 2, 5, 9, 4)}


def corrupter(alpha: int) -> CorrupterData:
    """The embedded corrupting pair of order 8 or 9."""
    if alpha not in _P3:
        raise ValueError("embedded corrupting pairs exist for orders 8 and 9 only")
    return CorrupterData(fixtures.square(f"A{alpha}"), fixtures.square(f"B{alpha}"), _P3[alpha])


def check_corrupting_pair(A: LatinSquare, B: LatinSquare) -> Report:
    rep = Report()
    n = A.order
    if B.order != n:
        rep.record("orders", False, f"{n} vs {B.order}")
        return rep
    box = find_proper_subsquare(A)
    rep.record("ninf", box is None, f"A has subsquare {box}")
    iso = is_isotopic(A, B) if n <= 9 else None
    rep.record("isotopic", iso is not None, "no isotopism from A to B")
    agree = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if A[i, j] == B[i, j]]
    rep.record("agreement", agree == [(1, 1)], f"A and B agree on {agree[:6]}")
    bad = None
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if A[i, j] == B[i, j]:
                continue
            found = perturbed_subsquares(near_copy(A, (i, j), B[i, j]), range(2, n), must_contain=[(1, 1)])
            if found:
                bad = ((i, j), found[0])
                break
        if bad:
            break
    rep.record("principal_subsquares", bad is None, f"mixture at {bad and bad[0]} has {bad and bad[1]}")
    return rep


def _tau_power(A: LatinSquare, i: int, j: int, sym: int, times: int) -> int:
    for _ in range(times):
        sym = A.tau(i, j, sym)
    return sym


def _asub(data: CorrupterData) -> list[tuple[str, PerturbedSquare]]:
    A = data.A
    d1, d2, d3 = data.d_triple
    table = [(d1, (2, 1)), (d2, (1, 1)), (d2, (2, 2)), (d3, (1, 2)), (d3, (2, 3)), (d1, (1, 3))]
    return [(f"d{[d1, d2, d3].index(sym) + 1}->A{cell}", near_copy(A, cell, sym)) for sym, cell in table]


def check_properties(data: CorrupterData) -> Report:
    """Properties 2 to 7 of a corrupting pair, one named check each."""
    A, B, n = data.A, data.B, data.alpha
    d = data.d_triple
    rep = Report()

    # P2: the row-1/row-2 cycle through d1 is (d1, d2, d3), and d+1 misses d
    cyc = row_cycle(A, 1, 2, 1)
    plus = {shift_by(x, 1, n) for x in d}
    rep.record("P2", tuple(cyc.symbols) == d and not (plus & set(d)),
               f"cycle {cyc.symbols}, shifted {sorted(plus)}")

    # P3: stored pattern
    i, j, l1, l2, l3, k = data.p3
    orbit = [_tau_power(A, i, j, k, t) for t in range(4)]
    cells_ok = all(A[i, l] == orbit[t] and A[j, l] == orbit[t + 1] for t, l in enumerate((l1, l2, l3)))
    rep.record("P3", 3 <= i < j <= n and orbit[3] == shift_by(k, 1, n) and orbit[3] not in d
               and A[i, 1] not in orbit[:3] and cells_ok,
               f"orbit {orbit}, cells {'match' if cells_ok else 'do not match'} columns {(l1, l2, l3)}")

    # P4: within each of the first three columns, rows 1-2 of A and B share a
    # symbol only at (1,1).  Comparing across columns cannot be intended, since
    # P2 forces A[2,3] = A[1,1] = B[1,1].
    hits = [((r, c), (r2, c)) for c in (1, 2, 3) for r in (1, 2) for r2 in (1, 2) if A[r, c] == B[r2, c]]
    rep.record("P4", hits == [((1, 1), (1, 1))], f"coincidences {hits}")

    # P5
    asub = _asub(data)
    with_sub = []
    for name, C in asub:
        found = perturbed_subsquares(C, range(2, n + 1))
        if found:
            with_sub.append((name, found))
    p5 = len(with_sub) == 1 and with_sub[0][0] == asub[5][0] and all(b.order == 2 for b in with_sub[0][1])
    rep.record("P5", p5, f"near copies with subsquares: {[(nm, [b.order for b in f]) for nm, f in with_sub]}")

    # P6
    p6_fail = None
    for name, C in asub:
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                if B[r, c] == C[r, c]:
                    continue
                D = C.with_override((r, c), B[r, c])
                aliens = D.holes
                if len(aliens) < 2:
                    continue
                p, q = aliens
                if has_single_symbol_square(D, p, q):
                    p6_fail = (name, (r, c), "single-symbol block")
                    break
                if perturbed_subsquares(D, range(3, n + 1), must_contain=[p, q]):
                    p6_fail = (name, (r, c), "non-intercalate subsquare")
                    break
                through = perturbed_subsquares(D, [2], must_contain=[p, q, (1, 1)])
                if through and not (p[0] == q[0] == 1 or p[1] == q[1] == 1):
                    p6_fail = (name, (r, c), "principal intercalate with scattered aliens")
                    break
            if p6_fail:
                break
        if p6_fail:
            break
    rep.record("P6", p6_fail is None, f"{p6_fail}")

    # P7
    d1, d2, d3 = d
    p7 = [(d2, (1, 1)), (d3, (1, 1)), (d1, (1, 2)), (d1, (1, 3)), (d1, (2, 1))]
    p7_fail = None
    for sym, cell in p7:
        found = perturbed_subsquares(near_copy(A, cell, sym), range(3, n + 1))
        if found:
            p7_fail = (sym, cell, found[0])
            break
    rep.record("P7", p7_fail is None, f"{p7_fail}")
    return rep


# ---------------------------------------------------------------------------
# Family conditions


class CondIIExpansion(NamedTuple):
    y1: int
    y2: int
    z1: int
    z2: int
    z3: int


class CondIIIExpansion(NamedTuple):
    c1: int
    c2: int
    c3: int
    orbit: tuple[int, int, int, int]  # sigma, tau(sigma), tau^2(sigma), tau^3(sigma)


@dataclass(frozen=True, order=True)
class CondIIWitness:
    """Rows ``x1, x2`` and column ``y3`` of a length-3 row cycle."""

    x1: int
    x2: int
    y3: int

    def expand(self, L: LatinSquare) -> CondIIExpansion:
        x1, x2, y3 = self.x1, self.x2, self.y3
        y1 = L.column_of(x1, L[x2, y3])
        y2 = L.column_of(x1, L[x2, y1])
        return CondIIExpansion(y1, y2, L[x1, y1], L[x1, y2], L[x1, y3])

    def as_dict(self) -> dict:
        return {"x1": self.x1, "x2": self.x2, "y3": self.y3}


@dataclass(frozen=True, order=True)
class CondIIIWitness:
    """Rows ``r1, r2`` and starting symbol ``sigma`` of the shifted 3-pattern."""

    r1: int
    r2: int
    sigma: int

    def expand(self, L: LatinSquare) -> CondIIIExpansion:
        r1, r2, s0 = self.r1, self.r2, self.sigma
        orbit = [s0]
        for _ in range(3):
            orbit.append(L.tau(r1, r2, orbit[-1]))
        cols = [L.column_of(r1, v) for v in orbit[:3]]
        return CondIIIExpansion(*cols, tuple(orbit))

    def entries(self, L: LatinSquare, s: int) -> list[tuple[int, int, int]]:
        """The six entries the pattern asserts, as ``(row, col, symbol)``."""
        c1, c2, c3, orb = self.expand(L)
        r1, r2 = self.r1, self.r2
        return [(r1, c1, orb[0]), (r2, c1, orb[1]), (r1, c2, orb[1]), (r2, c2, orb[2]),
                (r1, c3, orb[2]), (r2, c3, shift_by(orb[0], s, L.order))]

    def as_dict(self) -> dict:
        return {"r1": self.r1, "r2": self.r2, "sigma": self.sigma}


def _in_range(n: int, *vals: int) -> bool:
    return all(1 <= v <= n for v in vals)


def condition_ii_failure(L: LatinSquare, s: int, w: CondIIWitness) -> str | None:
    """Name of the first violated clause, or ``None``."""
    n = L.order
    if not _in_range(n, w.x1, w.x2, w.y3) or w.x1 == w.x2:
        return "indices"
    if row_cycle(L, w.x1, w.x2, w.y3).length != 3:
        return "cycle_length"
    y1, y2, z1, z2, z3 = w.expand(L)
    if 1 in (w.x1, w.x2, y1, y2, w.y3):
        return "index_one"
    if shift_by(L[1, 1], s, n) in (z1, z2, z3):
        return "shifted_corner_symbol"
    if find_intercalate(near_copy(L, (w.x1, w.y3), L[w.x2, w.y3])) is not None:
        return "intercalate"
    return None


def condition_iii_failure(L: LatinSquare, s: int, w: CondIIIWitness) -> str | None:
    n = L.order
    if not _in_range(n, w.r1, w.r2, w.sigma) or w.r1 == w.r2:
        return "indices"
    c1, c2, c3, orb = w.expand(L)
    if len({c1, c2, c3}) != 3:
        return "columns_distinct"
    if L[w.r2, c3] != shift_by(w.sigma, s, n):
        return "shifted_closure"
    if 1 in (w.r1, w.r2, c1, c2, c3):
        return "index_one"
    banned = {orb[0], orb[1], orb[2], shift_by(orb[0], s, n)}
    if L[1, 1] in banned or shift_by(L[1, 1], s, n) in banned:
        return "corner_symbols"
    if find_intercalate(near_copy(L, (w.r1, c3), L[w.r2, c3])) is not None:
        return "intercalate"
    return None


def check_condition_ii(L: LatinSquare, s: int, w: CondIIWitness) -> bool:
    return condition_ii_failure(L, s, w) is None


def check_condition_iii(L: LatinSquare, s: int, w: CondIIIWitness) -> bool:
    return condition_iii_failure(L, s, w) is None


def condition_i_violations(L: LatinSquare, s: int, orders=(8, 9)) -> list[tuple[tuple[int, int], SubBox]]:
    """Cells whose shifted near copy has a subsquare with order in ``orders``.

    Subsquares through the overwritten cell are found by a compiled sweep of
    one-row/two-column seeds; cells with any hit are re-examined with the
    general branching engine, which also finds larger boxes built on top of
    small ones.  Subsquares avoiding the cell are subsquares of ``L`` itself.
    """
    n = L.order
    orders = set(orders)
    bound = min(max(orders), (n + 1) // 2)
    out = []
    if find_proper_subsquare(L) is not None:
        for box in perturbed_subsquares(L, orders):
            cell = next((r, c) for r in range(1, n + 1) for c in range(1, n + 1) if not box.contains((r, c)))
            out.append((cell, box))
    if bound < min(orders):
        return out
    hits = K.shift_sweep(L.array, L.row_inv, L.col_inv, s, bound)
    for r, c in sorted({(r + 1, c + 1) for r, c, _, _ in hits}):
        for box in perturbed_subsquares(shifted_near_copy(L, (r, c), s), orders, must_contain=[(r, c)]):
            out.append(((r, c), box))
    return out


def check_condition_i(L: LatinSquare, s: int) -> bool:
    if not 1 <= s <= L.order - 1:
        raise ValueError(f"shift {s} outside 1..{L.order - 1}")
    return not condition_i_violations(L, s)


def find_witnesses(L: LatinSquare, s: int) -> tuple[CondIIWitness, CondIIIWitness] | None:
    """Lexicographically smallest passing witnesses for (ii) and (iii), if both exist."""
    n = L.order
    if n < 10 or not 1 <= s <= n - 1:
        return None
    a = L.array.tolist()
    rinv = L.row_inv.tolist()
    corner = a[0][0]
    corner_s = (corner + s) % n
    w2 = None
    for x1 in range(1, n):
        for x2 in range(1, n):
            if x2 == x1:
                continue
            for y3 in range(1, n):
                z3 = a[x1][y3]
                y1 = rinv[x1][a[x2][y3]]
                y2 = rinv[x1][a[x2][y1]]
                if a[x2][y2] != z3 or y1 == 0 or y2 == 0 or y1 == y3:
                    continue
                if corner_s in (a[x1][y1], a[x1][y2], z3):
                    continue
                w = CondIIWitness(x1 + 1, x2 + 1, y3 + 1)
                if check_condition_ii(L, s, w):
                    w2 = w
                    break
            if w2:
                break
        if w2:
            break
    if w2 is None:
        return None
    for r1 in range(1, n):
        for r2 in range(1, n):
            if r2 == r1:
                continue
            for sig in range(n):
                t1 = a[r2][rinv[r1][sig]]
                t2 = a[r2][rinv[r1][t1]]
                c3 = rinv[r1][t2]
                if a[r2][c3] != (sig + s) % n:
                    continue
                w = CondIIIWitness(r1 + 1, r2 + 1, sig + 1)
                if check_condition_iii(L, s, w):
                    return w2, w
    return None


@dataclass(frozen=True)
class XMember:
    """A square with shift and witnesses, certified to ``cert_level``."""

    square: LatinSquare
    shift: int
    w_ii: CondIIWitness
    w_iii: CondIIIWitness
    cert_level: CertLevel
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def order(self) -> int:
        return self.square.order


def certify_x_member(L: LatinSquare, s: int, level="fullyVerified",
                     witnesses: tuple[CondIIWitness, CondIIIWitness] | None = None) -> XMember:
    """Certify ``(L, s)`` up to ``level``; raises ``CertificationFailed`` naming the clause."""
    level = CertLevel.parse(level)
    n = L.order
    if n < 10:
        raise CertificationFailed("order", f"order {n} is below 10")
    if not 1 <= s <= n - 1:
        raise CertificationFailed("shift", f"shift {s} outside 1..{n - 1}")
    checks = {}
    if witnesses is None:
        found = find_witnesses(L, s)
        if found is None:
            raise CertificationFailed("witnesses", "no passing witnesses for conditions (ii) and (iii)")
        witnesses = found
    w2, w3 = witnesses
    why = condition_ii_failure(L, s, w2)
    if why:
        raise CertificationFailed("condition_ii", f"{why} for {w2}")
    checks["condition_ii"] = True
    why = condition_iii_failure(L, s, w3)
    if why:
        raise CertificationFailed("condition_iii", f"{why} for {w3}")
    checks["condition_iii"] = True
    if level >= CertLevel.CONDITIONS_CHECKED:
        box = find_proper_subsquare(L)
        if box is not None:
            raise CertificationFailed("ninf", f"proper subsquare {box}")
        checks["ninf"] = True
    if level >= CertLevel.FULLY_VERIFIED:
        bad = condition_i_violations(L, s)
        if bad:
            raise CertificationFailed("condition_i", f"near copy at {bad[0][0]} has {bad[0][1]}")
        checks["condition_i"] = True
    return XMember(L, s, w2, w3, level, checks)


def find_p3(A: LatinSquare) -> tuple[int, int, int, int, int, int] | None:
    """First ``(i, j, l1, l2, l3, k)`` meeting the length-3 pattern clauses, if any."""
    n = A.order
    d = (A[1, 1], A[1, 2], A[1, 3])
    for i in range(3, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                orbit = [_tau_power(A, i, j, k, t) for t in range(4)]
                if orbit[3] != shift_by(k, 1, n) or orbit[3] in d or A[i, 1] in orbit[:3]:
                    continue
                if len(set(orbit[:3])) < 3:
                    continue
                cols = tuple(A.column_of(i, v) for v in orbit[:3])
                return (i, j) + cols + (k,)
    return None


def corrupter_data(A: LatinSquare, B: LatinSquare) -> CorrupterData | None:
    """Pair data for arbitrary squares; embedded pairs keep their stored pattern."""
    for alpha in _P3:
        data = corrupter(alpha)
        if data.A == A and data.B == B:
            return data
    p3 = find_p3(A) if A.order >= 4 else None
    return None if p3 is None else CorrupterData(A, B, p3)
