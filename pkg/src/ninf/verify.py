"""Detection of subsquares, intercalates and subhypercubes, plus isotopy search.

The workhorse is the minimal-subsquare closure: start from a seed box,
repeatedly add every row, column and symbol forced by the Latin property,
and stop either at a fixpoint (which is a subsquare) or as soon as the box
outgrows the order bound.  Every proper subsquare contains a seed made of one
row and two columns, so sweeping those seeds decides whether a square is
N-infinity.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _kernels as K
from .core import Cell, Hypercube, LatinSquare, PerturbedSquare
from .errors import OrderTooLarge


@dataclass(frozen=True, order=True)
class SubBox:
    """Rows, columns and symbols of a subsquare, each sorted and 1-based.

    Boxes order by ``(order, rows, cols)``; detectors report the smallest.
    """

    order: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    symbols: tuple[int, ...]

    @classmethod
    def make(cls, rows: Iterable[int], cols: Iterable[int], symbols: Iterable[int]) -> "SubBox":
        rows, cols, symbols = tuple(sorted(rows)), tuple(sorted(cols)), tuple(sorted(symbols))
        return cls(len(rows), rows, cols, symbols)

    def cells(self) -> list[Cell]:
        return [(r, c) for r in self.rows for c in self.cols]

    def contains(self, cell: Cell) -> bool:
        return cell[0] in self.rows and cell[1] in self.cols


def _box_from0(R, C, S) -> SubBox:
    return SubBox.make((int(x) + 1 for x in R), (int(x) + 1 for x in C), (int(x) + 1 for x in S))


def is_subsquare(L: LatinSquare | PerturbedSquare, rows: Sequence[int], cols: Sequence[int]) -> bool:
    """Direct check that ``L[rows, cols]`` is a Latin square."""
    rows, cols = list(rows), list(cols)
    k = len(rows)
    if k != len(cols) or len(set(rows)) != k or len(set(cols)) != k:
        return False
    grid = [[L[r, c] for c in cols] for r in rows]
    syms = {v for row in grid for v in row}
    if len(syms) != k:
        return False
    return all(len(set(row)) == k for row in grid) and all(len({grid[i][j] for i in range(k)}) == k for j in range(k))


# ---------------------------------------------------------------------------
# Latin squares


def closure(L: LatinSquare, rows0: Iterable[int], cols0: Iterable[int], bound: int) -> SubBox | None:
    """Minimal subsquare containing the seed box, or ``None`` once it exceeds ``bound``."""
    rows0 = [r - 1 for r in rows0]
    cols0 = [c - 1 for c in cols0]
    if not rows0 or not cols0:
        raise ValueError("seed needs at least one row and one column")
    out = K.close_box(L.array, L.row_inv, L.col_inv, rows0, cols0, bound)
    return None if out is None else _box_from0(*out)


def find_proper_subsquare(L: LatinSquare) -> SubBox | None:
    """Smallest proper subsquare by ``(order, rows, cols)``; ``None`` iff ``L`` is N-infinity."""
    n = L.order
    if n < 4:
        return None
    k, R, C, S = K.sweep_best(L.array, L.row_inv, L.col_inv, n // 2)
    if k < 0:
        return None
    return _box_from0(R[:k], C[:k], S[:k])


def is_ninf(L: LatinSquare) -> bool:
    return find_proper_subsquare(L) is None


def minimal_subsquares(L: LatinSquare, bound: int | None = None) -> set[SubBox]:
    """Distinct closures of all one-row/two-column seeds that stay within ``bound``."""
    n = L.order
    bound = n // 2 if bound is None else bound
    if n < 2:
        return set()
    out = set()
    for r, c1, c2 in K.sweep_seeds(L.array, L.row_inv, L.col_inv, bound):
        box = K.close_box(L.array, L.row_inv, L.col_inv, [r], [c1, c2], bound)
        out.add(_box_from0(*box))
    return out


def sampled_subsquare_search(L: LatinSquare, count: int, rng: np.random.Generator) -> SubBox | None:
    """Close ``count`` random one-row/two-column seeds; return the first subsquare hit."""
    n = L.order
    r = rng.integers(0, n, size=count)
    c1 = rng.integers(0, n, size=count)
    c2 = (c1 + rng.integers(1, n, size=count)) % n
    seeds = np.stack([r, c1, c2], axis=1).astype(np.int64)
    t = K.sample_seeds(L.array, L.row_inv, L.col_inv, seeds, n // 2)
    if t < 0:
        return None
    return closure(L, [seeds[t, 0] + 1], [seeds[t, 1] + 1, seeds[t, 2] + 1], n // 2)


def brute_force_subsquares(L: LatinSquare | PerturbedSquare, orders: Iterable[int] | None = None,
                           limit: int = 8) -> list[SubBox]:
    """Every proper subsquare, found by testing all equal-size row and column subsets.

    Only meant as an oracle for the closure detectors, hence the order guard.
    """
    n = L.order
    if n > limit:
        raise OrderTooLarge(f"brute force is limited to order {limit}")
    grid = np.asarray(L.rows() if isinstance(L, PerturbedSquare) else L.array + 1)
    out = []
    for k in (range(2, n) if orders is None else orders):
        for rows in combinations(range(n), k):
            sub_rows = grid[list(rows)]
            for cols in combinations(range(n), k):
                sub = sub_rows[:, list(cols)]
                syms = np.unique(sub)
                if len(syms) != k:
                    continue
                if all(len(np.unique(sub[i])) == k for i in range(k)) and \
                        all(len(np.unique(sub[:, j])) == k for j in range(k)):
                    out.append(SubBox.make((r + 1 for r in rows), (c + 1 for c in cols), syms.tolist()))
    return sorted(out)


# ---------------------------------------------------------------------------
# Perturbed squares: closure with branching on doubled symbols


class _Tables:
    """0-based lookup tables for a perturbed square, as plain lists for speed."""

    def __init__(self, P: PerturbedSquare):
        base = P.base
        self.n = base.order
        self.a = base.array.tolist()
        self.rinv = base.row_inv.tolist()
        self.cinv = base.col_inv.tolist()
        self.over = {(r - 1, c - 1): s - 1 for (r, c), s in P.overrides}
        self.over_rows = {r for r, _ in self.over}
        self.over_cols = {c for _, c in self.over}
        self.row_extra: dict = {}
        self.col_extra: dict = {}
        for (r, c), s in self.over.items():
            self.row_extra.setdefault((r, s), []).append(c)
            self.col_extra.setdefault((c, s), []).append(r)

    def val(self, r, c):
        if r in self.over_rows:
            v = self.over.get((r, c))
            if v is not None:
                return v
        return self.a[r][c]

    def cols_with(self, r, s):
        if r not in self.over_rows:
            return (self.rinv[r][s],) if 0 <= s < self.n else ()
        out = list(self.row_extra.get((r, s), ()))
        if 0 <= s < self.n:
            c = self.rinv[r][s]
            if (r, c) not in self.over:
                out.append(c)
        return out

    def rows_with(self, c, s):
        if c not in self.over_cols:
            return (self.cinv[c][s],) if 0 <= s < self.n else ()
        out = list(self.col_extra.get((c, s), ()))
        if 0 <= s < self.n:
            r = self.cinv[c][s]
            if (r, c) not in self.over:
                out.append(r)
        return out


class _State:
    __slots__ = ("R", "C", "S", "Rs", "Cs", "Ss", "pR", "pC", "pS", "pending")

    def __init__(self, R, C):
        self.R, self.C, self.S = list(R), list(C), []
        self.Rs, self.Cs, self.Ss = set(R), set(C), set()
        self.pR = self.pC = self.pS = 0
        self.pending = []

    def copy(self):
        st = _State.__new__(_State)
        st.R, st.C, st.S = self.R[:], self.C[:], self.S[:]
        st.Rs, st.Cs, st.Ss = set(self.Rs), set(self.Cs), set(self.Ss)
        st.pR, st.pC, st.pS = self.pR, self.pC, self.pS
        st.pending = self.pending[:]
        return st


_DEAD = object()


def _propagate(T: _Tables, st: _State, bound: int):
    """Run forced steps to a fixpoint.  Returns ``_DEAD`` or the first open branch."""
    R, C, S, Rs, Cs, Ss = st.R, st.C, st.S, st.Rs, st.Cs, st.Ss

    def need(cands, members, lst, is_row):
        # one of ``cands`` must join the box; exactly one may be in it
        hit = [x for x in cands if x in members]
        if len(hit) == 1:
            return True
        if hit:
            return False
        if not cands:
            return False
        if len(cands) == 1:
            members.add(cands[0])
            lst.append(cands[0])
            return True
        st.pending.append((is_row, tuple(cands)))
        return True

    while st.pR < len(R) or st.pC < len(C) or st.pS < len(S):
        if len(R) > bound or len(C) > bound or len(S) > bound:
            return _DEAD
        if st.pR < len(R):
            r = R[st.pR]
            for t in range(st.pC):
                s = T.val(r, C[t])
                if s not in Ss:
                    Ss.add(s)
                    S.append(s)
            for t in range(st.pS):
                if not need(T.cols_with(r, S[t]), Cs, C, False):
                    return _DEAD
            st.pR += 1
        elif st.pC < len(C):
            c = C[st.pC]
            for t in range(st.pR):
                s = T.val(R[t], c)
                if s not in Ss:
                    Ss.add(s)
                    S.append(s)
            for t in range(st.pS):
                if not need(T.rows_with(c, S[t]), Rs, R, True):
                    return _DEAD
            st.pC += 1
        else:
            s = S[st.pS]
            for t in range(st.pR):
                if not need(T.cols_with(R[t], s), Cs, C, False):
                    return _DEAD
            for t in range(st.pC):
                if not need(T.rows_with(C[t], s), Rs, R, True):
                    return _DEAD
            st.pS += 1
    if len(R) > bound or len(C) > bound or len(S) > bound:
        return _DEAD
    still = []
    for is_row, cands in st.pending:
        members = Rs if is_row else Cs
        hit = sum(1 for x in cands if x in members)
        if hit > 1:
            return _DEAD
        if hit == 0:
            still.append((is_row, cands))
    st.pending = still
    return still[0] if still else None


def _valid_box(T: _Tables, st: _State) -> bool:
    k = len(st.R)
    if len(st.C) != k or len(st.S) != k:
        return False
    for r in st.R:
        if len({T.val(r, c) for c in st.C}) != k:
            return False
    for c in st.C:
        if len({T.val(r, c) for r in st.R}) != k:
            return False
    return True


def _branching_closure(T: _Tables, R, C, bound: int) -> list[tuple[frozenset, frozenset, frozenset]]:
    """All minimal subsquares containing the seed box, one per consistent branch."""
    out = []
    stack = [_State(R, C)]
    while stack:
        st = stack.pop()
        open_branch = _propagate(T, st, bound)
        if open_branch is _DEAD:
            continue
        if open_branch is None:
            if _valid_box(T, st):
                out.append((frozenset(st.R), frozenset(st.C), frozenset(st.S)))
            continue
        is_row, cands = open_branch
        for x in cands:
            child = st.copy()
            child.pending = [p for p in child.pending if p != open_branch]
            if is_row:
                child.Rs.add(x)
                child.R.append(x)
            else:
                child.Cs.add(x)
                child.C.append(x)
            stack.append(child)
    return out


def perturbed_subsquares(P: PerturbedSquare | LatinSquare, order_range: Iterable[int],
                         must_contain: Iterable[Cell] = ()) -> list[SubBox]:
    """Every subsquare with order in ``order_range`` containing all of ``must_contain``.

    Orders below two are ignored.  Minimal subsquares come from the branching
    closure; larger ones are reached by re-closing each found box with one
    extra column, which every strictly larger subsquare must contain.
    """
    if isinstance(P, LatinSquare):
        P = PerturbedSquare(P)
    orders = {k for k in order_range if k >= 2}
    if not orders:
        return []
    n = P.order
    lo, hi = min(orders), min(max(orders), n)
    if P.k == 1:
        hi = min(hi, (n + 1) // 2)
    if hi < lo:
        return []
    T = _Tables(P)
    must = [(r - 1, c - 1) for r, c in must_contain]
    if must:
        R0 = sorted({r for r, _ in must})
        C0 = sorted({c for _, c in must})
        if len(R0) == 1 and len(C0) == 1:
            seeds = [(R0, C0 + [c]) for c in range(n) if c != C0[0]]
        else:
            seeds = [(R0, C0)]
    else:
        seeds = [([r], [c1, c2]) for r in range(n) for c1, c2 in combinations(range(n), 2)]
    found = set()
    visited = set()
    stack = [(tuple(R), tuple(C)) for R, C in seeds]
    while stack:
        R, C = stack.pop()
        key = (frozenset(R), frozenset(C))
        if key in visited:
            continue
        visited.add(key)
        for Rb, Cb, Sb in _branching_closure(T, R, C, hi):
            k = len(Rb)
            if k in orders:
                found.add((Rb, Cb, Sb))
            if k < hi:
                for c in range(n):
                    if c not in Cb:
                        stack.append((tuple(Rb), tuple(Cb) + (c,)))
    return sorted(_box_from0(R, C, S) for R, C, S in found)


def find_intercalate(P: PerturbedSquare | LatinSquare) -> SubBox | None:
    """Lexicographically first intercalate by (rows, cols), overrides included."""
    if isinstance(P, LatinSquare):
        P = PerturbedSquare(P)
    base = P.base
    n = base.order
    cands = []
    if P.k and not base.intercalate_free:
        forbidden = np.zeros((n, n), np.bool_)
        for (r, c) in P.holes:
            forbidden[r - 1, c - 1] = True
        hit = K.find_intercalate(base.array, base.row_inv, forbidden, True)
    elif base.intercalate_free:
        hit = np.full(4, -1)
    else:
        hit = K.find_intercalate(base.array, base.row_inv, np.zeros((1, 1), np.bool_), False)
    if hit[0] >= 0:
        r1, r2, c1, c2 = (int(x) + 1 for x in hit)
        cands.append(((r1, r2), (c1, c2)))
    for (r, c), sigma in P.overrides:
        for c2 in range(1, n + 1):
            if c2 == c:
                continue
            t = P[r, c2]
            if t == sigma:
                continue
            for r2 in P.rows_with(c, t):
                if r2 != r and P[r2, c2] == sigma:
                    cands.append((tuple(sorted((r, r2))), tuple(sorted((c, c2)))))
    if not cands:
        return None
    rows, cols = min(cands)
    return SubBox.make(rows, cols, {P[rows[0], cols[0]], P[rows[0], cols[1]]})


def contains_intercalate(P: PerturbedSquare | LatinSquare) -> bool:
    return find_intercalate(P) is not None


def has_single_symbol_square(P: PerturbedSquare, cell1: Cell, cell2: Cell) -> bool:
    """Whether some square submatrix holding one symbol only contains both cells.

    Any such k x k block contains a 2 x 2 single-symbol block through both
    cells, so only 2 x 2 blocks are scanned.
    """
    (r1, c1), (r2, c2) = cell1, cell2
    n = P.order
    v = P[r1, c1]
    if P[r2, c2] != v:
        return False
    if r1 != r2 and c1 != c2:
        return P[r1, c2] == v and P[r2, c1] == v
    if r1 == r2:
        return any(P[r, c1] == v and P[r, c2] == v for r in range(1, n + 1) if r != r1)
    return any(P[r1, c] == v and P[r2, c] == v for c in range(1, n + 1) if c != c1)


# ---------------------------------------------------------------------------
# Hypercubes


@dataclass(frozen=True, order=True)
class HyperBox:
    order: int
    coords: tuple[tuple[int, ...], ...]  # one sorted 1-based tuple per axis
    symbols: tuple[int, ...]


def is_subhypercube(H: Hypercube, coords: Sequence[Sequence[int]]) -> bool:
    sets = [sorted(set(c)) for c in coords]
    k = len(sets[0])
    if len(sets) != H.dim or any(len(s) != k for s in sets):
        return False
    sub = H.array[np.ix_(*[[x - 1 for x in s] for s in sets])]
    return len(np.unique(sub)) == k


def find_proper_subhypercube(H: Hypercube) -> HyperBox | None:
    """Smallest proper subhypercube by (order, axis sets); ``None`` iff N-infinity."""
    n, d = H.order, H.dim
    if d < 2:
        raise ValueError("subhypercubes need dimension at least two")
    if n < 4:
        return None
    flat = np.ascontiguousarray(H.array.reshape(-1))
    inv, strides = K.line_inverse(flat, n, d)
    k, best, syms = K.hyper_sweep_best(flat, inv, strides, n, d, n // 2)
    if k < 0:
        return None
    return HyperBox(int(k), tuple(tuple(int(x) + 1 for x in best[ax, :k]) for ax in range(d)),
                    tuple(int(x) + 1 for x in syms[:k]))


def brute_force_subhypercubes(H: Hypercube, limit: int = 5) -> list[HyperBox]:
    """All proper subhypercubes by exhaustive subset enumeration (oracle)."""
    n, d = H.order, H.dim
    if n > limit:
        raise OrderTooLarge(f"brute force is limited to order {limit}")
    out = []
    for k in range(2, n):
        subsets = list(combinations(range(n), k))
        for choice in np.ndindex(*(len(subsets),) * d):
            sets = [subsets[i] for i in choice]
            syms = np.unique(H.array[np.ix_(*sets)])
            if len(syms) == k:
                out.append(HyperBox(k, tuple(tuple(x + 1 for x in s) for s in sets),
                                    tuple(int(x) + 1 for x in syms)))
    return sorted(out)


# ---------------------------------------------------------------------------
# Isotopy


class Isotopism(NamedTuple):
    """Maps sending ``A`` to ``B``: ``B[rows[r], cols[c]] = symbols[A[r, c]]`` (1-based tuples, index 0 unused)."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    symbols: tuple[int, ...]

    def apply(self, A: LatinSquare) -> LatinSquare:
        n = A.order
        out = np.empty((n, n), np.int64)
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                out[self.rows[r] - 1, self.cols[c] - 1] = self.symbols[A[r, c]] - 1
        return LatinSquare(out)


def is_isotopic(A: LatinSquare, B: LatinSquare, limit: int = 9) -> Isotopism | None:
    """Search for an isotopism from ``A`` to ``B`` by propagation and backtracking."""
    n = A.order
    if B.order != n:
        return None
    if n > limit:
        raise OrderTooLarge(f"isotopy search is limited to order {limit}")
    a, ra, ca = A.array.tolist(), A.row_inv.tolist(), A.col_inv.tolist()
    b, rb, cb = B.array.tolist(), B.row_inv.tolist(), B.col_inv.tolist()

    def assign(maps, inv, kind, x, v, queue):
        cur = maps[kind][x]
        if cur >= 0:
            return cur == v
        if inv[kind][v] >= 0:
            return False
        maps[kind][x] = v
        inv[kind][v] = x
        queue.append((kind, x))
        return True

    def propagate(maps, inv, queue):
        al, be, ga = maps
        while queue:
            kind, x = queue.pop()
            if kind == 0:
                r, rr = x, al[x]
                for c in range(n):
                    if be[c] >= 0 and not assign(maps, inv, 2, a[r][c], b[rr][be[c]], queue):
                        return False
                for s in range(n):
                    if ga[s] >= 0 and not assign(maps, inv, 1, ra[r][s], rb[rr][ga[s]], queue):
                        return False
            elif kind == 1:
                c, cc = x, be[x]
                for r in range(n):
                    if al[r] >= 0 and not assign(maps, inv, 2, a[r][c], b[al[r]][cc], queue):
                        return False
                for s in range(n):
                    if ga[s] >= 0 and not assign(maps, inv, 0, ca[c][s], cb[cc][ga[s]], queue):
                        return False
            else:
                s, ss = x, ga[x]
                for r in range(n):
                    if al[r] >= 0 and not assign(maps, inv, 1, ra[r][s], rb[al[r]][ss], queue):
                        return False
                for c in range(n):
                    if be[c] >= 0 and not assign(maps, inv, 0, ca[c][s], cb[be[c]][ss], queue):
                        return False
        return True

    def search(maps, inv):
        for kind in (0, 1):
            free = [x for x in range(n) if maps[kind][x] < 0]
            if free:
                x = free[0]
                for v in range(n):
                    if inv[kind][v] >= 0:
                        continue
                    m2 = [m[:] for m in maps]
                    i2 = [m[:] for m in inv]
                    q = []
                    if assign(m2, i2, kind, x, v, q) and propagate(m2, i2, q):
                        res = search(m2, i2)
                        if res is not None:
                            return res
                return None
        return maps

    maps = [[-1] * n for _ in range(3)]
    inv = [[-1] * n for _ in range(3)]
    res = search(maps, inv)
    if res is None:
        return None
    al, be, ga = res
    iso = Isotopism((0,) + tuple(x + 1 for x in al), (0,) + tuple(x + 1 for x in be),
                    (0,) + tuple(x + 1 for x in ga))
    if iso.apply(A) != B:
        return None
    return iso
