"""Latin square types and the construction operators that act on them.

Public indices and symbols are 1-based throughout (rows, columns and symbols
all live in ``1..n``).  Internally every square keeps a 0-based ``int64``
array so the numba kernels in :mod:`ninf._kernels` can scan it directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import BadDim, BadShift, InvalidCycle, NotApplicable, NotLatin, SameSymbol

Cell = tuple[int, int]


def shift_by(v: int, t: int, n: int) -> int:
    """Add ``t`` to ``v`` modulo ``n`` with representatives ``1..n``."""
    return (v - 1 + t) % n + 1


class Entry(NamedTuple):
    row: int
    col: int
    symbol: int


def _inverse_tables(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    idx = np.arange(n)
    row_inv = np.empty_like(a)
    col_inv = np.empty_like(a)
    row_inv[idx[:, None], a] = idx[None, :]
    col_inv[idx[None, :], a] = idx[:, None]
    return row_inv, col_inv


def _check_latin_array(a: np.ndarray) -> None:
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise NotLatin(f"grid must be square, got shape {a.shape}")
    if n == 0:
        raise NotLatin("empty grid")
    if a.min() < 0 or a.max() >= n:
        bad = int(a[(a < 0) | (a >= n)][0]) + 1
        raise NotLatin(f"symbol {bad} outside 1..{n}", symbol=bad)
    target = np.arange(n)
    rows_ok = (np.sort(a, axis=1) == target).all(axis=1)
    if not rows_ok.all():
        r = int(np.flatnonzero(~rows_ok)[0])
        vals, counts = np.unique(a[r], return_counts=True)
        dup = int(vals[counts > 1][0]) + 1
        raise NotLatin(f"row {r + 1} repeats symbol {dup}", line=("row", r + 1), symbol=dup)
    cols_ok = (np.sort(a, axis=0) == target[:, None]).all(axis=0)
    if not cols_ok.all():
        c = int(np.flatnonzero(~cols_ok)[0])
        vals, counts = np.unique(a[:, c], return_counts=True)
        dup = int(vals[counts > 1][0]) + 1
        raise NotLatin(f"column {c + 1} repeats symbol {dup}", line=("col", c + 1), symbol=dup)


class LatinSquare:
    """An immutable Latin square of order ``n`` with row/column inverse tables.

    ``array[r, c]`` holds the 0-based symbol; ``row_inv[r, s]`` is the column
    of symbol ``s`` in row ``r`` and ``col_inv[c, s]`` the row of ``s`` in
    column ``c`` (all 0-based).  ``L[i, j]`` gives the 1-based view.
    """

    __slots__ = ("order", "array", "row_inv", "col_inv", "__dict__")

    def __init__(self, array0, *, validate: bool = True):
        a = np.array(array0, dtype=np.int64, copy=True)
        if validate:
            _check_latin_array(a)
        a.setflags(write=False)
        self.order = int(a.shape[0])
        self.array = a
        self.row_inv, self.col_inv = _inverse_tables(a)
        self.row_inv.setflags(write=False)
        self.col_inv.setflags(write=False)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "LatinSquare":
        try:
            a = np.asarray(rows, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise NotLatin(f"grid is not rectangular: {exc}") from None
        if a.ndim != 2:
            raise NotLatin("grid must be two-dimensional")
        return cls(a - 1)

    def __getitem__(self, cell: Cell) -> int:
        i, j = cell
        return int(self.array[i - 1, j - 1]) + 1

    def column_of(self, row: int, symbol: int) -> int:
        return int(self.row_inv[row - 1, symbol - 1]) + 1

    def row_of(self, col: int, symbol: int) -> int:
        return int(self.col_inv[col - 1, symbol - 1]) + 1

    def tau(self, i: int, j: int, symbol: int) -> int:
        """Row permutation ``tau_{i,j}`` applied to ``symbol``."""
        return int(self.array[j - 1, self.row_inv[i - 1, symbol - 1]]) + 1

    def rows(self) -> list[list[int]]:
        return (self.array + 1).tolist()

    def entries(self) -> Iterable[Entry]:
        n = self.order
        for i in range(n):
            for j in range(n):
                yield Entry(i + 1, j + 1, int(self.array[i, j]) + 1)

    def transpose(self) -> "LatinSquare":
        return LatinSquare(self.array.T, validate=False)

    def differing_cells(self, other: "LatinSquare") -> list[Cell]:
        rr, cc = np.nonzero(self.array != other.array)
        return [(int(r) + 1, int(c) + 1) for r, c in zip(rr, cc)]

    def with_cells(self, changes: dict[Cell, int], *, validate: bool = True) -> "LatinSquare":
        a = self.array.copy()
        for (i, j), v in changes.items():
            a[i - 1, j - 1] = v - 1
        return LatinSquare(a, validate=validate)

    @cached_property
    def intercalate_free(self) -> bool:
        from ._kernels import find_intercalate

        return find_intercalate(self.array, self.row_inv, np.zeros((1, 1), np.bool_), False)[0] < 0

    def __eq__(self, other):
        return isinstance(other, LatinSquare) and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash((self.order, self.array.tobytes()))

    def __repr__(self):
        return f"LatinSquare(order={self.order})"

    def __str__(self):
        w = len(str(self.order))
        return "\n".join(" ".join(f"{v:>{w}}" for v in row) for row in self.rows())


def ls_from_rows(rows: Sequence[Sequence[int]]) -> LatinSquare:
    """Validate a grid of 1-based symbols and return it as a :class:`LatinSquare`."""
    return LatinSquare.from_rows(rows)


def cyclic_square(n: int) -> LatinSquare:
    """The cyclic table ``C[i, j] = shift_by(i, j)``."""
    idx = np.arange(n)
    return LatinSquare((idx[:, None] + idx[None, :] + 1) % n, validate=False)


def random_latin_square(n: int, rng: np.random.Generator, steps: int | None = None) -> LatinSquare:
    """A random square from a Jacobson-Matthews walk started at a random isotope of the cyclic square.

    The walk runs ``steps`` moves (default ``n**3``, at least 200) and is
    seeded from ``rng``, so the result is reproducible.
    """
    from ._kernels import jacobson_matthews

    a = cyclic_square(n).array
    a = a[rng.permutation(n)][:, rng.permutation(n)]
    a = rng.permutation(n)[a]
    if n < 3:
        return LatinSquare(a, validate=False)
    steps = max(200, n ** 3) if steps is None else steps
    return LatinSquare(jacobson_matthews(a, steps, int(rng.integers(2**31))))


# ---------------------------------------------------------------------------
# Perturbed squares (k-near copies)


@dataclass(frozen=True)
class PerturbedSquare:
    """A Latin square with some cells overwritten by alien symbols."""

    base: LatinSquare
    overrides: tuple[tuple[Cell, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for (cell, sym) in self.overrides:
            if cell in seen:
                raise ValueError(f"cell {cell} overridden twice")
            seen.add(cell)
            if sym == self.base[cell]:
                raise SameSymbol(f"override at {cell} repeats the base symbol {sym}")

    @cached_property
    def _over(self) -> dict[Cell, int]:
        return dict(self.overrides)

    @cached_property
    def _row_extra(self) -> dict[tuple[int, int], list[int]]:
        extra: dict[tuple[int, int], list[int]] = {}
        for (r, c), s in self.overrides:
            extra.setdefault((r, s), []).append(c)
        return extra

    @cached_property
    def _col_extra(self) -> dict[tuple[int, int], list[int]]:
        extra: dict[tuple[int, int], list[int]] = {}
        for (r, c), s in self.overrides:
            extra.setdefault((c, s), []).append(r)
        return extra

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def k(self) -> int:
        return len(self.overrides)

    @property
    def holes(self) -> list[Cell]:
        return [cell for cell, _ in self.overrides]

    @property
    def alien_entries(self) -> list[Entry]:
        return [Entry(r, c, s) for (r, c), s in self.overrides]

    @property
    def displaced_natives(self) -> dict[Cell, int]:
        return {cell: self.base[cell] for cell, _ in self.overrides}

    def __getitem__(self, cell: Cell) -> int:
        v = self._over.get(cell)
        return self.base[cell] if v is None else v

    def columns_with(self, row: int, symbol: int) -> tuple[int, ...]:
        """Columns of ``row`` holding ``symbol`` (0, 1 or 2 of them for k = 1)."""
        out = list(self._row_extra.get((row, symbol), ()))
        if 1 <= symbol <= self.order:
            c = self.base.column_of(row, symbol)
            if (row, c) not in self._over:
                out.append(c)
        return tuple(sorted(out))

    def rows_with(self, col: int, symbol: int) -> tuple[int, ...]:
        out = list(self._col_extra.get((col, symbol), ()))
        if 1 <= symbol <= self.order:
            r = self.base.row_of(col, symbol)
            if (r, col) not in self._over:
                out.append(r)
        return tuple(sorted(out))

    def with_override(self, cell: Cell, symbol: int) -> "PerturbedSquare":
        """Overwrite ``cell``; writing the base symbol back removes the override."""
        rest = tuple((c, s) for c, s in self.overrides if c != cell)
        if symbol == self.base[cell]:
            return PerturbedSquare(self.base, rest)
        return PerturbedSquare(self.base, rest + ((cell, symbol),))

    def rows(self) -> list[list[int]]:
        out = self.base.rows()
        for (r, c), s in self.overrides:
            out[r - 1][c - 1] = s
        return out


def near_copy(L: LatinSquare, cell: Cell, sigma: int) -> PerturbedSquare:
    """``sigma ↪ L[cell]``: ``L`` with one cell overwritten."""
    if sigma == L[cell]:
        raise SameSymbol(f"symbol {sigma} already occupies {cell}")
    return PerturbedSquare(L, ((tuple(cell), sigma),))


def shifted_near_copy(L: LatinSquare, cell: Cell, s: int) -> PerturbedSquare:
    """``(L[cell] + s) ↪ L[cell]`` with modular symbol arithmetic."""
    return near_copy(L, cell, shift_by(L[cell], s, L.order))


# ---------------------------------------------------------------------------
# Row cycles and trades


@dataclass(frozen=True)
class RowCycle:
    rows: tuple[int, int]
    columns: tuple[int, ...]  # traversal order, starting at the seed column
    symbols: tuple[int, ...]  # symbols of row i along ``columns``

    @property
    def length(self) -> int:
        return len(self.columns)

    @property
    def column_set(self) -> frozenset[int]:
        return frozenset(self.columns)


def row_cycle(L: LatinSquare, i: int, j: int, c: int) -> RowCycle:
    """The cycle of ``tau_{i,j}`` through column ``c``."""
    if i == j:
        raise ValueError("row cycle needs two distinct rows")
    a, rinv = L.array, L.row_inv
    i0, j0, c0 = i - 1, j - 1, c - 1
    cols = [c0]
    col = int(rinv[i0, a[j0, c0]])
    while col != c0:
        cols.append(col)
        col = int(rinv[i0, a[j0, col]])
    return RowCycle((i, j), tuple(x + 1 for x in cols), tuple(int(a[i0, x]) + 1 for x in cols))


def switch_row_cycle(L: LatinSquare, rho: RowCycle) -> LatinSquare:
    """Swap rows ``i`` and ``j`` on the columns of ``rho``."""
    i, j = rho.rows
    fresh = row_cycle(L, i, j, rho.columns[0])
    if fresh.column_set != rho.column_set:
        raise InvalidCycle(f"{rho} is not a row cycle of this square")
    a = L.array.copy()
    cols = np.asarray(rho.columns) - 1
    a[i - 1, cols], a[j - 1, cols] = L.array[j - 1, cols], L.array[i - 1, cols]
    return LatinSquare(a, validate=False)


@dataclass(frozen=True)
class EtaTradePlan:
    i: int
    j: int
    k: int
    x: int
    y: int
    a: int
    b: int
    chain_cols: tuple[int, ...]  # c_0 .. c_l
    chain_symbols: tuple[int, ...]  # a, z_1 .. z_l (row j symbols on chain_cols)
    cell_set: frozenset[Cell] = field(compare=False)

    @property
    def ell(self) -> int:
        return len(self.chain_cols) - 1


def eta_plan(L: LatinSquare, i: int, j: int, x: int) -> EtaTradePlan:
    """Locate the three-row trade determined by rows ``i``, ``j`` and column ``x``."""
    n = L.order
    if n < 3 or i == j:
        raise NotApplicable("eta trade needs three distinct rows")
    a = L[i, x]
    b = L[j, x]
    y = L.column_of(i, b)
    k = L.row_of(y, a)
    if len({i, j, k}) < 3:
        raise NotApplicable(f"rows collide: i={i}, j={j}, k={k}")
    if x == y:
        raise NotApplicable("columns collide")
    cols = [L.column_of(j, a)]
    syms = [a]
    z = L[k, cols[-1]]
    while z != b:
        if z == a:
            raise NotApplicable(f"symbol {b} is not on the tau_({j},{k}) cycle of {a}")
        syms.append(z)
        cols.append(L.column_of(j, z))
        z = L[k, cols[-1]]
    cells = {(i, x), (i, y), (j, x), (k, y)}
    for c in cols:
        cells.add((j, c))
        cells.add((k, c))
    return EtaTradePlan(i, j, k, x, y, a, b, tuple(cols), tuple(syms), frozenset(cells))


def switch_eta(L: LatinSquare, plan: EtaTradePlan) -> LatinSquare:
    """Apply the trade: each plan cell swaps with the other plan cell in its column."""
    p = plan
    new = {(p.i, p.x): p.b, (p.k, p.y): p.b, (p.j, p.chain_cols[-1]): p.b,
           (p.i, p.y): p.a, (p.j, p.x): p.a, (p.k, p.chain_cols[0]): p.a}
    for w in range(1, len(p.chain_cols)):
        z = p.chain_symbols[w]
        new[(p.j, p.chain_cols[w - 1])] = z
        new[(p.k, p.chain_cols[w])] = z
    return L.with_cells(new, validate=False)


# ---------------------------------------------------------------------------
# Pair-indexed squares: direct and corrupted products


@dataclass(frozen=True)
class PairIndexedSquare:
    """A square indexed by ``[outer] x [inner]`` pairs, stored in ``prec_1`` order.

    ``flat`` is the same square with every pair relabelled by
    ``phi(i, j) = inner * (i - 1) + j``.
    """

    outer: int
    inner: int
    flat: LatinSquare

    def phi(self, i: int, j: int) -> int:
        return self.inner * (i - 1) + j

    def pair(self, v: int) -> tuple[int, int]:
        return (v - 1) // self.inner + 1, (v - 1) % self.inner + 1

    @property
    def order(self) -> int:
        return self.outer * self.inner

    def __getitem__(self, cell):
        (i, j), (k, l) = cell
        return self.pair(self.flat[self.phi(i, j), self.phi(k, l)])

    def m_block(self, i: int, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Symbols of the inner-factor block at position ``(i, k)`` as two 1-based arrays."""
        mu = self.inner
        sub = self.flat.array[(i - 1) * mu:i * mu, (k - 1) * mu:k * mu]
        return sub // mu + 1, sub % mu + 1

    def outer_block(self, j: int, l: int) -> tuple[np.ndarray, np.ndarray]:
        """Symbols of the outer-factor block at position ``(j, l)``."""
        mu = self.inner
        sub = self.flat.array[j - 1::mu, l - 1::mu]
        return sub // mu + 1, sub % mu + 1

    def principal_m_block(self):
        return self.m_block(1, 1)

    def row_cycle(self, row_a: tuple[int, int], row_b: tuple[int, int], col: tuple[int, int]) -> RowCycle:
        return row_cycle(self.flat, self.phi(*row_a), self.phi(*row_b), self.phi(*col))

    def switch(self, rho: RowCycle) -> "PairIndexedSquare":
        return PairIndexedSquare(self.outer, self.inner, switch_row_cycle(self.flat, rho))


def _pair_array(outer: np.ndarray, inner: np.ndarray, mu: int) -> np.ndarray:
    return outer * mu + inner


def direct_product(L: LatinSquare, M: LatinSquare) -> PairIndexedSquare:
    """``(L x M)[(i, j), (x, y)] = (L[i, x], M[j, y])``."""
    n, m = L.order, M.order
    big = L.array[:, None, :, None] * m + M.array[None, :, None, :]
    return PairIndexedSquare(n, m, LatinSquare(big.reshape(n * m, n * m), validate=False))


def corrupted_product(A: LatinSquare, B: LatinSquare, s: int, M: LatinSquare) -> PairIndexedSquare:
    """The corrupted product ``(A, B) *_s M``.

    The principal block of the ``A`` factor comes from ``B`` and the principal
    ``M``-block has its inner coordinate shifted by ``s``.
    """
    if A.order != B.order:
        raise ValueError("A and B must have the same order")
    mu = M.order
    if not 1 <= s <= mu - 1:
        raise BadShift(f"shift {s} outside 1..{mu - 1}")
    alpha = A.order
    big = (A.array[:, None, :, None] * mu + M.array[None, :, None, :]).copy()
    # j = l = 1, (i, k) != (1, 1): (B[i, k], M[1, 1])
    big[:, 0, :, 0] = B.array * mu + M.array[0, 0]
    # i = k = 1: (A[1, 1], M[j, l] + s)
    big[0, :, 0, :] = A.array[0, 0] * mu + (M.array + s) % mu
    return PairIndexedSquare(alpha, mu, LatinSquare(big.reshape(alpha * mu, alpha * mu), validate=False))


def relabel_prec1(P: PairIndexedSquare) -> LatinSquare:
    """Rename rows, columns and symbols by ``phi(i, j) = mu (i - 1) + j``."""
    return P.flat


# ---------------------------------------------------------------------------
# Hypercubes


class Hypercube:
    """A ``d``-dimensional array of order ``n`` (0-based symbols in ``array``)."""

    __slots__ = ("order", "dim", "array")

    def __init__(self, array0, *, validate: bool = True):
        a = np.array(array0, dtype=np.int64, copy=True)
        if a.ndim < 1 or len(set(a.shape)) != 1:
            raise NotLatin(f"hypercube must have equal axes, got shape {a.shape}")
        n = a.shape[0]
        if validate:
            if a.min() < 0 or a.max() >= n:
                raise NotLatin(f"symbols outside 1..{n}")
            target = np.arange(n)
            for axis in range(a.ndim):
                srt = np.sort(a, axis=axis)
                shape = [1] * a.ndim
                shape[axis] = n
                if not (srt == target.reshape(shape)).all():
                    raise NotLatin(f"a line along axis {axis + 1} repeats a symbol", line=("axis", axis + 1))
        a.setflags(write=False)
        self.order = n
        self.dim = a.ndim
        self.array = a

    @classmethod
    def from_square(cls, L: LatinSquare) -> "Hypercube":
        return cls(L.array, validate=False)

    @classmethod
    def from_layers(cls, layers: Sequence[Sequence[Sequence[int]]]) -> "Hypercube":
        """Build a cube from the squares ``L_x[i, j] = H[i, j, x]``, 1-based."""
        a = np.stack([np.asarray(x, dtype=np.int64) for x in layers], axis=-1)
        return cls(a - 1)

    @property
    def data(self) -> np.ndarray:
        """Flat 1-based symbols, last axis fastest."""
        return self.array.reshape(-1) + 1

    def __getitem__(self, coords) -> int:
        return int(self.array[tuple(c - 1 for c in coords)]) + 1

    def __eq__(self, other):
        return isinstance(other, Hypercube) and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash((self.order, self.dim, self.array.tobytes()))

    def __repr__(self):
        return f"Hypercube(order={self.order}, dim={self.dim})"


def boost(H: Hypercube | LatinSquare, d2: int) -> Hypercube:
    """Extend to dimension ``d2`` by adding the trailing coordinates to the symbol mod ``n``."""
    if isinstance(H, LatinSquare):
        H = Hypercube.from_square(H)
    d, n = H.dim, H.order
    if d2 < d:
        raise BadDim(f"target dimension {d2} is below {d}")
    out = H.array.reshape(H.array.shape + (1,) * (d2 - d))
    for axis in range(d, d2):
        shape = [1] * d2
        shape[axis] = n
        out = out + np.arange(1, n + 1).reshape(shape)
    return Hypercube(out % n, validate=False)
