"""Compiled inner loops for subsquare, intercalate and subhypercube detection.

Every function works on 0-based arrays: ``a[r, c]`` is a symbol,
``rinv[r, s]`` the column of ``s`` in row ``r`` and ``cinv[c, s]`` the row of
``s`` in column ``c``.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _close(a, rinv, cinv, seed_r, seed_c, bound, inR, inC, inS, Rl, Cl, Sl):
    # Each (row, col), (row, sym) and (col, sym) pair is examined once, when the
    # later of its two members is dequeued.  Returns the order, or -1 once any
    # of the three sets outgrows ``bound``.  The masks are cleared on exit.
    nR = 0
    nC = 0
    nS = 0
    for r in seed_r:
        if not inR[r]:
            inR[r] = True
            Rl[nR] = r
            nR += 1
    for c in seed_c:
        if not inC[c]:
            inC[c] = True
            Cl[nC] = c
            nC += 1
    pR = 0
    pC = 0
    pS = 0
    ok = nR <= bound and nC <= bound
    while ok and (pR < nR or pC < nC or pS < nS):
        if pR < nR:
            r = Rl[pR]
            for t in range(pC):
                s = a[r, Cl[t]]
                if not inS[s]:
                    inS[s] = True
                    Sl[nS] = s
                    nS += 1
                    if nS > bound:
                        ok = False
                        break
            if not ok:
                break
            for t in range(pS):
                c = rinv[r, Sl[t]]
                if not inC[c]:
                    inC[c] = True
                    Cl[nC] = c
                    nC += 1
                    if nC > bound:
                        ok = False
                        break
            pR += 1
        elif pC < nC:
            c = Cl[pC]
            for t in range(pR):
                s = a[Rl[t], c]
                if not inS[s]:
                    inS[s] = True
                    Sl[nS] = s
                    nS += 1
                    if nS > bound:
                        ok = False
                        break
            if not ok:
                break
            for t in range(pS):
                r = cinv[c, Sl[t]]
                if not inR[r]:
                    inR[r] = True
                    Rl[nR] = r
                    nR += 1
                    if nR > bound:
                        ok = False
                        break
            pC += 1
        else:
            s = Sl[pS]
            for t in range(pR):
                c = rinv[Rl[t], s]
                if not inC[c]:
                    inC[c] = True
                    Cl[nC] = c
                    nC += 1
                    if nC > bound:
                        ok = False
                        break
            if not ok:
                break
            for t in range(pC):
                r = cinv[Cl[t], s]
                if not inR[r]:
                    inR[r] = True
                    Rl[nR] = r
                    nR += 1
                    if nR > bound:
                        ok = False
                        break
            pS += 1
    for t in range(nR):
        inR[Rl[t]] = False
    for t in range(nC):
        inC[Cl[t]] = False
    for t in range(nS):
        inS[Sl[t]] = False
    if not ok:
        return -1
    return nR


def workspace(n):
    return (np.zeros(n, np.bool_), np.zeros(n, np.bool_), np.zeros(n, np.bool_),
            np.zeros(n + 1, np.int64), np.zeros(n + 1, np.int64), np.zeros(n + 1, np.int64))


def close_box(a, rinv, cinv, rows0, cols0, bound):
    """Closure of a seed box; returns ``(rows, cols, syms)`` 0-based arrays or ``None``."""
    n = a.shape[0]
    ws = workspace(n)
    k = _close(a, rinv, cinv, np.asarray(rows0, np.int64), np.asarray(cols0, np.int64), bound, *ws)
    if k < 0:
        return None
    Rl, Cl, Sl = ws[3], ws[4], ws[5]
    return np.sort(Rl[:k]), np.sort(Cl[:k]), np.sort(Sl[:k])


@njit(cache=True)
def _less(k, R, C, bk, bR, bC):
    # (order, sorted rows, sorted cols) comparison
    if bk < 0 or k < bk:
        return True
    if k > bk:
        return False
    for t in range(k):
        if R[t] != bR[t]:
            return R[t] < bR[t]
    for t in range(k):
        if C[t] != bC[t]:
            return C[t] < bC[t]
    return False


@njit(cache=True)
def sweep_best(a, rinv, cinv, bound):
    """Smallest proper subsquare by (order, rows, cols), or order -1.

    Seeds are one row plus a column pair; rows on the same cycle of the column
    permutation give identical closures, so one seed per cycle is tried.
    """
    n = a.shape[0]
    inR = np.zeros(n, np.bool_)
    inC = np.zeros(n, np.bool_)
    inS = np.zeros(n, np.bool_)
    Rl = np.zeros(n + 1, np.int64)
    Cl = np.zeros(n + 1, np.int64)
    Sl = np.zeros(n + 1, np.int64)
    seen = np.zeros(n, np.bool_)
    seed_r = np.zeros(1, np.int64)
    seed_c = np.zeros(2, np.int64)
    bk = -1
    bR = np.zeros(n, np.int64)
    bC = np.zeros(n, np.int64)
    bS = np.zeros(n, np.int64)
    cur = bound
    for c1 in range(n):
        for c2 in range(c1 + 1, n):
            seen[:] = False
            for r in range(n):
                if seen[r]:
                    continue
                length = 0
                x = r
                while not seen[x]:
                    seen[x] = True
                    length += 1
                    x = cinv[c1, a[x, c2]]
                if length > cur:
                    continue
                seed_r[0] = r
                seed_c[0] = c1
                seed_c[1] = c2
                k = _close(a, rinv, cinv, seed_r, seed_c, cur, inR, inC, inS, Rl, Cl, Sl)
                if k > 0:
                    R = np.sort(Rl[:k])
                    C = np.sort(Cl[:k])
                    if _less(k, R, C, bk, bR, bC):
                        bk = k
                        bR[:k] = R
                        bC[:k] = C
                        bS[:k] = np.sort(Sl[:k])
                        cur = k
    return bk, bR, bC, bS


@njit(cache=True)
def sweep_seeds(a, rinv, cinv, bound):
    """Every (row, c1, c2) cycle representative whose closure stays within ``bound``."""
    n = a.shape[0]
    inR = np.zeros(n, np.bool_)
    inC = np.zeros(n, np.bool_)
    inS = np.zeros(n, np.bool_)
    Rl = np.zeros(n + 1, np.int64)
    Cl = np.zeros(n + 1, np.int64)
    Sl = np.zeros(n + 1, np.int64)
    seen = np.zeros(n, np.bool_)
    seed_r = np.zeros(1, np.int64)
    seed_c = np.zeros(2, np.int64)
    out = [(0, 0, 0)]
    out.pop()
    for c1 in range(n):
        for c2 in range(c1 + 1, n):
            seen[:] = False
            for r in range(n):
                if seen[r]:
                    continue
                length = 0
                x = r
                while not seen[x]:
                    seen[x] = True
                    length += 1
                    x = cinv[c1, a[x, c2]]
                if length > bound:
                    continue
                seed_r[0] = r
                seed_c[0] = c1
                seed_c[1] = c2
                if _close(a, rinv, cinv, seed_r, seed_c, bound, inR, inC, inS, Rl, Cl, Sl) > 0:
                    out.append((r, c1, c2))
    return out


@njit(cache=True)
def subsquare_score(a, rinv, cinv, bound):
    """Weighted count of seed cycles closing to a subsquare: order 2 counts 1, larger 4."""
    n = a.shape[0]
    inR = np.zeros(n, np.bool_)
    inC = np.zeros(n, np.bool_)
    inS = np.zeros(n, np.bool_)
    Rl = np.zeros(n + 1, np.int64)
    Cl = np.zeros(n + 1, np.int64)
    Sl = np.zeros(n + 1, np.int64)
    seen = np.zeros(n, np.bool_)
    seed_r = np.zeros(1, np.int64)
    seed_c = np.zeros(2, np.int64)
    score = 0
    for c1 in range(n):
        for c2 in range(c1 + 1, n):
            seen[:] = False
            for r in range(n):
                if seen[r]:
                    continue
                length = 0
                x = r
                while not seen[x]:
                    seen[x] = True
                    length += 1
                    x = cinv[c1, a[x, c2]]
                if length == 2:
                    score += 1
                    continue
                if length > bound:
                    continue
                seed_r[0] = r
                seed_c[0] = c1
                seed_c[1] = c2
                if _close(a, rinv, cinv, seed_r, seed_c, bound, inR, inC, inS, Rl, Cl, Sl) > 0:
                    score += 4
    return score


@njit(cache=True)
def sample_seeds(a, rinv, cinv, seeds, bound):
    """Index of the first seed ``(r, c1, c2)`` closing to a subsquare, else -1."""
    n = a.shape[0]
    inR = np.zeros(n, np.bool_)
    inC = np.zeros(n, np.bool_)
    inS = np.zeros(n, np.bool_)
    Rl = np.zeros(n + 1, np.int64)
    Cl = np.zeros(n + 1, np.int64)
    Sl = np.zeros(n + 1, np.int64)
    seed_r = np.zeros(1, np.int64)
    seed_c = np.zeros(2, np.int64)
    for t in range(seeds.shape[0]):
        seed_r[0] = seeds[t, 0]
        seed_c[0] = seeds[t, 1]
        seed_c[1] = seeds[t, 2]
        if _close(a, rinv, cinv, seed_r, seed_c, bound, inR, inC, inS, Rl, Cl, Sl) > 0:
            return t
    return -1


@njit(cache=True)
def find_intercalate(a, rinv, forbidden, use_forbidden):
    """Lexicographically first intercalate ``(r1, r2, c1, c2)`` avoiding forbidden cells."""
    n = a.shape[0]
    out = np.full(4, -1, np.int64)
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            for c1 in range(n):
                c2 = rinv[r1, a[r2, c1]]
                if c2 <= c1 or a[r2, c2] != a[r1, c1]:
                    continue
                if use_forbidden and (forbidden[r1, c1] or forbidden[r1, c2]
                                      or forbidden[r2, c1] or forbidden[r2, c2]):
                    continue
                out[0] = r1
                out[1] = r2
                out[2] = c1
                out[3] = c2
                return out
    return out


@njit(cache=True)
def count_intercalates(a, rinv):
    n = a.shape[0]
    total = 0
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            for c1 in range(n):
                c2 = rinv[r1, a[r2, c1]]
                if c2 > c1 and a[r2, c2] == a[r1, c1]:
                    total += 1
    return total


# ---------------------------------------------------------------------------
# Hypercubes: ``flat`` is the array raveled with the last axis fastest and
# ``inv[axis, base + strides[axis] * s]`` is the coordinate of symbol ``s`` on
# the axis-parallel line whose coordinate on ``axis`` is zero at ``base``.


def line_inverse(flat, n, d):
    strides = np.array([n ** (d - 1 - ax) for ax in range(d)], np.int64)
    inv = np.empty((d, flat.shape[0]), np.int64)
    coords = np.indices((n,) * d).reshape(d, -1)
    idx = np.arange(flat.shape[0])
    for ax in range(d):
        base = idx - coords[ax] * strides[ax]
        inv[ax, base + strides[ax] * flat] = coords[ax]
    return inv, strides


@njit(cache=True)
def _hyper_close(flat, inv, strides, n, d, seed, bound, inA, lists, sizes, inS, Sl):
    # seed: length d + 1; axis 0 gets seed[0] and seed[1], axis t > 0 gets seed[t + 1]
    sizes[:] = 0
    inA[:, :] = False
    inS[:] = False
    nS = 0
    inA[0, seed[0]] = True
    lists[0, 0] = seed[0]
    sizes[0] = 1
    if not inA[0, seed[1]]:
        inA[0, seed[1]] = True
        lists[0, 1] = seed[1]
        sizes[0] = 2
    for ax in range(1, d):
        inA[ax, seed[ax + 1]] = True
        lists[ax, 0] = seed[ax + 1]
        sizes[ax] = 1
    pos = np.zeros(d, np.int64)
    changed = True
    while changed:
        changed = False
        # symbols present in the box
        pos[:] = 0
        while True:
            f = 0
            for ax in range(d):
                f += lists[ax, pos[ax]] * strides[ax]
            s = flat[f]
            if not inS[s]:
                inS[s] = True
                Sl[nS] = s
                nS += 1
                changed = True
                if nS > bound:
                    return -1
            ax = d - 1
            while ax >= 0:
                pos[ax] += 1
                if pos[ax] < sizes[ax]:
                    break
                pos[ax] = 0
                ax -= 1
            if ax < 0:
                break
        # every box line must see every box symbol
        for line_ax in range(d):
            pos[:] = 0
            while True:
                base = 0
                for ax in range(d):
                    if ax != line_ax:
                        base += lists[ax, pos[ax]] * strides[ax]
                for t in range(nS):
                    x = inv[line_ax, base + strides[line_ax] * Sl[t]]
                    if not inA[line_ax, x]:
                        inA[line_ax, x] = True
                        lists[line_ax, sizes[line_ax]] = x
                        sizes[line_ax] += 1
                        changed = True
                        if sizes[line_ax] > bound:
                            return -1
                ax = d - 1
                while ax >= 0:
                    if ax == line_ax:
                        ax -= 1
                        continue
                    pos[ax] += 1
                    if pos[ax] < sizes[ax]:
                        break
                    pos[ax] = 0
                    ax -= 1
                if ax < 0:
                    break
    return nS


@njit(cache=True)
def hyper_sweep_best(flat, inv, strides, n, d, bound):
    """Smallest proper subhypercube by (order, axis sets in order), or order -1."""
    inA = np.zeros((d, n), np.bool_)
    lists = np.zeros((d, n + 1), np.int64)
    sizes = np.zeros(d, np.int64)
    inS = np.zeros(n, np.bool_)
    Sl = np.zeros(n + 1, np.int64)
    seed = np.zeros(d + 1, np.int64)
    bk = -1
    best = np.zeros((d, n), np.int64)
    bS = np.zeros(n, np.int64)
    cur = bound
    rest = n ** (d - 1)
    for x1 in range(n):
        for x2 in range(x1 + 1, n):
            for m in range(rest):
                seed[0] = x1
                seed[1] = x2
                q = m
                for ax in range(d - 1, 0, -1):
                    seed[ax + 1] = q % n
                    q //= n
                k = _hyper_close(flat, inv, strides, n, d, seed, cur, inA, lists, sizes, inS, Sl)
                if k <= 0:
                    continue
                cand = np.zeros((d, n), np.int64)
                for ax in range(d):
                    cand[ax, :k] = np.sort(lists[ax, :k])
                better = bk < 0 or k < bk
                if not better and k == bk:
                    for ax in range(d):
                        done = False
                        for t in range(k):
                            if cand[ax, t] != best[ax, t]:
                                better = cand[ax, t] < best[ax, t]
                                done = True
                                break
                        if done:
                            break
                if better:
                    bk = k
                    best[:, :] = cand
                    bS[:k] = np.sort(Sl[:k])
                    cur = k
    return bk, best, bS


# ---------------------------------------------------------------------------
# Near copies with one overwritten cell ``(hr, hc)`` now holding ``sym`` in
# place of ``nat``.  When the box contains the hole every lookup is forced:
# ``nat`` has vanished from the hole's row and column, and ``sym`` must be met
# at the hole itself.


@njit(cache=True)
def _near_close(a, rinv, cinv, hr, hc, sym, nat, seed_r, seed_c, bound, inR, inC, inS, Rl, Cl, Sl, mark):
    nR = 0
    nC = 0
    nS = 0
    for r in seed_r:
        if not inR[r]:
            inR[r] = True
            Rl[nR] = r
            nR += 1
    for c in seed_c:
        if not inC[c]:
            inC[c] = True
            Cl[nC] = c
            nC += 1
    pR = 0
    pC = 0
    pS = 0
    ok = nR <= bound and nC <= bound
    while ok and (pR < nR or pC < nC or pS < nS):
        if pR < nR:
            r = Rl[pR]
            for t in range(pC):
                c = Cl[t]
                s = sym if (r == hr and c == hc) else a[r, c]
                if not inS[s]:
                    inS[s] = True
                    Sl[nS] = s
                    nS += 1
                    if nS > bound:
                        ok = False
                        break
            if not ok:
                break
            for t in range(pS):
                s = Sl[t]
                if r == hr and s == nat:
                    ok = False
                    break
                c = hc if (r == hr and s == sym) else rinv[r, s]
                if not inC[c]:
                    inC[c] = True
                    Cl[nC] = c
                    nC += 1
                    if nC > bound:
                        ok = False
                        break
            pR += 1
        elif pC < nC:
            c = Cl[pC]
            for t in range(pR):
                r = Rl[t]
                s = sym if (r == hr and c == hc) else a[r, c]
                if not inS[s]:
                    inS[s] = True
                    Sl[nS] = s
                    nS += 1
                    if nS > bound:
                        ok = False
                        break
            if not ok:
                break
            for t in range(pS):
                s = Sl[t]
                if c == hc and s == nat:
                    ok = False
                    break
                r = hr if (c == hc and s == sym) else cinv[c, s]
                if not inR[r]:
                    inR[r] = True
                    Rl[nR] = r
                    nR += 1
                    if nR > bound:
                        ok = False
                        break
            pC += 1
        else:
            s = Sl[pS]
            for t in range(pR):
                r = Rl[t]
                if r == hr and s == nat:
                    ok = False
                    break
                c = hc if (r == hr and s == sym) else rinv[r, s]
                if not inC[c]:
                    inC[c] = True
                    Cl[nC] = c
                    nC += 1
                    if nC > bound:
                        ok = False
                        break
            if not ok:
                break
            for t in range(pC):
                c = Cl[t]
                if c == hc and s == nat:
                    ok = False
                    break
                r = hr if (c == hc and s == sym) else cinv[c, s]
                if not inR[r]:
                    inR[r] = True
                    Rl[nR] = r
                    nR += 1
                    if nR > bound:
                        ok = False
                        break
            pS += 1
    if ok and not (nR == nC and nC == nS):
        ok = False
    if ok:
        # the doubled symbol may still repeat inside one row or column of the box
        for t in range(nR):
            r = Rl[t]
            for u in range(nC):
                c = Cl[u]
                s = sym if (r == hr and c == hc) else a[r, c]
                if mark[s] == t + 1:
                    ok = False
                mark[s] = t + 1
            for u in range(nC):
                mark[a[r, Cl[u]]] = 0
            mark[sym] = 0
        if ok:
            for u in range(nC):
                c = Cl[u]
                for t in range(nR):
                    r = Rl[t]
                    s = sym if (r == hr and c == hc) else a[r, c]
                    if mark[s] == u + 1:
                        ok = False
                    mark[s] = u + 1
                for t in range(nR):
                    mark[a[Rl[t], c]] = 0
                mark[sym] = 0
    for t in range(nR):
        inR[Rl[t]] = False
    for t in range(nC):
        inC[Cl[t]] = False
    for t in range(nS):
        inS[Sl[t]] = False
    if not ok:
        return -1
    return nR


@njit(cache=True)
def shift_sweep(a, rinv, cinv, s, bound):
    """Seeds ``(r, c, c2, order)`` whose closure is a subsquare through the hole.

    Covers every cell ``(r, c)`` of the near copy where the cell's symbol is
    raised by ``s`` (mod n).  An empty result means no such near copy has a
    subsquare of order 2..bound containing its hole.
    """
    n = a.shape[0]
    inR = np.zeros(n, np.bool_)
    inC = np.zeros(n, np.bool_)
    inS = np.zeros(n, np.bool_)
    Rl = np.zeros(n + 1, np.int64)
    Cl = np.zeros(n + 1, np.int64)
    Sl = np.zeros(n + 1, np.int64)
    mark = np.zeros(n, np.int64)
    seed_r = np.zeros(1, np.int64)
    seed_c = np.zeros(2, np.int64)
    out = [(0, 0, 0, 0)]
    out.pop()
    for r in range(n):
        for c in range(n):
            nat = a[r, c]
            sym = (nat + s) % n
            seed_r[0] = r
            seed_c[0] = c
            for c2 in range(n):
                if c2 == c:
                    continue
                seed_c[1] = c2
                k = _near_close(a, rinv, cinv, r, c, sym, nat, seed_r, seed_c, bound,
                                inR, inC, inS, Rl, Cl, Sl, mark)
                if k > 0:
                    out.append((r, c, c2, k))
    return out


# ---------------------------------------------------------------------------
# Tabu search over short cycle switches.  Moves swap two lines of one of three
# views (rows, columns, or symbol -> row -> column) on a single cycle of length
# at most n/2, giving row, column and symbol cycles.


@njit(cache=True)
def _to_view(a, kind, b):
    n = a.shape[0]
    for r in range(n):
        for c in range(n):
            if kind == 0:
                b[r, c] = a[r, c]
            elif kind == 1:
                b[c, r] = a[r, c]
            else:
                b[a[r, c], r] = c


@njit(cache=True)
def _from_view(b, kind, a):
    n = b.shape[0]
    for r in range(n):
        for c in range(n):
            if kind == 0:
                a[r, c] = b[r, c]
            elif kind == 1:
                a[c, r] = b[r, c]
            else:
                a[c, b[r, c]] = r


@njit(cache=True)
def _tables(a, rinv, cinv):
    n = a.shape[0]
    for r in range(n):
        for c in range(n):
            rinv[r, a[r, c]] = c
            cinv[c, a[r, c]] = r


@njit(cache=True)
def _cycle_cols(b, binv, i, j, c0, cols):
    length = 0
    x = c0
    while True:
        cols[length] = x
        length += 1
        x = binv[i, b[j, x]]
        if x == c0:
            break
    return length


@njit(cache=True)
def tabu_search(a0, steps, seed, tenure_lo, tenure_hi):
    """Steepest-descent tabu search on the weighted subsquare count.

    Returns ``(final square, steps used, best score seen)``; score 0 means the
    final square has no proper subsquare.
    """
    np.random.seed(seed)
    n = a0.shape[0]
    bound = n // 2
    a = a0.copy()
    rinv = np.empty_like(a)
    cinv = np.empty_like(a)
    _tables(a, rinv, cinv)
    score = subsquare_score(a, rinv, cinv, bound)
    best_seen = score
    tabu = np.zeros((3, n, n, n), np.int64)
    b = np.empty_like(a)
    binv = np.empty_like(a)
    trial = np.empty_like(a)
    tr = np.empty_like(a)
    tc = np.empty_like(a)
    cols = np.empty(n, np.int64)
    seen = np.zeros(n, np.bool_)
    for step in range(steps):
        if score == 0:
            return a, step, best_seen
        best = -1
        ties = 0
        bk = 0
        bi = 0
        bj = 0
        bc = 0
        for kind in range(3):
            _to_view(a, kind, b)
            for r in range(n):
                for c in range(n):
                    binv[r, b[r, c]] = c
            for i in range(n):
                for j in range(i + 1, n):
                    seen[:] = False
                    for c0 in range(n):
                        if seen[c0]:
                            continue
                        length = _cycle_cols(b, binv, i, j, c0, cols)
                        for t in range(length):
                            seen[cols[t]] = True
                        if length > bound or length == n:
                            continue
                        for t in range(length):
                            x = cols[t]
                            v = b[i, x]
                            b[i, x] = b[j, x]
                            b[j, x] = v
                        _from_view(b, kind, trial)
                        for t in range(length):
                            x = cols[t]
                            v = b[i, x]
                            b[i, x] = b[j, x]
                            b[j, x] = v
                        _tables(trial, tr, tc)
                        s = subsquare_score(trial, tr, tc, bound)
                        if tabu[kind, i, j, c0] > step and s >= best_seen:
                            continue
                        if best < 0 or s < best:
                            best = s
                            ties = 1
                            bk, bi, bj, bc = kind, i, j, c0
                        elif s == best:
                            ties += 1
                            if np.random.randint(0, ties) == 0:
                                bk, bi, bj, bc = kind, i, j, c0
        if best < 0:
            continue
        _to_view(a, bk, b)
        for r in range(n):
            for c in range(n):
                binv[r, b[r, c]] = c
        length = _cycle_cols(b, binv, bi, bj, bc, cols)
        # key the tabu entry on the smallest column so every rotation matches
        key = bc
        for t in range(length):
            x = cols[t]
            if x < key:
                key = x
            v = b[bi, x]
            b[bi, x] = b[bj, x]
            b[bj, x] = v
        _from_view(b, bk, a)
        _tables(a, rinv, cinv)
        score = best
        if score < best_seen:
            best_seen = score
        tabu[bk, bi, bj, key] = step + np.random.randint(tenure_lo, tenure_hi + 1)
    return a, steps, best_seen


# ---------------------------------------------------------------------------
# Jacobson-Matthews random walk on the incidence cube of a Latin square.


@njit(cache=True)
def _jm_pick(cube, n, fixed_a, fixed_b, axis, want_two):
    """Indices t along ``axis`` with cube value 1 on the line through the two fixed coords."""
    first = -1
    second = -1
    for t in range(n):
        if axis == 0:
            v = cube[t, fixed_a, fixed_b]
        elif axis == 1:
            v = cube[fixed_a, t, fixed_b]
        else:
            v = cube[fixed_a, fixed_b, t]
        if v == 1:
            if first < 0:
                first = t
            else:
                second = t
                break
    if want_two and np.random.randint(0, 2) == 1:
        return second
    return first


@njit(cache=True)
def jacobson_matthews(a, steps, seed):
    np.random.seed(seed)
    n = a.shape[0]
    cube = np.zeros((n, n, n), np.int8)
    for r in range(n):
        for c in range(n):
            cube[r, c, a[r, c]] = 1
    improper = False
    ir = ic = isym = 0
    t = 0
    while t < steps or improper:
        if improper:
            r, c, s = ir, ic, isym
        else:
            while True:
                r = np.random.randint(0, n)
                c = np.random.randint(0, n)
                s = np.random.randint(0, n)
                if cube[r, c, s] == 0:
                    break
        r2 = _jm_pick(cube, n, c, s, 0, improper)
        c2 = _jm_pick(cube, n, r, s, 1, improper)
        s2 = _jm_pick(cube, n, r, c, 2, improper)
        cube[r, c, s] += 1
        cube[r, c2, s2] += 1
        cube[r2, c, s2] += 1
        cube[r2, c2, s] += 1
        cube[r2, c, s] -= 1
        cube[r, c2, s] -= 1
        cube[r, c, s2] -= 1
        cube[r2, c2, s2] -= 1
        if cube[r2, c2, s2] < 0:
            improper = True
            ir, ic, isym = r2, c2, s2
        else:
            improper = False
        t += 1
    out = np.empty((n, n), np.int64)
    for r in range(n):
        for c in range(n):
            for s in range(n):
                if cube[r, c, s] == 1:
                    out[r, c] = s
    return out
