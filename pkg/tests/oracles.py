"""Brute-force reference computations, deliberately independent of the library code paths.

Nothing here imports the set cover engine, the simplex solver or the
bisection routines.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import mpmath


def subsets_of(mask):
    return [s for s in range(mask + 1) if s & mask == s]


def brute_upset(n, generators):
    """Closure by repeatedly adding single elements until nothing changes."""
    members = set(generators)
    frontier = list(members)
    while frontier:
        nxt = []
        for A in frontier:
            for i in range(n):
                B = A | 1 << i
                if B not in members:
                    members.add(B)
                    nxt.append(B)
        frontier = nxt
    return members


def brute_prob(n, generators, p):
    p = Fraction(p)
    members = brute_upset(n, generators)
    return sum((p ** bin(A).count("1") * (1 - p) ** (n - bin(A).count("1")) for A in members), Fraction(0))


def brute_pc(n, generators, dps=40):
    """High-precision bisection of P(p) = 1/2 with mpmath."""
    mpmath.mp.dps = dps
    members = brute_upset(n, generators)

    def f(p):
        return sum(p ** bin(A).count("1") * (1 - p) ** (n - bin(A).count("1")) for A in members) - mpmath.mpf(1) / 2

    lo, hi = mpmath.mpf(0), mpmath.mpf(1)
    for _ in range(dps * 4):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo


def cover_cost(G, q):
    q = Fraction(q)
    return sum((q ** bin(S).count("1") for S in G), Fraction(0))


def covers(G, generators):
    return all(any(S & M == S for S in G) for M in generators)


def brute_min_cost_assign(generators, q):
    """Minimum q-cost by letting each generator pick one nonempty subset of itself.

    Every irredundant cover arises this way and every such choice is a cover.
    Picking the empty set for one generator gives the cover {empty set}.
    """
    options = [subsets_of(M) for M in generators]
    best = None
    for pick in product(*options):
        c = cover_cost(set(pick), q)
        if best is None or c < best:
            best = c
    return best


def brute_min_cost_subsets(generators, q):
    """Minimum q-cost over every subset of the candidate pool."""
    pool = sorted({s for M in generators for s in subsets_of(M)})
    best = None
    for r in range(1, len(pool) + 1):
        for G in combinations(pool, r):
            if covers(G, generators):
                c = cover_cost(G, q)
                if best is None or c < best:
                    best = c
    return best


def brute_all_optimal(generators, q, pool):
    """Every minimum-cost subset of ``pool`` that covers, by exhaustive enumeration."""
    best, found = None, []
    for r in range(1, len(pool) + 1):
        for G in combinations(pool, r):
            if covers(G, generators):
                c = cover_cost(G, q)
                if best is None or c < best:
                    best, found = c, [frozenset(G)]
                elif c == best:
                    found.append(frozenset(G))
    return best, found


def _solve(M, rhs):
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(M, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] / A[i][i] for i in range(n)]


def lp_vertex_value(generators, q):
    """Covering LP optimum via enumeration of the vertices of the dual polytope.

    Dual: maximise sum(y) subject to sum_{i: S <= M_i} y_i <= q**|S| for every
    candidate S and y >= 0.  The polytope is bounded and contains 0, so the
    maximum is attained at a vertex; strong duality gives the primal value.
    """
    q = Fraction(q)
    m = len(generators)
    pool = sorted({s for M in generators for s in subsets_of(M)})
    rows = [([1 if S & M == S else 0 for M in generators], q ** bin(S).count("1")) for S in pool]
    rows += [([-1 if j == i else 0 for j in range(m)], Fraction(0)) for i in range(m)]
    best = None
    for idx in combinations(range(len(rows)), m):
        y = _solve([rows[i][0] for i in idx], [rows[i][1] for i in idx])
        if y is None:
            continue
        if all(sum(a * v for a, v in zip(coef, y)) <= b for coef, b in rows):
            val = sum(y)
            if best is None or val > best:
                best = val
    return best


def venn_families(max_generators=3, max_size=3):
    """All families with at most ``max_generators`` generators of size at most ``max_size``,
    one per isomorphism type of labelled Venn-region sizes.

    Returns ``(n, generators)`` pairs over ground ``0..n-1``; only antichains.
    """
    out = []
    for m in range(1, max_generators + 1):
        regions = [r for r in range(1, 1 << m)]
        ranges = [range(0, max_size + 1)] * len(regions)
        for sizes in product(*ranges):
            gen_sizes = [sum(s for r, s in zip(regions, sizes) if r >> i & 1) for i in range(m)]
            if not all(1 <= g <= max_size for g in gen_sizes):
                continue
            gens = [0] * m
            nxt = 0
            for r, s in zip(regions, sizes):
                for _ in range(s):
                    for i in range(m):
                        if r >> i & 1:
                            gens[i] |= 1 << nxt
                    nxt += 1
            if len(set(gens)) < m:
                continue
            if any(a != b and a & b == a for a in gens for b in gens):
                continue
            out.append((nxt, gens))
    return out


def pareto_cover_profiles(generators):
    """Size profiles (c0, c1, c2, ...) of every covering subset of the candidate pool.

    Walks all 2**|pool| subsets with numpy; a subset is recorded by how many
    members of each size it has, since the q-cost depends on nothing else.
    """
    import numpy as np

    pool = sorted({s for M in generators for s in subsets_of(M)})
    P = len(pool)
    top = max(bin(S).count("1") for S in pool) + 1
    ids = np.arange(1, 1 << P, dtype=np.int64)
    ok = np.ones(ids.shape, dtype=bool)
    for M in generators:
        below = sum(1 << j for j, S in enumerate(pool) if S & M == S)
        ok &= (ids & below) != 0
    ids = ids[ok]
    prof = np.zeros((ids.size, top), dtype=np.int64)
    for j, S in enumerate(pool):
        prof[:, bin(S).count("1")] += (ids >> j) & 1
    return [tuple(int(c) for c in row) for row in np.unique(prof, axis=0)]


def min_cost_from_profiles(profiles, q):
    q = Fraction(q)
    return min(sum((c * q**i for i, c in enumerate(p)), Fraction(0)) for p in profiles)
