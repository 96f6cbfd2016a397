"""Minimum-cost covers, the expectation threshold q_c and its fractional version q_f.

A cover of ``F`` is a collection of subsets such that every member of ``F``
contains one of them.  Since ``F`` is increasing it is enough that every
generator contains one, and a member lying below no generator covers nothing,
so all searches run over the *candidate pool*: subsets of generators.  The
empty set is in the pool; it covers everything at cost 1.  Costs at
``q = a/b`` are scaled by ``2 * b**L`` (``L`` the largest candidate size) so
the set cover engine works on integers and the cheapness threshold 1/2
becomes ``b**L``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ForeignElement, GroundMismatch, InvalidProbability, LimitExceeded, NotSymmetric
from .lp import LPResult, basic_solution_polys, solve_covering_lp
from .polynomial import MonotoneRoot, max_root, nonnegative_on, poly
from .setcover import SetCoverSearch
from .setsystem import Family, Mask, canonical, mask_key, popcount, submasks
from .threshold import DEFAULT_WIDTH, HALF, Enclosure, check_probability

Cover = tuple  # canonical tuple of masks
FractionalCover = dict  # mask -> Fraction, support only

DEFAULT_LIMIT = 10_000
LP_BOUND_POOL = 64
GROUP_ORDER_CAP = 100_000


def make_cover(members: Iterable[Mask]) -> Cover:
    return canonical(members)


def cover_key(G: Cover):
    return (len(G), tuple(mask_key(S) for S in G))


def cost(G: Iterable[Mask], q) -> Fraction:
    q = check_probability(q)
    return sum((q ** popcount(S) for S in G), Fraction(0))


def fractional_cost(w: FractionalCover, q) -> Fraction:
    q = check_probability(q)
    return sum((x * q ** popcount(S) for S, x in w.items()), Fraction(0))


def is_cover(G: Iterable[Mask], F: Family) -> bool:
    G = list(G)
    for S in G:
        try:
            F.ground.check(S)
        except ForeignElement:
            raise GroundMismatch(f"cover member {S:#b} is not over the family's ground set") from None
    return all(any(S & M == S for S in G) for M in F.generators)


def is_fractional_cover(w: FractionalCover, F: Family) -> bool:
    if any(x < 0 for x in w.values()):
        return False
    return all(sum((x for S, x in w.items() if S & M == S), Fraction(0)) >= 1 for M in F.generators)


@lru_cache(maxsize=256)
def candidate_pool(F: Family) -> tuple[Mask, ...]:
    """All subsets of generators (the empty set included), canonically ordered."""
    pool = set()
    for M in F.generators:
        pool.update(submasks(M))
    return canonical(pool)


def _coverage(F: Family, pool: Sequence[Mask]) -> list[int]:
    gens = F.generators
    out = []
    for S in pool:
        c = 0
        for i, M in enumerate(gens):
            if S & M == S:
                c |= 1 << i
        out.append(c)
    return out


def _check_open_q(q) -> Fraction:
    q = Fraction(q)
    if not 0 < q < 1:
        raise InvalidProbability(f"q = {q} must lie strictly between 0 and 1")
    return q


class _Instance:
    """Set cover instance for one family at one q."""

    def __init__(self, F: Family, q: Fraction, pool: Sequence[Mask] | None = None,
                 groups: Sequence[Sequence[Mask]] | None = None):
        self.F = F
        self.q = q
        if groups is None:
            pool = candidate_pool(F) if pool is None else pool
            groups = [(S,) for S in pool]
        self.groups = [tuple(g) for g in groups]
        cov_single = dict(zip(candidate_pool(F), _coverage(F, candidate_pool(F))))
        covers = []
        for g in self.groups:
            c = 0
            for S in g:
                c |= cov_single[S] if S in cov_single else _coverage(F, [S])[0]
            covers.append(c)
        sizes = [popcount(S) for g in self.groups for S in g]
        L = max(sizes)
        a, b = q.numerator, q.denominator
        self.scale = 2 * b**L
        self.half = b**L
        self.costs = [sum(2 * a ** popcount(S) * b ** (L - popcount(S)) for S in g) for g in self.groups]
        self.search = SetCoverSearch(self.costs, covers, len(F.generators))

    def value(self, scaled: int) -> Fraction:
        return Fraction(scaled, self.scale)

    def members(self, choice: Sequence[int]) -> Cover:
        return make_cover(S for j in choice for S in self.groups[j])


def _lp_value(F: Family, q: Fraction) -> Fraction:
    return solve_fractional(F, q)[0].value


def min_cost_value(F: Family, q, target=None) -> tuple[Fraction, Cover] | None:
    """Exact minimum q-cost with one optimal cover.

    With ``target`` the search only looks for covers of cost ``<= target`` and
    returns ``None`` when exhaustive search proves there are none.
    """
    q = _check_open_q(q)
    inst = _Instance(F, q)
    scaled_target = None
    if target is not None:
        target = Fraction(target)
        if len(candidate_pool(F)) <= LP_BOUND_POOL and _lp_value(F, q) > target:
            return None
        # cost <= target  <=>  scaled cost <= floor(target * scale)
        scaled_target = (target * inst.scale).__floor__()
    res = inst.search.minimize(scaled_target)
    if res is None:
        return None
    val, choice = res
    return inst.value(val), inst.members(choice)


def min_cost_cover(F: Family, q, limit: int = DEFAULT_LIMIT) -> tuple[Cover, Fraction]:
    """A q-cheapest cover: fewest members, then canonical order, among all optima."""
    val, G = min_cost_value(F, q)
    try:
        optima = enumerate_cheapest_covers(F, q, limit)
    except LimitExceeded as exc:
        optima = exc.partial
    if optima:
        G = optima[0]
    return G, val


def enumerate_cheapest_covers(F: Family, q, limit: int = DEFAULT_LIMIT) -> list[Cover]:
    """All optimal covers at q in canonical order; raises LimitExceeded past ``limit``."""
    q = _check_open_q(q)
    if limit < 1:
        raise ValueError("limit must be at least 1")
    inst = _Instance(F, q)
    best, _ = inst.search.minimize()
    found, complete = inst.search.enumerate_within(best, max_results=limit)
    covers = sorted((inst.members(ch) for c, ch in found if c == best), key=cover_key)
    if not complete:
        raise LimitExceeded(f"more than {limit} cheapest covers", covers)
    return covers


def enumerate_cheap_covers(F: Family, q, threshold=HALF, limit: int = DEFAULT_LIMIT) -> list[Cover]:
    """All irredundant covers with q-cost at most ``threshold``."""
    q = _check_open_q(q)
    inst = _Instance(F, q)
    found, complete = inst.search.enumerate_within((Fraction(threshold) * inst.scale).__floor__(),
                                                   max_results=limit)
    covers = sorted((inst.members(ch) for _, ch in found), key=cover_key)
    if not complete:
        raise LimitExceeded(f"more than {limit} cheap covers", covers)
    return covers


@dataclass(frozen=True)
class QcCertificates:
    q_lo: Fraction
    cover_lo: Cover
    q_hi: Fraction
    min_cost_hi: Fraction

    def check(self, F: Family) -> bool:
        """Re-validate the lower certificate with cost and is_cover alone."""
        return is_cover(self.cover_lo, F) and cost(self.cover_lo, self.q_lo) <= HALF


def _full_cover(F: Family) -> Cover:
    return make_cover(F.generators)


def q_c(F: Family, width=DEFAULT_WIDTH) -> tuple[Enclosure, QcCertificates]:
    """Enclose q_c by bisection on "some cover has cost <= 1/2"."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    lo, hi = Fraction(0), Fraction(1)
    cover_lo = _full_cover(F)  # cost 0 at q = 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        res = min_cost_value(F, mid, target=HALF)
        if res is None:
            hi = mid
            continue
        val, G = res
        lo, cover_lo = mid, G
        if val == HALF:
            # every cover's cost is strictly increasing, so nothing is cheap above mid
            hi = mid
            break
    if lo != hi and lo > 0:
        # a rational but non-dyadic crossing still deserves a point enclosure
        try:
            root = qc_root(F, Enclosure(lo, hi, "QC")).exact()
        except LimitExceeded:
            root = None
        if root is not None and root.is_point:
            lo = hi = root.lo
            cover_lo = min_cost_value(F, lo, target=HALF)[1]
    if lo == hi:
        min_hi = HALF
    elif hi == 1:
        min_hi = _min_cardinality(F)
    else:
        min_hi = min_cost_value(F, hi)[0]
    certs = QcCertificates(lo, cover_lo, hi, min_hi)
    return Enclosure(lo, hi, "QC", {"lower": certs}), certs


def _min_cardinality(F: Family) -> Fraction:
    """Minimum 1-cost of a cover: every nonempty member costs 1 at q = 1."""
    pool = candidate_pool(F)
    search = SetCoverSearch([1] * len(pool), _coverage(F, pool), len(F.generators))
    return Fraction(search.minimize()[0])


def cover_polynomial(G: Iterable[Mask]):
    sizes = [popcount(S) for S in G]
    coeffs = [0] * (max(sizes, default=0) + 1)
    for s in sizes:
        coeffs[s] += 1
    return poly(coeffs)


def _minus_half(p):
    c = list(p) or [Fraction(0)]
    c[0] -= HALF
    return poly(c)


def qc_root(F: Family, enc: Enclosure, limit: int = DEFAULT_LIMIT) -> MonotoneRoot:
    """q_c as an exact algebraic number.

    q_c is the largest crossing point ``cost_x(G) = 1/2`` over irredundant
    covers G; only covers still cheap at ``enc.lo`` can attain it.
    """
    if enc.is_point:
        return MonotoneRoot.rational(enc.lo)
    if enc.lo == 0:
        raise ValueError("enclosure too wide to isolate q_c; refine it first")
    roots = [MonotoneRoot(_minus_half(cover_polynomial(G)), enc.lo, enc.hi)
             for G in enumerate_cheap_covers(F, enc.lo, HALF, limit)]
    return max_root(roots)


# fractional covers ---------------------------------------------------------

def _lp_matrix(F: Family):
    pool = candidate_pool(F)
    A = [[1 if S & M == S else 0 for S in pool] for M in F.generators]
    return pool, A


def solve_fractional(F: Family, q) -> tuple[LPResult, FractionalCover]:
    q = check_probability(q)
    pool, A = _lp_matrix(F)
    res = solve_covering_lp(A, [q ** popcount(S) for S in pool])
    w = {S: x for S, x in zip(pool, res.primal) if x}
    return res, w


def q_f(F: Family, width=DEFAULT_WIDTH) -> tuple[Enclosure, FractionalCover]:
    """Enclose q_f by bisection on "the covering LP optimum is <= 1/2"."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    lo, hi = Fraction(0), Fraction(1)
    w_lo: FractionalCover = {M: Fraction(1) for M in F.generators}
    while hi - lo > width:
        mid = (lo + hi) / 2
        res, w = solve_fractional(F, mid)
        if res.value > HALF:
            hi = mid
            continue
        lo, w_lo = mid, w
        if res.value == HALF:
            hi = mid
            break
    if lo != hi:
        root = qf_root(F, Enclosure(lo, hi, "QF"))
        root = root.exact() if root is not None else None
        if root is not None and root.is_point:
            lo = hi = root.lo
            w_lo = solve_fractional(F, lo)[1]
    return Enclosure(lo, hi, "QF", {"lower": (lo, w_lo)}), w_lo


def qf_root(F: Family, enc: Enclosure) -> MonotoneRoot | None:
    """q_f as an exact algebraic number, or ``None`` if no single LP basis spans ``enc``.

    The LP feasible region does not depend on q; a dual basis optimal on all
    of [lo, hi] makes the LP value equal to one fixed vertex's cost polynomial
    there, whose crossing with 1/2 is q_f.
    """
    if enc.is_point:
        return MonotoneRoot.rational(enc.lo)
    pool, A = _lp_matrix(F)
    degrees = [popcount(S) for S in pool]
    for q in (enc.lo, enc.hi):
        res, w = solve_fractional(F, q)
        polys = basic_solution_polys(A, degrees, res.basis)
        if all(nonnegative_on(p, enc.lo, enc.hi) for p in polys):
            coeffs = [Fraction(0)] * (max(degrees) + 1)
            for S, x in w.items():
                coeffs[popcount(S)] += x
            return MonotoneRoot(_minus_half(poly(coeffs)), enc.lo, enc.hi)
    return None


# symmetry ------------------------------------------------------------------

@dataclass(frozen=True)
class PermutationGroup:
    """Permutations of ground indices; ``perm[i]`` is the image of ``i``."""

    generators: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        for g in self.generators:
            if sorted(g) != list(range(self.n)):
                raise ValueError(f"{g} is not a permutation of 0..{self.n - 1}")

    @classmethod
    def trivial(cls, n: int) -> "PermutationGroup":
        return cls((), n)

    @classmethod
    def symmetric(cls, n: int) -> "PermutationGroup":
        if n < 2:
            return cls.trivial(n)
        swap = tuple([1, 0] + list(range(2, n)))
        cycle = tuple(list(range(1, n)) + [0])
        return cls((swap, cycle), n)

    def elements(self, cap: int = GROUP_ORDER_CAP) -> list[tuple[int, ...]]:
        ident = tuple(range(self.n))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.generators:
                    h = tuple(g[p[i]] for i in range(self.n))
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
                        if len(seen) > cap:
                            raise ValueError(f"group order exceeds cap {cap}")
            frontier = nxt
        return sorted(seen)

    @staticmethod
    def apply(perm: Sequence[int], mask: Mask) -> Mask:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << perm[i]
            mask >>= 1
            i += 1
        return out

    def orbit(self, mask: Mask) -> Cover:
        return make_cover(self.apply(p, mask) for p in self.elements())

    def stabilizes(self, F: Family) -> bool:
        gens = set(F.generators)
        return all({self.apply(g, M) for M in gens} == gens for g in self.generators)


def symmetric_cheapest_exists(F: Family, G: PermutationGroup, q) -> tuple[bool, Cover | None]:
    """Whether some q-cheapest cover of F is a union of G-orbits; returns a witness."""
    q = _check_open_q(q)
    if G.n != F.n:
        raise GroundMismatch("group acts on a ground set of a different size")
    if not G.stabilizes(F):
        raise NotSymmetric("the group does not map the family's generators to themselves")
    best, _ = min_cost_value(F, q)
    orbits = sorted({G.orbit(S) for S in candidate_pool(F)}, key=cover_key)
    inst = _Instance(F, q, groups=orbits)
    res = inst.search.minimize((best * inst.scale).__floor__())
    if res is None:
        return False, None
    return True, inst.members(res[1])
