"""The k-cloning transform: replace each ground element x by copies (x, 1..k).

Cloned index of copy ``i`` (0-based) of base element ``x`` is ``x*k + i``, so
each fibre ``{x} x [k]`` is a contiguous block of ``k`` bits and the
projection is ``index // k``.

The minimal members of the cloned family are exactly the minimal pre-images
of the base generators: a minimal pre-image of one generator cannot lie
inside a pre-image of another, because projections preserve inclusion and the
base generators form an antichain.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .cover import Cover, cost, is_cover, make_cover
from .errors import CapExceeded, DuplicateInFibre, FibreError, NotACover, ProbabilityOverflow
from .setsystem import Family, GroundSet, Mask, bits, canonical, mask_key, popcount

GENERATOR_CAP = 200_000
EXHAUSTIVE_SELECTION_CAP = 8**8

CopySelection = tuple  # cloned index chosen in each fibre, ordered by base element


def clone_label(label: str, i: int, k: int) -> str:
    if k <= len(string.ascii_lowercase):
        return f"{label}{string.ascii_lowercase[i]}"
    return f"{label}#{i + 1}"


@dataclass(frozen=True)
class CloneMap:
    base: GroundSet
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise FibreError(f"k must be a positive integer, got {self.k!r}")

    @property
    def cloned(self) -> GroundSet:
        return GroundSet(tuple(clone_label(x, i, self.k) for x in self.base.labels for i in range(self.k)))

    def index(self, x: int, i: int) -> int:
        return x * self.k + i

    def fibre(self, x: int) -> Mask:
        return ((1 << self.k) - 1) << (x * self.k)

    def project_index(self, j: int) -> int:
        return j // self.k

    def project(self, S: Mask) -> Mask:
        out = 0
        for j in bits(S):
            out |= 1 << (j // self.k)
        return out

    def duplicate_free(self, S: Mask) -> bool:
        return popcount(self.project(S)) == popcount(S)

    def to_json(self) -> dict:
        return {"base": list(self.base.labels), "k": self.k}


def psi(S: Mask, cm: CloneMap) -> list[Mask]:
    """Minimal pre-images of S: one copy chosen per element, ``k**|S|`` of them."""
    cm.base.check(S)
    choices = [[1 << cm.index(x, i) for i in range(cm.k)] for x in bits(S)]
    return sorted((sum(c) for c in product(*choices)), key=mask_key)


def clone_family(F: Family, k: int) -> tuple[Family, CloneMap]:
    cm = CloneMap(F.ground, k)
    total = sum(k ** popcount(M) for M in F.generators)
    if total > GENERATOR_CAP:
        raise CapExceeded(f"cloned family would have {total} generators (cap {GENERATOR_CAP})")
    gens = canonical(T for M in F.generators for T in psi(M, cm))
    return Family(cm.cloned, gens), cm


def project_cover(H: Iterable[Mask], cm: CloneMap) -> Cover:
    out = []
    for S in H:
        if not cm.duplicate_free(S):
            raise DuplicateInFibre(f"member {S:#b} has two copies of one element")
        out.append(cm.project(S))
    return make_cover(out)


def clone_cover(G: Iterable[Mask], cm: CloneMap) -> Cover:
    G = list(G)
    total = sum(cm.k ** popcount(S) for S in G)
    if total > GENERATOR_CAP:
        raise CapExceeded(f"cloned cover would have {total} members (cap {GENERATOR_CAP})")
    return make_cover(T for S in G for T in psi(S, cm))


def is_cloned_cover(H: Iterable[Mask], cm: CloneMap) -> Cover | None:
    """The base cover G with ``clone_cover(G) == H``, if there is one."""
    H = set(H)
    if not all(cm.duplicate_free(S) for S in H):
        return None
    G = make_cover(cm.project(S) for S in H)
    if sum(cm.k ** popcount(S) for S in G) != len(H):
        return None
    return G if set(clone_cover(G, cm)) == H else None


def _selection_mask(sel: Sequence[int]) -> Mask:
    return sum(1 << j for j in sel)


def restricted_cost(H: Sequence[Mask], sel: Sequence[int], r: Fraction) -> Fraction:
    """r-cost of the members of H that lie inside the copy ``X'`` chosen by ``sel``."""
    X = _selection_mask(sel)
    return sum((r ** popcount(S) for S in H if S & X == S), Fraction(0))


def _exhaustive_selection(H, cm: CloneMap, r: Fraction) -> CopySelection:
    n, k = cm.base.n, cm.k
    if k**n > EXHAUSTIVE_SELECTION_CAP:
        raise CapExceeded(f"{k}**{n} copy selections exceed the exhaustive cap")
    best = None
    for choice in product(range(k), repeat=n):
        sel = tuple(cm.index(x, i) for x, i in enumerate(choice))
        c = restricted_cost(H, sel, r)
        if best is None or c < best[0]:
            best = (c, sel)
    return best[1]


def _derandomized_selection(H, cm: CloneMap, q: Fraction) -> CopySelection:
    """Method of conditional expectations over a uniformly random copy of X.

    With copies fixed in the first fibres, a duplicate-free member S survives
    with probability ``k**-u`` (``u`` = its elements in unfixed fibres) if it
    agrees with the fixed choices, so the conditional expectation of the
    kq-cost is a finite exact sum.  Picking the minimising copy fibre by fibre
    never increases it, and it starts at ``sum q**|S| <= cost_q(H)``.
    """
    n, k = cm.base.n, cm.k
    r = k * q
    members = [S for S in H if cm.duplicate_free(S)]
    fixed = 0        # union of chosen copies so far
    fixed_fibres = 0
    sel = []
    for x in range(n):
        best = None
        for i in range(k):
            f = fixed | 1 << cm.index(x, i)
            ff = fixed_fibres | cm.fibre(x)
            e = Fraction(0)
            for S in members:
                inside = S & ff
                if inside & f != inside:
                    continue
                u = popcount(S & ~ff)
                e += r ** popcount(S) / k**u
            if best is None or e < best[0]:
                best = (e, i)
        sel.append(cm.index(x, best[1]))
        fixed |= 1 << sel[-1]
        fixed_fibres |= cm.fibre(x)
    return tuple(sel)


def extract_base_cover(H: Iterable[Mask], F: Family, cm: CloneMap, q,
                       method: str = "derandomized") -> tuple[Cover, CopySelection]:
    """From a cover H of the k-clone, a cover of F with kq-cost at most cost_q(H)."""
    H = list(make_cover(H))
    q = Fraction(q)
    if not 0 <= cm.k * q <= 1:
        raise ProbabilityOverflow(f"k*q = {cm.k * q} is not a probability")
    Fk, _ = clone_family(F, cm.k)
    if not is_cover(H, Fk):
        raise NotACover("H does not cover the cloned family")
    if method == "derandomized":
        sel = _derandomized_selection(H, cm, q)
    elif method == "exhaustive":
        sel = _exhaustive_selection(H, cm, cm.k * q)
    else:
        raise ValueError(f"unknown method {method!r}")
    X = _selection_mask(sel)
    G = project_cover([S for S in H if S & X == S], cm)
    return G, sel


def extraction_holds(G: Cover, F: Family, H: Iterable[Mask], k: int, q) -> bool:
    """Postcondition of extract_base_cover, checked with cost and is_cover only."""
    return is_cover(G, F) and cost(G, k * Fraction(q)) <= cost(H, q)
