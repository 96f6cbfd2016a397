"""Increasing families over a finite ground set, stored by their minimal elements.

Subsets are plain ``int`` bitmasks: bit ``i`` set means ground element ``i``
is present.  A :class:`Family` keeps its generators (the minimal members) as a
canonically ordered antichain, so two families are equal iff they generate the
same up-set over the same labelled ground set.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, EmptyInput, ForeignElement, InputError, TrivialFamily

DEFAULT_ENUM_CAP = 24
ENUM_CAP_ENV = "THRESHKIT_ENUM_CAP"

Mask = int


def enum_cap() -> int:
    """Enumeration cap, overridable through ``THRESHKIT_ENUM_CAP``."""
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{ENUM_CAP_ENV}={raw!r} is not an integer") from None


def popcount(mask: Mask) -> int:
    return mask.bit_count()


def bits(mask: Mask) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(indices: Iterable[int]) -> Mask:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def mask_key(mask: Mask) -> tuple[int, tuple[int, ...]]:
    """Canonical order: by size, then lexicographically on the sorted indices."""
    return (popcount(mask), bits(mask))


def canonical(masks: Iterable[Mask]) -> tuple[Mask, ...]:
    return tuple(sorted(set(masks), key=mask_key))


def submasks(mask: Mask) -> list[Mask]:
    """All subsets of ``mask`` (including 0 and ``mask`` itself)."""
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return out


@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise EmptyInput("ground set must have at least one element")
        if len(set(labels)) != len(labels):
            raise InputError(f"ground labels are not distinct: {list(labels)}")

    @classmethod
    def range(cls, n: int) -> "GroundSet":
        """Ground set labelled ``1..n``."""
        return cls(tuple(str(i) for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> Mask:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ForeignElement(f"label {label!r} is not in the ground set") from None

    def mask(self, labels: Iterable) -> Mask:
        return mask_of(self.index(x) for x in labels)

    def names(self, mask: Mask) -> list[str]:
        self.check(mask)
        return [self.labels[i] for i in bits(mask)]

    def check(self, mask: Mask) -> None:
        if mask < 0 or mask >> self.n:
            raise ForeignElement(f"mask {mask:#b} uses indices outside a ground set of size {self.n}")

    def render(self, mask: Mask) -> str:
        return "{" + ",".join(self.names(mask)) + "}"


@dataclass(frozen=True)
class Family:
    """A non-trivial increasing family, given by its antichain of minimal elements."""

    ground: GroundSet
    generators: tuple[Mask, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise EmptyInput("a family needs at least one generator")
        for g in gens:
            self.ground.check(g)
            if g == 0:
                raise TrivialFamily("the empty set generates the whole power set")
        if gens != canonical(gens):
            raise InputError("generators are not in canonical order; use normalize()")
        for a in gens:
            for b in gens:
                if a != b and a & b == a:
                    raise InputError("generators are not an antichain; use normalize()")
        object.__setattr__(self, "generators", gens)

    @property
    def n(self) -> int:
        return self.ground.n

    def __str__(self) -> str:
        return "<" + ",".join(self.ground.render(g) for g in self.generators) + ">"


def normalize(raw_generators: Iterable[Mask], ground: GroundSet) -> Family:
    """Reduce ``raw_generators`` to their inclusion-minimal members, canonically sorted."""
    raw = set(raw_generators)
    if not raw:
        raise EmptyInput("no generators given")
    for g in raw:
        ground.check(g)
    if 0 in raw:
        raise TrivialFamily("the empty set generates the whole power set")
    minimal = [g for g in raw if not any(h != g and h & g == h for h in raw)]
    return Family(ground, canonical(minimal))


def family_from_labels(ground: Sequence, generators: Iterable[Iterable]) -> Family:
    gs = GroundSet(tuple(ground))
    return normalize([gs.mask(gen) for gen in generators], gs)


def contains(F: Family, A: Mask) -> bool:
    F.ground.check(A)
    return any(g & A == g for g in F.generators)


def largest_minimal_size(F: Family) -> int:
    return max(popcount(g) for g in F.generators)


def _check_strategy(F: Family, strategy: str) -> str:
    cap = enum_cap()
    m = len(F.generators)
    if strategy == "auto":
        strategy = "enumerate" if F.n <= m else "inclusion_exclusion"
    if strategy == "enumerate":
        if F.n > cap:
            raise CapExceeded(f"ground set of size {F.n} exceeds enumeration cap {cap}")
    elif strategy == "inclusion_exclusion":
        if m > cap:
            raise CapExceeded(f"{m} generators exceed inclusion-exclusion cap {cap}")
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return strategy


def upset_indicator(F: Family) -> np.ndarray:
    """Boolean array over all ``2**n`` subsets marking members of ``F``."""
    n = F.n
    if n > enum_cap():
        raise CapExceeded(f"ground set of size {n} exceeds enumeration cap {enum_cap()}")
    ind = np.zeros(1 << n, dtype=bool)
    ind[list(F.generators)] = True
    for i in range(n):
        view = ind.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    return ind


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.uint8)
    for i in range(n):
        view = pc.reshape(-1, 2, 1 << i)
        view[:, 1, :] += 1
    return pc


def union_size_terms(F: Family) -> Counter:
    """Signed inclusion-exclusion terms: ``{|union of T|: sum of (-1)**(|T|+1)}`` over nonempty T."""
    gens = F.generators
    m = len(gens)
    terms: Counter = Counter()
    unions = [0] * (1 << m)
    sizes = [0] * (1 << m)
    for t in range(1, 1 << m):
        low = t & -t
        j = low.bit_length() - 1
        rest = t ^ low
        unions[t] = unions[rest] | gens[j]
        sizes[t] = sizes[rest] + 1
        terms[popcount(unions[t])] += 1 if sizes[t] % 2 else -1
    return terms


def size_profile(F: Family, strategy: str = "auto") -> list[int]:
    """``counts[j]`` = number of members of ``F`` of size ``j``, for ``j = 0..n``."""
    from math import comb

    strategy = _check_strategy(F, strategy)
    n = F.n
    if strategy == "enumerate":
        ind = upset_indicator(F)
        counts = np.bincount(_popcounts(n)[ind], minlength=n + 1)
        return [int(c) for c in counts]
    counts = [0] * (n + 1)
    for u, sign in union_size_terms(F).items():
        for j in range(u, n + 1):
            counts[j] += sign * comb(n - u, j - u)
    return counts


def member_count(F: Family, strategy: str = "auto") -> int:
    return sum(size_profile(F, strategy))
