"""Exact evaluation of P(X_p in F) and rational enclosures of the threshold p_c."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any

from .errors import InvalidProbability
from .polynomial import MonotoneRoot, Poly, peval, poly, psub
from .setsystem import Family, size_profile, union_size_terms, _check_strategy

HALF = Fraction(1, 2)
DEFAULT_WIDTH = Fraction(1, 2**20)


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(str(s))


def check_probability(p) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise InvalidProbability(f"{p} is not in [0, 1]")
    return p


@dataclass(frozen=True)
class Enclosure:
    """Exact rational interval containing PC, QC or QF, plus endpoint evidence."""

    lo: Fraction
    hi: Fraction
    kind: str
    certificates: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not 0 <= self.lo <= self.hi <= 1:
            raise ValueError(f"bad enclosure [{self.lo}, {self.hi}]")
        if self.kind not in ("PC", "QC", "QF"):
            raise ValueError(f"unknown enclosure kind {self.kind!r}")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def scaled(self, factor) -> tuple[Fraction, Fraction]:
        return self.lo * factor, self.hi * factor

    def to_json(self) -> dict:
        return {"kind": self.kind, "lo": frac_str(self.lo), "hi": frac_str(self.hi)}

    def approx(self) -> str:
        if self.is_point:
            return f"{self.lo} (exact)"
        return f"~{float((self.lo + self.hi) / 2):.6g} in [{float(self.lo):.6g}, {float(self.hi):.6g}]"


def probability_polynomial(F: Family, strategy: str = "auto") -> Poly:
    """P(X_p in F) as a polynomial in p with integer coefficients."""
    # resolve the strategy outside the cache so a lowered cap is always honoured
    return _probability_polynomial(F, _check_strategy(F, strategy))


@lru_cache(maxsize=1024)
def _probability_polynomial(F: Family, strategy: str) -> Poly:
    n = F.n
    if strategy == "inclusion_exclusion":
        coeffs = [0] * (n + 1)
        for u, sign in union_size_terms(F).items():
            coeffs[u] += sign
        return poly(coeffs)
    counts = size_profile(F, "enumerate")
    coeffs = [0] * (n + 1)
    for j, c in enumerate(counts):
        if not c:
            continue
        # c * p^j * (1-p)^(n-j)
        for i in range(n - j + 1):
            coeffs[j + i] += c * comb(n - j, i) * (-1) ** i
    return poly(coeffs)


def prob_in_family(F: Family, p, strategy: str = "auto") -> Fraction:
    p = check_probability(p)
    return peval(probability_polynomial(F, strategy), p)


def _bisect(predicate_value, width: Fraction):
    """Dyadic bisection on [0, 1] for an increasing function crossing 1/2.

    ``predicate_value(x)`` returns the exact function value at ``x``.  Returns
    ``(lo, hi, value_lo, value_hi)`` with ``value_lo <= 1/2 < value_hi`` or
    ``lo == hi`` on an exact hit.
    """
    lo, hi = Fraction(0), Fraction(1)
    vlo, vhi = predicate_value(lo), predicate_value(hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = predicate_value(mid)
        if v == HALF:
            return mid, mid, v, v
        if v < HALF:
            lo, vlo = mid, v
        else:
            hi, vhi = mid, v
    return lo, hi, vlo, vhi


def p_c(F: Family, width=DEFAULT_WIDTH) -> Enclosure:
    """Enclose the unique p with P(X_p in F) = 1/2."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    P = probability_polynomial(F)
    lo, hi, vlo, vhi = _bisect(lambda x: peval(P, x), width)
    enc = Enclosure(lo, hi, "PC", {"prob_lo": vlo, "prob_hi": vhi})
    if not enc.is_point:
        root = pc_root(F, enc).exact()
        if root.is_point:
            enc = Enclosure(root.lo, root.lo, "PC", {"prob_lo": HALF, "prob_hi": HALF})
    return enc


def pc_root(F: Family, enc: Enclosure) -> MonotoneRoot:
    """p_c as an exact algebraic number: root of P(p) - 1/2 isolated by ``enc``."""
    return MonotoneRoot(psub(probability_polynomial(F), poly([HALF])), enc.lo, enc.hi)
