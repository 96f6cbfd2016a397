"""Dense univariate polynomials over the rationals and isolated roots in [0, 1].

Polynomials are tuples of :class:`~fractions.Fraction` coefficients in
ascending degree order, with trailing zeros stripped (the zero polynomial is
``()``).

:class:`MonotoneRoot` represents the unique root of a polynomial that is
strictly increasing on [0, 1], together with a rational isolating interval.
Every threshold-type quantity in this package (p_c, q_c, q_f, 2**(-1/l)) has
that shape, which is what lets :func:`compare_roots` decide ties exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Poly = tuple


def poly(coeffs: Sequence) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def peval(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def psub(p: Poly, q: Poly) -> Poly:
    return padd(p, pneg(q))


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def ppow(p: Poly, e: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(e):
        out = pmul(out, p)
    return out


def pderiv(p: Poly) -> Poly:
    return poly([i * p[i] for i in range(1, len(p))])


def pdivmod(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    q = [Fraction(0)] * max(len(p) - len(d) + 1, 1)
    lead = d[-1]
    while len(r) >= len(d) and r:
        shift = len(r) - len(d)
        f = r[-1] / lead
        q[shift] = f
        for i, c in enumerate(d):
            r[shift + i] -= f * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return poly(q), poly(r)


def pgcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; ``()`` only when both inputs are zero."""
    a, b = p, q
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return ()
    return tuple(c / a[-1] for c in a)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(seq: Sequence[Poly], x) -> int:
    signs = [s for s in (_sign(peval(p, x)) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, pderiv(p)]
    while seq[-1]:
        seq.append(pneg(pdivmod(seq[-2], seq[-1])[1]))
    seq.pop()
    return seq


def roots_in_open(p: Poly, a, b) -> int:
    """Number of distinct real roots of ``p`` in the open interval (a, b)."""
    if not p:
        raise ValueError("the zero polynomial has infinitely many roots")
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        return 0
    # Deflate roots at the left endpoint so the Sturm count is well defined.
    while peval(p, a) == 0:
        p = pdivmod(p, poly([-a, 1]))[0]
    seq = sturm_sequence(p)
    count = _variations(seq, a) - _variations(seq, b)
    if peval(p, b) == 0:
        count -= 1
    return count


def nonnegative_on(p: Poly, a, b) -> bool:
    """Exact test of ``p(x) >= 0`` for all x in [a, b]."""
    if not p:
        return True
    a, b = Fraction(a), Fraction(b)
    if peval(p, a) < 0 or peval(p, b) < 0:
        return False

    def check(lo: Fraction, hi: Fraction) -> bool:
        # p(lo), p(hi) >= 0 already established
        if lo == hi:
            return True
        c = roots_in_open(p, lo, hi)
        if c == 0:
            return peval(p, (lo + hi) / 2) >= 0
        if c == 1 and peval(p, lo) != 0 and peval(p, hi) != 0:
            return True
        mid = (lo + hi) / 2
        if peval(p, mid) < 0:
            return False
        return check(lo, mid) and check(mid, hi)

    return check(a, b)


DIVISOR_CAP = 10**10


def _divisors(n: int) -> list[int] | None:
    n = abs(n)
    if n == 0 or n > DIVISOR_CAP:
        return None
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def integer_coefficients(p: Poly) -> list[int]:
    from math import lcm

    den = lcm(*(c.denominator for c in p)) if p else 1
    return [int(c * den) for c in p]


def rational_root_in(p: Poly, lo, hi) -> Fraction | None:
    """A rational root of ``p`` in [lo, hi], by the rational root theorem; ``None`` if there is none
    (or the coefficients are too large to enumerate divisors)."""
    c = integer_coefficients(p)
    while c and c[0] == 0:
        if lo <= 0 <= hi:
            return Fraction(0)
        c = c[1:]
    if len(c) < 2:
        return None
    nums, dens = _divisors(c[0]), _divisors(c[-1])
    if nums is None or dens is None:
        return None
    lo, hi = Fraction(lo), Fraction(hi)
    for a in nums:
        for b in dens:
            for r in (Fraction(a, b), Fraction(-a, b)):
                if lo <= r <= hi and peval(p, r) == 0:
                    return r
    return None


@dataclass(frozen=True)
class MonotoneRoot:
    """Root of a polynomial that is strictly increasing on [0, 1], isolated in [lo, hi].

    Invariant: ``poly(lo) <= 0 <= poly(hi)``.  When ``lo == hi`` the root is
    the rational ``lo`` exactly.
    """

    poly: Poly
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("empty isolating interval")
        if peval(self.poly, self.lo) > 0 or peval(self.poly, self.hi) < 0:
            raise ValueError("interval does not isolate an increasing root")

    @classmethod
    def rational(cls, r) -> "MonotoneRoot":
        r = Fraction(r)
        return cls(poly([-r, 1]), r, r)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refined(self) -> "MonotoneRoot":
        if self.is_point:
            return self
        mid = (self.lo + self.hi) / 2
        v = peval(self.poly, mid)
        if v == 0:
            return MonotoneRoot(self.poly, mid, mid)
        if v < 0:
            return MonotoneRoot(self.poly, mid, self.hi)
        return MonotoneRoot(self.poly, self.lo, mid)

    def refined_to(self, width) -> "MonotoneRoot":
        r = self
        while r.width > width:
            r = r.refined()
        return r

    def exact(self) -> "MonotoneRoot":
        """Collapse to a point when the root is rational."""
        if self.is_point:
            return self
        r = rational_root_in(self.poly, self.lo, self.hi)
        return self if r is None else MonotoneRoot(self.poly, r, r)

    def compare_rational(self, t) -> int:
        """Sign of ``root - t``, exactly."""
        t = Fraction(t)
        if self.hi < t:
            return -1
        if self.lo > t:
            return 1
        v = peval(self.poly, t)
        return -_sign(v)


def same_root(a: MonotoneRoot, b: MonotoneRoot) -> bool:
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return False
    h = pgcd(a.poly, b.poly)
    if degree(h) < 1:
        return False
    # h divides both polys, whose only root in [0, 1] is simple, so a sign
    # change of h on the common interval pins that shared root there.
    return peval(h, lo) * peval(h, hi) <= 0


def compare_roots(a: MonotoneRoot, b: MonotoneRoot, max_steps: int = 400) -> int | None:
    """Exact three-way comparison; ``None`` only if ``max_steps`` refinements do not separate."""
    for _ in range(max_steps):
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        if a.is_point:
            return -b.compare_rational(a.lo)
        if b.is_point:
            return a.compare_rational(b.lo)
        if same_root(a, b):
            return 0
        if a.width >= b.width:
            a = a.refined()
        else:
            b = b.refined()
    return None


def max_root(roots: Sequence[MonotoneRoot]) -> MonotoneRoot:
    best = roots[0]
    for r in roots[1:]:
        c = compare_roots(r, best)
        if c is None:
            raise ArithmeticError("could not order algebraic roots")
        if c > 0:
            best = r
    return best
