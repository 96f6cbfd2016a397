"""Rational enclosures of exp and log via truncated series with explicit remainders.

Intervals are ``(lo, hi)`` pairs of Fractions.  Intermediate results are
rounded outward to a dyadic grid so denominators stay bounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, ceil

Interval = tuple


def _down(x: Fraction, bits: int) -> Fraction:
    return Fraction(floor(x * 2**bits), 2**bits)


def _up(x: Fraction, bits: int) -> Fraction:
    return Fraction(ceil(x * 2**bits), 2**bits)


def _bits_for(tol: Fraction) -> int:
    return max(8, (1 / tol).__ceil__().bit_length() + 8)


def imul(a: Interval, b: Interval) -> Interval:
    ps = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return min(ps), max(ps)


def iscale(a: Interval, c) -> Interval:
    c = Fraction(c)
    return (a[0] * c, a[1] * c) if c >= 0 else (a[1] * c, a[0] * c)


def isub_from(c, a: Interval) -> Interval:
    """``c - a`` for a scalar c."""
    return c - a[1], c - a[0]


def _exp_small(y: Fraction, bits: int) -> Interval:
    """exp(y) for |y| <= 1/2."""
    eps = Fraction(1, 2**bits)
    term = Fraction(1)
    total = Fraction(0)
    i = 0
    # the tail from the first omitted term on is at most 2 * |term|
    while 2 * abs(term) >= eps:
        total += term
        i += 1
        term = term * y / i
    slack = 2 * abs(term)
    return _down(total - slack, bits + 8), _up(total + slack, bits + 8)


def exp_point(x, tol) -> Interval:
    x, tol = Fraction(x), Fraction(tol)
    s = 0
    while abs(x) / 2**s > Fraction(1, 2):
        s += 1
    bits = _bits_for(tol) + 2 * s + 8
    while True:
        lo, hi = _exp_small(x / 2**s, bits)
        for _ in range(s):
            lo, hi = _down(lo * lo, bits), _up(hi * hi, bits)
        if hi - lo <= tol:
            return lo, hi
        bits += 16


def exp_interval(a: Interval, tol) -> Interval:
    """exp is increasing, so enclose it at each endpoint."""
    return exp_point(a[0], tol)[0], exp_point(a[1], tol)[1]


def _atanh_series(t: Fraction, bits: int) -> Interval:
    """atanh(t) for |t| <= 1/3."""
    eps = Fraction(1, 2**bits)
    total = Fraction(0)
    power = t
    t2 = t * t
    j = 0
    while True:
        total += power / (2 * j + 1)
        j += 1
        power *= t2
        tail = abs(power) / (2 * j + 1) / (1 - t2)
        if tail < eps:
            break
    return _down(total - tail, bits + 8), _up(total + tail, bits + 8)


def _ln2(bits: int) -> Interval:
    lo, hi = _atanh_series(Fraction(1, 3), bits)
    return 2 * lo, 2 * hi


def ln_point(x, tol) -> Interval:
    x, tol = Fraction(x), Fraction(tol)
    if x <= 0:
        raise ValueError("log of a non-positive number")
    e = 0
    m = x
    while m > Fraction(4, 3):
        m /= 2
        e += 1
    while m < Fraction(2, 3):
        m *= 2
        e -= 1
    bits = _bits_for(tol) + abs(e).bit_length() + 4
    while True:
        t = (m - 1) / (m + 1)
        a_lo, a_hi = _atanh_series(t, bits)
        l2_lo, l2_hi = _ln2(bits)
        base = (2 * a_lo, 2 * a_hi)
        part = iscale((l2_lo, l2_hi), e)
        lo, hi = base[0] + part[0], base[1] + part[1]
        if hi - lo <= tol:
            return lo, hi
        bits += 16


def ln_interval(a: Interval, tol) -> Interval:
    return ln_point(a[0], tol)[0], ln_point(a[1], tol)[1]


def log2_point(x, tol) -> Interval:
    """log2(x); exact when x is a power of two."""
    x = Fraction(x)
    if x > 0 and x.numerator & (x.numerator - 1) == 0 and x.denominator & (x.denominator - 1) == 0:
        v = Fraction(x.numerator.bit_length() - x.denominator.bit_length())
        return v, v
    tol = Fraction(tol)
    ln_x = ln_point(x, tol / 4)
    ln2 = ln_point(2, tol / 4)
    lo = ln_x[0] / ln2[1] if ln_x[0] >= 0 else ln_x[0] / ln2[0]
    hi = ln_x[1] / ln2[0] if ln_x[1] >= 0 else ln_x[1] / ln2[1]
    return lo, hi
