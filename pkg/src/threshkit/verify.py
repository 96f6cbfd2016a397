"""Checks of the threshold inequalities and cloning identities on computed enclosures.

The inequalities checked here are theorems, so a ``VIOLATED`` verdict means a
solver bug.  Comparisons between two threshold quantities are decided exactly
through their defining polynomials (:mod:`threshkit.polynomial`); only
comparisons against transcendental right-hand sides go through interval
arithmetic, and those are refined until they separate or a retry cap is hit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .clone import clone_family, is_cloned_cover
from .cover import (
    Cover,
    PermutationGroup,
    enumerate_cheapest_covers,
    q_c,
    q_f,
    qc_root,
    qf_root,
    symmetric_cheapest_exists,
)
from .errors import LimitExceeded, ThreshError
from .polynomial import MonotoneRoot, compare_roots, poly
from .rigorous import exp_interval, imul, iscale, isub_from, ln_interval, log2_point
from .setsystem import Family, GroundSet, canonical, largest_minimal_size, mask_key, normalize
from .threshold import DEFAULT_WIDTH, Enclosure, p_c, pc_root

HOLDS = "HOLDS"
INCONCLUSIVE = "INCONCLUSIVE-REFINE"
VIOLATED = "VIOLATED"
SKIPPED = "SKIPPED"

DEFAULT_K = Fraction(16)
RETRY_CAP = 40


class TheoremViolation(ThreshError):
    """A proven inequality was certified false: the solvers are wrong somewhere."""


@dataclass
class BoundReport:
    family_id: str
    l: int
    K: Fraction
    width: Fraction
    p_c: Enclosure
    q_c: Enclosure
    q_f: Enclosure
    verdicts: dict[str, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def violated(self) -> bool:
        return any(v == VIOLATED for v in self.verdicts.values())

    @property
    def inconclusive(self) -> bool:
        return any(v == INCONCLUSIVE for v in self.verdicts.values())

    def raise_if_violated(self) -> None:
        bad = [k for k, v in self.verdicts.items() if v == VIOLATED]
        if bad:
            raise TheoremViolation(f"{self.family_id}: certified violation of {', '.join(bad)}")


@dataclass
class ScalingReport:
    family_id: str
    k: int
    quantities: dict[str, Enclosure]
    residuals: dict[str, tuple[Fraction, Fraction]]

    @property
    def ok(self) -> bool:
        return all(lo <= 0 <= hi for lo, hi in self.residuals.values())


def _order_verdict(c: int | None) -> str:
    if c is None:
        return INCONCLUSIVE
    return HOLDS if c <= 0 else VIOLATED


def _interval_verdict(compute: Callable[[int], tuple[tuple, tuple]]) -> str:
    """``compute(step)`` returns ``(lhs, rhs)`` intervals, tighter as step grows; checks lhs <= rhs."""
    for step in range(RETRY_CAP):
        lhs, rhs = compute(step)
        if lhs[1] <= rhs[0]:
            return HOLDS
        if lhs[0] > rhs[1]:
            return VIOLATED
    return INCONCLUSIVE


def power_root(l: int) -> MonotoneRoot:
    """2**(-1/l) as the root of x**l - 1/2 in [1/2, 1]."""
    return MonotoneRoot(poly([Fraction(-1, 2)] + [0] * (l - 1) + [1]), Fraction(1, 2), Fraction(1))


def check_bounds(F: Family, K=DEFAULT_K, width=DEFAULT_WIDTH, family_id: str | None = None) -> BoundReport:
    K, width = Fraction(K), Fraction(width)
    l = largest_minimal_size(F)
    pc_enc = p_c(F, width)
    qc_enc, _ = q_c(F, width)
    qf_enc, _ = q_f(F, width)
    rep = BoundReport(family_id or str(F), l, K, width, pc_enc, qc_enc, qf_enc)

    pc = pc_root(F, pc_enc)
    qc = qc_root(F, qc_enc)
    qf = qf_root(F, qf_enc)
    qf_w = width
    while qf is None and qf_w > width / 2**8:
        qf_w /= 4
        qf_enc, _ = q_f(F, qf_w)
        qf = qf_root(F, qf_enc)
    if qf is None:
        rep.notes.append("q_f kept as an interval: no single LP basis isolated it")
        qf = None
    rep.q_f = qf_enc

    def ordered(a, b, a_enc, b_enc) -> str:
        if a is not None and b is not None:
            return _order_verdict(compare_roots(a, b))
        lo_a, hi_a = (a.lo, a.hi) if a is not None else (a_enc.lo, a_enc.hi)
        lo_b, hi_b = (b.lo, b.hi) if b is not None else (b_enc.lo, b_enc.hi)
        if hi_a <= lo_b:
            return HOLDS
        if lo_a > hi_b:
            return VIOLATED
        return INCONCLUSIVE

    rep.verdicts["lower: q_c <= p_c"] = _order_verdict(compare_roots(qc, pc))
    rep.verdicts["order: q_c <= q_f"] = ordered(qc, qf, qc_enc, qf_enc)
    rep.verdicts["order: q_f <= p_c"] = ordered(qf, pc, qf_enc, pc_enc)
    trivial = power_root(l)
    rep.verdicts["trivial: p_c <= 2^(-1/l)"] = _order_verdict(compare_roots(pc, trivial))

    if l < 2:
        for name in ("log_upper", "power_upper", "exp_upper"):
            rep.verdicts[name] = SKIPPED
        rep.notes.append("l(F) = 1: the upper bounds in terms of log2 l need l >= 2")
        return rep

    def refined(r: MonotoneRoot, step: int) -> MonotoneRoot:
        return r.refined_to(width / 2**step)

    def tol(step: int) -> Fraction:
        return width / 2 ** (step + 2)

    def log2l(step):
        return log2_point(l, tol(step))

    def log_upper(step):
        p, q = refined(pc, step), refined(qc, step)
        rhs = imul(iscale((q.lo, q.hi), K), log2l(step))
        return (p.lo, p.hi), rhs

    def exp_upper_rhs(step):
        q = refined(qc, step)
        arg = iscale(imul((q.lo, q.hi), log2l(step)), -K)
        return isub_from(1, exp_interval(arg, tol(step)))

    def exp_upper(step):
        p = refined(pc, step)
        return (p.lo, p.hi), exp_upper_rhs(step)

    rep.verdicts["log_upper: p_c <= K q_c log2 l"] = _interval_verdict(log_upper)
    rep.verdicts["exp_upper: p_c <= 1 - exp(-K q_c log2 l)"] = _interval_verdict(exp_upper)

    side = qc.compare_rational(1 / K)
    if side > 0:
        rep.verdicts["power_upper: p_c <= 1 - (1 - K q_c)^log2 l"] = SKIPPED
        rep.notes.append("power_upper not applicable: q_c > 1/K")
    elif side == 0:
        # (1 - K q_c) = 0, so the right-hand side is exactly 1
        rep.verdicts["power_upper: p_c <= 1 - (1 - K q_c)^log2 l"] = HOLDS
    else:
        def power_upper(step):
            p = refined(pc, step)
            q = refined(qc, step + 8)
            while 1 - K * q.hi <= 0:
                q = q.refined()
            base = isub_from(1, iscale((q.lo, q.hi), K))
            arg = imul(ln_interval(base, tol(step)), log2l(step))
            return (p.lo, p.hi), isub_from(1, exp_interval(arg, tol(step)))

        rep.verdicts["power_upper: p_c <= 1 - (1 - K q_c)^log2 l"] = _interval_verdict(power_upper)

    # informational: which of the trivial bound and exp_upper is smaller
    for step in range(RETRY_CAP):
        t = refined(trivial, step)
        r = exp_upper_rhs(step)
        if t.hi < r[0]:
            rep.notes.append("trivial bound 2^(-1/l) is tighter than exp_upper")
            break
        if r[1] < t.lo:
            rep.notes.append("exp_upper is tighter than the trivial bound 2^(-1/l)")
            break
    return rep


def _residual(a: Enclosure, lo_b: Fraction, hi_b: Fraction) -> tuple[Fraction, Fraction]:
    return a.lo - hi_b, a.hi - lo_b


def check_clone_scaling(F: Family, k: int, width=DEFAULT_WIDTH, include_qf: bool = True,
                        family_id: str | None = None) -> ScalingReport:
    """Residual intervals of q_c(F_k) - q_c(F)/k, q_f(F_k) - q_f(F)/k and the p_c identity."""
    width = Fraction(width)
    Fk, _ = clone_family(F, k)
    qs: dict[str, Enclosure] = {}
    res: dict[str, tuple[Fraction, Fraction]] = {}
    qs["q_c(F)"], _ = q_c(F, width)
    qs["q_c(F_k)"], _ = q_c(Fk, width)
    res["q_c(F_k) - q_c(F)/k"] = _residual(qs["q_c(F_k)"], *qs["q_c(F)"].scaled(Fraction(1, k)))
    if include_qf:
        qs["q_f(F)"], _ = q_f(F, width)
        qs["q_f(F_k)"], _ = q_f(Fk, width)
        res["q_f(F_k) - q_f(F)/k"] = _residual(qs["q_f(F_k)"], *qs["q_f(F)"].scaled(Fraction(1, k)))
    qs["p_c(F)"] = p_c(F, width)
    qs["p_c(F_k)"] = p_c(Fk, width)
    pk = qs["p_c(F_k)"]
    # x -> 1 - (1 - x)**k is increasing on [0, 1]
    res["p_c(F) - (1 - (1 - p_c(F_k))^k)"] = _residual(qs["p_c(F)"], 1 - (1 - pk.lo) ** k, 1 - (1 - pk.hi) ** k)
    return ScalingReport(family_id or str(F), k, qs, res)


def find_noncloned_cheapest(F: Family, k: int, q, limit: int = 10_000) -> Cover | None:
    """A q-cheapest cover of F_k that is not the clone of a cover of F, if one exists."""
    Fk, cm = clone_family(F, k)
    try:
        optima = enumerate_cheapest_covers(Fk, q, limit)
    except LimitExceeded as exc:
        for H in exc.partial:
            if is_cloned_cover(H, cm) is None:
                return H
        raise
    for H in optima:
        if is_cloned_cover(H, cm) is None:
            return H
    return None


def random_family(n: int, max_generators: int, seed: int) -> Family:
    """Deterministic in ``seed``: distinct nonempty subsets, then antichain reduction."""
    rng = random.Random(seed)
    top = (1 << n) - 1
    g = rng.randint(1, min(max_generators, top))
    raw = rng.sample(range(1, top + 1), g)
    return normalize(raw, GroundSet.range(n))


def all_families(n: int) -> Iterator[Family]:
    """Every non-trivial increasing family on ``{1..n}`` (all nonempty antichains of nonempty sets)."""
    ground = GroundSet.range(n)
    subsets = sorted(range(1, 1 << n), key=mask_key)

    def extend(start: int, chosen: list[int]):
        if chosen:
            yield Family(ground, canonical(chosen))
        for i in range(start, len(subsets)):
            S = subsets[i]
            if all(S & T != T and S & T != S for T in chosen):
                chosen.append(S)
                yield from extend(i + 1, chosen)
                chosen.pop()

    yield from extend(0, [])


def symmetrize(F: Family, G: PermutationGroup) -> Family:
    orbit_union = {S for M in F.generators for S in G.orbit(M)}
    return normalize(orbit_union, F.ground)


def falsify_symmetry(n: int, group: PermutationGroup, trials: int, seed: int,
                     max_generators: int = 4) -> list[tuple[Family, Fraction]]:
    """Search G-invariant families for a q with no G-invariant cheapest cover.

    Random families are made invariant by orbit closure; the q values tried
    are the endpoints of a coarse q_c enclosure.
    """
    rng = random.Random(seed)
    found: list[tuple[Family, Fraction]] = []
    seen: set[Family] = set()
    for _ in range(trials):
        F = symmetrize(random_family(n, max_generators, rng.randrange(2**32)), group)
        if F in seen:
            continue
        seen.add(F)
        enc, _ = q_c(F, Fraction(1, 2**8))
        for q in sorted({enc.lo, enc.hi}):
            if 0 < q < 1:
                ok, _ = symmetric_cheapest_exists(F, group, q)
                if not ok:
                    found.append((F, q))
    return found
