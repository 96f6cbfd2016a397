"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line."""

import random
import time
from fractions import Fraction as Fr

import pytest

from conftest import record_acceptance
from oracles import lp_vertex_value, min_cost_from_profiles, pareto_cover_profiles, venn_families
from threshkit.clone import (
    CloneMap,
    clone_cover,
    clone_family,
    extract_base_cover,
    extraction_holds,
    is_cloned_cover,
    psi,
)
from threshkit.cover import cost, is_cover, min_cost_cover, min_cost_value, q_c, q_f, solve_fractional
from threshkit.setsystem import GroundSet, normalize, popcount
from threshkit.verify import HOLDS, SKIPPED, all_families, check_bounds, check_clone_scaling, find_noncloned_cheapest, random_family

WIDTH = Fr(1, 2**20)


def report(n, name, ok, detail):
    record_acceptance(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {name} ({detail})")
    assert ok, detail


def scaling_corpus():
    fams = [F for n in (1, 2, 3) for F in all_families(n)]
    return fams + [random_family(4, 6, seed) for seed in range(100)]


def bounds_corpus():
    fams = [F for n in (1, 2, 3, 4) for F in all_families(n)]
    return fams + [random_family(5, 8, seed) for seed in range(200)]


@pytest.fixture(scope="module")
def scaling_reports():
    t0 = time.perf_counter()
    reps = [check_clone_scaling(F, k, WIDTH, include_qf=False) for F in scaling_corpus() for k in (2, 3)]
    return reps, time.perf_counter() - t0


def test_criterion_1_two_pairs_points(two_pairs):
    t0 = time.perf_counter()
    enc, cert = q_c(two_pairs, WIDTH)
    F2, _ = clone_family(two_pairs, 2)
    enc2, cert2 = q_c(F2, WIDTH)
    dt = time.perf_counter() - t0
    ok = (enc.is_point and enc.lo == Fr(1, 2) and enc2.is_point and enc2.lo == Fr(1, 4)
          and cert.check(two_pairs) and cert2.check(F2) and dt < 10)
    report(1, "q_c(F)=1/2, q_c(F_2)=1/4 as points", ok, f"{enc.approx()}, {enc2.approx()}, {dt:.2f}s")


def test_criterion_2_qc_scaling(scaling_reports):
    reps, dt = scaling_reports
    bad = [(r.family_id, r.k) for r in reps if not r.residuals["q_c(F_k) - q_c(F)/k"][0] <= 0
           <= r.residuals["q_c(F_k) - q_c(F)/k"][1]]
    wide = [r for r in reps for key in ("q_c(F)", "q_c(F_k)") if r.quantities[key].width > WIDTH]
    ok = not bad and not wide and dt < 600
    report(2, "q_c(F_k) - q_c(F)/k contains 0", ok, f"{len(reps)} cases, {len(bad)} bad, {dt:.1f}s")


def test_criterion_3_pc_identity(scaling_reports):
    reps, _ = scaling_reports
    key = "p_c(F) - (1 - (1 - p_c(F_k))^k)"
    bad = [(r.family_id, r.k) for r in reps if not r.residuals[key][0] <= 0 <= r.residuals[key][1]]
    wide = [r for r in reps for q in ("p_c(F)", "p_c(F_k)") if r.quantities[q].width > WIDTH]
    report(3, "p_c(F) = 1 - (1 - p_c(F_k))^k residual contains 0", not bad and not wide,
           f"{len(reps)} cases, {len(bad)} bad")


def test_criterion_4_cost_preservation():
    rng = random.Random(4)
    bad = 0
    for _ in range(500):
        n = rng.randint(1, 4)
        k = rng.randint(1, 4)
        G = {rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 5))}
        q = Fr(rng.randint(1, 60), 60)
        cm = CloneMap(GroundSet.range(n), k)
        if cost(clone_cover(G, cm), q / k) != cost(G, q):
            bad += 1
    report(4, "cost_{q/k}(clone(G)) == cost_q(G)", bad == 0, f"500 triples, {bad} mismatches")


def _random_clone_cover(rng, Fk):
    H = set()
    for M in Fk.generators:
        elems = [1 << j for j in range(Fk.n) if M >> j & 1]
        H.add(sum(rng.sample(elems, rng.randint(1, len(elems)))))
    for _ in range(rng.randint(0, 3)):
        H.add(rng.randrange(1, 1 << Fk.n))
    return H


def test_criterion_5_extraction():
    rng = random.Random(5)
    failures, disagreements = 0, 0
    for _ in range(100):
        n = rng.randint(1, 4)
        F = random_family(n, 4, rng.randrange(2**32))
        k = rng.randint(2, 3)
        Fk, cm = clone_family(F, k)
        H = _random_clone_cover(rng, Fk)
        q = Fr(rng.randint(1, 12), 12 * k)
        G_d, _ = extract_base_cover(H, F, cm, q, "derandomized")
        G_e, _ = extract_base_cover(H, F, cm, q, "exhaustive")
        if not (extraction_holds(G_d, F, H, k, q) and extraction_holds(G_e, F, H, k, q)):
            failures += 1
        if cost(G_e, k * q) > cost(G_d, k * q):
            disagreements += 1
    ok = failures == 0 and disagreements == 0
    report(5, "extract_base_cover verified by cost and is_cover", ok,
           f"100 covers, {failures} failures, {disagreements} path disagreements")


def _key(rep, prefix):
    return next(k for k in rep.verdicts if k.startswith(prefix))


def _applicable(rep):
    # power_upper needs 1 - K q_c >= 0; everything else only needs l >= 2
    out = {"log_upper", "exp_upper"} if rep.l > 1 else set()
    if rep.l > 1 and rep.q_c.hi <= 1 / rep.K:
        out.add("power_upper")
    return out


def _skip_allowed(rep, key):
    name = key.split(":")[0]
    if name == "power_upper" and rep.l > 1:
        return rep.q_c.hi > 1 / rep.K
    return name in ("log_upper", "power_upper", "exp_upper") and rep.l == 1


def test_criterion_6_bound_suite():
    t0 = time.perf_counter()
    bad = []
    fams = bounds_corpus()
    for F in fams:
        rep = check_bounds(F, K=16, width=WIDTH)
        if any(v not in (HOLDS, SKIPPED) for v in rep.verdicts.values()):
            bad.append((rep.family_id, rep.verdicts))
        if any(v == SKIPPED and not _skip_allowed(rep, key) for key, v in rep.verdicts.items()):
            bad.append((rep.family_id, rep.verdicts))
        if rep.l > 1 and "power_upper" in _applicable(rep) and rep.verdicts[_key(rep, "power_upper")] != HOLDS:
            bad.append((rep.family_id, rep.verdicts))
    dt = time.perf_counter() - t0
    report(6, "bound suite all HOLDS with K=16", not bad, f"{len(fams)} families, {len(bad)} bad, {dt:.1f}s")


def test_criterion_7_noncloned_witness(two_pairs):
    t0 = time.perf_counter()
    q = Fr(1, 4)
    W = find_noncloned_cheapest(two_pairs, 2, q)
    F2, cm = clone_family(two_pairs, 2)
    dt = time.perf_counter() - t0
    ok = (W is not None and is_cover(W, F2) and cost(W, q) == Fr(1, 2)
          and min_cost_value(F2, q)[0] == Fr(1, 2) and is_cloned_cover(W, cm) is None and dt < 60)
    shown = "none" if W is None else ",".join("{" + ",".join(F2.ground.names(S)) + "}" for S in W)
    report(7, "non-cloned cheapest cover of F_2 at q=1/4", ok, f"{shown}, {dt:.2f}s")


QS = [Fr(1, 7), Fr(1, 4), Fr(1, 3), Fr(1, 2), Fr(5, 7)]


def test_criterion_8_oracle_equivalence():
    fams = venn_families(3, 3)
    bad = []
    for n, gens in fams:
        F = normalize(gens, GroundSet.range(n))
        profiles = pareto_cover_profiles(gens)
        for q in QS:
            G, val = min_cost_cover(F, q)
            if val != min_cost_from_profiles(profiles, q) or cost(G, q) != val or not is_cover(G, F):
                bad.append(("min_cost", gens, q))
            if solve_fractional(F, q)[0].value != lp_vertex_value(gens, q):
                bad.append(("lp", gens, q))
        enc, _ = q_f(F, WIDTH)
        lo_v = lp_vertex_value(gens, enc.lo) if enc.lo > 0 else Fr(0)
        hi_v = lp_vertex_value(gens, enc.hi)
        if not (lo_v <= Fr(1, 2) <= hi_v):
            bad.append(("q_f", gens, enc))
    report(8, "min cost and LP value match brute force", not bad,
           f"{len(fams)} families x {len(QS)} q values, {len(bad)} mismatches")


def test_criterion_9_psi_size():
    bad = 0
    cases = 0
    for k in range(1, 5):
        cm = CloneMap(GroundSet.range(4), k)
        for S in range(1 << 4):
            images = psi(S, cm)
            cases += 1
            distinct = len(set(images)) == len(images)
            exact = all(cm.project(T) == S and popcount(T) == popcount(S) for T in images)
            if len(images) != k ** popcount(S) or not distinct or not exact:
                bad += 1
            # no other duplicate-free pre-image exists
            full = [T for T in range(1 << cm.cloned.n) if cm.project(T) == S and popcount(T) == popcount(S)]
            if sorted(full) != sorted(images):
                bad += 1
    report(9, "|Psi(S)| = k^|S|", bad == 0, f"{cases} (S, k) pairs, {bad} bad")
