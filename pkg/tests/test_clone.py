import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from conftest import families
from threshkit.clone import (
    CloneMap,
    clone_cover,
    clone_family,
    extract_base_cover,
    extraction_holds,
    is_cloned_cover,
    project_cover,
    psi,
)
from threshkit.cover import cost, is_cover, min_cost_value
from threshkit.errors import DuplicateInFibre, FibreError, NotACover, ProbabilityOverflow
from threshkit.setsystem import GroundSet, family_from_labels, popcount

# cloned masks over base {1,2,3} with k = 2: bit 2x+i is copy i of element x+1
A1, B1, A2, B2, A3, B3 = (1 << j for j in range(6))


def cm3(k=2):
    return CloneMap(GroundSet.range(3), k)


def test_labels():
    assert CloneMap(GroundSet.range(2), 2).cloned.labels == ("1a", "1b", "2a", "2b")
    assert CloneMap(GroundSet.range(1), 27).cloned.labels[26] == "1#27"
    with pytest.raises(FibreError):
        CloneMap(GroundSet.range(1), 0)


def test_psi_examples():
    cm = cm3()
    assert psi(0, cm) == [0]
    assert psi(0b1, cm) == [A1, B1]
    assert sorted(psi(0b11, cm)) == sorted([A1 | A2, A1 | B2, B1 | A2, B1 | B2])


def test_clone_family_examples(dictator, two_pairs):
    F3, _ = clone_family(dictator, 3)
    assert F3.generators == (1, 2, 4)
    F2, _ = clone_family(two_pairs, 2)
    assert len(F2.generators) == 8 and all(popcount(M) == 2 for M in F2.generators)
    F1, cm = clone_family(two_pairs, 1)
    assert F1.generators == two_pairs.generators and cm.cloned.labels == ("1a", "2a", "3a")


def test_project_cover_examples():
    cm = cm3()
    assert project_cover([A1], cm) == (0b1,)
    assert project_cover([A1 | B2], cm) == (0b11,)
    assert project_cover([A1, B1], cm) == (0b1,)
    with pytest.raises(DuplicateInFibre):
        project_cover([A1 | B1], cm)


def test_clone_cover_examples():
    cm = cm3()
    assert clone_cover([0b1], cm) == (A1, B1)
    assert cost(clone_cover([0b1], cm), Fr(1, 4)) == cost([0b1], Fr(1, 2))
    assert clone_cover([0], cm) == (0,)
    H = clone_cover([0b11], cm)
    assert len(H) == 4 and cost(H, Fr(1, 4)) == Fr(1, 4) == cost([0b11], Fr(1, 2))


def test_is_cloned_cover_examples():
    cm = cm3()
    assert is_cloned_cover([A1, B1], cm) == (0b1,)
    assert is_cloned_cover([A1], cm) is None
    assert is_cloned_cover([A1, B1 | A2, B1 | B2, B1 | A3, B1 | B3], cm) is None


def test_extraction_equality_case(two_pairs):
    F2, cm = clone_family(two_pairs, 2)
    H = [A1, B1]
    for method in ("derandomized", "exhaustive"):
        G, sel = extract_base_cover(H, two_pairs, cm, Fr(1, 4), method)
        assert G == (0b1,) and cost(G, Fr(1, 2)) == Fr(1, 2) == cost(H, Fr(1, 4))


def test_extraction_drops_junk(two_pairs):
    F2, cm = clone_family(two_pairs, 2)
    H = [A1, B1, A2 | B2, B1 | B3, A3]
    G, sel = extract_base_cover(H, two_pairs, cm, Fr(1, 4))
    X = sum(1 << j for j in sel)
    assert is_cover(G, two_pairs) and extraction_holds(G, two_pairs, H, 2, Fr(1, 4))
    assert all(S & X == S for S in clone_cover(G, cm) if S in H) or G == (0b1,)


def test_extraction_errors(two_pairs):
    _, cm = clone_family(two_pairs, 2)
    with pytest.raises(NotACover):
        extract_base_cover([A1], two_pairs, cm, Fr(1, 4))
    with pytest.raises(ProbabilityOverflow):
        extract_base_cover([A1, B1], two_pairs, cm, Fr(3, 4))


@given(families(max_n=3, max_generators=3), st.integers(1, 3), st.fractions(Fr(1, 30), 1, max_denominator=30))
@settings(max_examples=60, deadline=None)
def test_clone_roundtrip_and_cost(F, k, q):
    Fk, cm = clone_family(F, k)
    G = F.generators
    H = clone_cover(G, cm)
    assert is_cloned_cover(H, cm) == G
    assert cost(H, q / k) == cost(G, q)
    assert is_cover(H, Fk)


@given(families(max_n=3, max_generators=3), st.integers(2, 3), st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_extraction_property(F, k, seed):
    rng = random.Random(seed)
    Fk, cm = clone_family(F, k)
    H = {sum(rng.sample([1 << j for j in range(Fk.n) if M >> j & 1], rng.randint(1, popcount(M))))
         for M in Fk.generators}
    q = Fr(rng.randint(1, 10), 10 * k)
    G_d, _ = extract_base_cover(H, F, cm, q)
    G_e, _ = extract_base_cover(H, F, cm, q, "exhaustive")
    assert extraction_holds(G_d, F, H, k, q) and extraction_holds(G_e, F, H, k, q)
    assert cost(G_e, k * q) <= cost(G_d, k * q)


@given(families(max_n=3, max_generators=3), st.integers(2, 3),
       st.fractions(Fr(1, 20), Fr(19, 20), max_denominator=20))
@settings(max_examples=40, deadline=None)
def test_min_cost_scales_under_cloning(F, k, q):
    Fk, _ = clone_family(F, k)
    assert min_cost_value(Fk, q / k)[0] == min_cost_value(F, q)[0]


def test_one_generator_clone_threshold(dictator):
    from threshkit.cover import q_c

    F3, _ = clone_family(dictator, 3)
    enc, _ = q_c(F3)
    assert enc.is_point and enc.lo == Fr(1, 6)


def test_two_pairs_sizes():
    F = family_from_labels("123", [[1, 2], [1, 3]])
    Fk, _ = clone_family(F, 3)
    assert len(Fk.generators) == 18
