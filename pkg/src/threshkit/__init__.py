"""Exact thresholds, expectation thresholds and the k-cloning transform for small increasing families."""

from .clone import CloneMap, clone_cover, clone_family, extract_base_cover, is_cloned_cover, project_cover, psi
from .cover import (
    PermutationGroup,
    cost,
    enumerate_cheapest_covers,
    is_cover,
    min_cost_cover,
    q_c,
    q_f,
    symmetric_cheapest_exists,
)
from .setsystem import Family, GroundSet, contains, family_from_labels, largest_minimal_size, member_count, normalize
from .threshold import Enclosure, p_c, prob_in_family
from .verify import check_bounds, check_clone_scaling, falsify_symmetry, find_noncloned_cheapest, random_family

__version__ = "0.1.0"
