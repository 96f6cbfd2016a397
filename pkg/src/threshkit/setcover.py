"""Exact weighted set cover by branch and bound.

Elements are ``0..m-1``; each candidate has a nonnegative integer cost and a
bitmask of the elements it covers.  The search branches on the uncovered
element with the fewest usable candidates; in the i-th branch the candidates
tried in branches ``0..i-1`` are forbidden for the whole subtree, so every
cover is generated at most once and every irredundant cover exactly once.

The node bound is the price bound: each uncovered element pays the cheapest
``cost / (number of uncovered elements covered)`` among its usable
candidates, rounded down so the bound stays admissible in integers.
"""

from __future__ import annotations

import sys
from typing import Callable, Sequence


class SetCoverSearch:
    def __init__(self, costs: Sequence[int], covers: Sequence[int], m: int):
        self.costs = list(costs)
        self.covers = list(covers)
        self.m = m
        self.full = (1 << m) - 1
        self.by_element: list[list[int]] = [[] for _ in range(m)]
        for j, cov in enumerate(self.covers):
            e = 0
            c = cov
            while c:
                if c & 1:
                    self.by_element[e].append(j)
                c >>= 1
                e += 1
        for e in range(m):
            if not self.by_element[e]:
                raise ValueError(f"element {e} cannot be covered")

    def greedy(self) -> tuple[int, list[int]]:
        uncovered = self.full
        chosen: list[int] = []
        total = 0
        while uncovered:
            best = None
            for j, cov in enumerate(self.covers):
                gain = (cov & uncovered).bit_count()
                if gain:
                    # compare cost/gain without division
                    if best is None or self.costs[j] * best[1] < best[0] * gain:
                        best = (self.costs[j], gain, j)
            _, _, j = best
            chosen.append(j)
            total += self.costs[j]
            uncovered &= ~self.covers[j]
        return total, sorted(chosen)

    def irredundant(self, chosen: Sequence[int]) -> bool:
        for j in chosen:
            rest = 0
            for i in chosen:
                if i != j:
                    rest |= self.covers[i]
            if rest & self.full == self.full:
                return False
        return True

    def _bound(self, uncovered: int, forbidden: int):
        """Price lower bound and the branching element, or ``None`` if infeasible."""
        total = 0
        branch_e, branch_opts = -1, None
        u = uncovered
        costs, covers = self.costs, self.covers
        while u:
            low = u & -u
            e = low.bit_length() - 1
            u ^= low
            best = None
            opts = 0
            for j in self.by_element[e]:
                if forbidden >> j & 1:
                    continue
                opts += 1
                share = costs[j] // (covers[j] & uncovered).bit_count()
                if best is None or share < best:
                    best = share
            if best is None:
                return None
            total += best
            if branch_opts is None or opts < branch_opts:
                branch_e, branch_opts = e, opts
        return total, branch_e

    def search(self, on_leaf: Callable[[int, list[int]], None],
               threshold: Callable[[], tuple[int, bool]]) -> None:
        """Visit every cover whose cost passes ``threshold``.

        ``threshold()`` returns ``(limit, strict)``: nodes whose bound exceeds
        ``limit`` (or reaches it, when ``strict``) are pruned.  It is re-read
        at every node so the leaf callback can tighten it.
        """
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 10 * self.m + 1000))
        try:
            self._search(self.full, 0, [], 0, on_leaf, threshold)
        finally:
            sys.setrecursionlimit(old)

    def _search(self, uncovered, cost, chosen, forbidden, on_leaf, threshold):
        limit, strict = threshold()
        if cost > limit or (strict and cost >= limit):
            return
        if not uncovered:
            on_leaf(cost, chosen)
            return
        res = self._bound(uncovered, forbidden)
        if res is None:
            return
        bound, e = res
        if cost + bound > limit or (strict and cost + bound >= limit):
            return
        opts = [j for j in self.by_element[e] if not forbidden >> j & 1]
        gains = {j: (self.covers[j] & uncovered).bit_count() for j in opts}
        # most cost-effective first; candidate index breaks ties deterministically
        opts.sort(key=lambda j: (self.costs[j] * _LCM_KEY // gains[j], j))
        for j in opts:
            chosen.append(j)
            self._search(uncovered & ~self.covers[j], cost + self.costs[j], chosen,
                         forbidden, on_leaf, threshold)
            chosen.pop()
            forbidden |= 1 << j

    def minimize(self, target: int | None = None) -> tuple[int, list[int]] | None:
        """Minimum cost cover; with ``target``, ``None`` proves no cover costs ``<= target``."""
        if target is None:
            g_cost, g_choice = self.greedy()
            state = {"limit": g_cost, "strict": True, "choice": g_choice}
        else:
            g_cost, g_choice = self.greedy()
            if g_cost <= target:
                state = {"limit": g_cost, "strict": True, "choice": g_choice}
            else:
                state = {"limit": target, "strict": False, "choice": None}

        def leaf(cost, chosen):
            state["limit"], state["strict"], state["choice"] = cost, True, sorted(chosen)

        self.search(leaf, lambda: (state["limit"], state["strict"]))
        if state["choice"] is None:
            return None
        return state["limit"], state["choice"]

    def enumerate_within(self, limit: int, max_results: int | None = None,
                         irredundant_only: bool = True) -> tuple[list[tuple[int, list[int]]], bool]:
        """All covers of cost ``<= limit``; returns ``(results, complete)``."""
        found: list[tuple[int, list[int]]] = []
        state = {"stop": False}

        def leaf(cost, chosen):
            if state["stop"]:
                return
            if irredundant_only and not self.irredundant(chosen):
                return
            found.append((cost, sorted(chosen)))
            if max_results is not None and len(found) > max_results:
                state["stop"] = True

        def threshold():
            return (-1, True) if state["stop"] else (limit, False)

        self.search(leaf, threshold)
        if max_results is not None and len(found) > max_results:
            return found[:max_results], False
        return found, True


_LCM_KEY = 720720  # lcm(1..16); scales cost/gain into an integer sort key
