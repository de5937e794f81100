"""Exact minimum solutions by branch and bound.

Link sets are bitmasks over the sorted candidate links.  For every chord of
the cycle we precompute the mask of links crossing it; a set is feasible
exactly when it meets all of these masks.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .errors import BudgetExceededError
from .feasibility import feasible, prune_minimal
from .instance import Instance, LinkSet, all_chords, crosses


@dataclass(frozen=True)
class BnBConfig:
    node_budget: int = 5_000_000
    time_budget: float = 120.0
    # "vertex": cover the smallest uncovered vertex first; "chord": always
    # branch on the uncrossed chord with the fewest remaining crossers
    branching: str = "vertex"

    def __post_init__(self):
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")
        if self.branching not in ("vertex", "chord"):
            raise ValueError(f"unknown branching policy {self.branching!r}")


class _Solver:
    def __init__(self, inst: Instance, cfg: BnBConfig):
        self.inst = inst
        self.cfg = cfg
        self.links = list(inst.links)
        self.m = len(self.links)
        n = inst.n
        self.full_vertices = ((1 << n) - 1) << 1
        self.chord_masks = []
        for c in all_chords(n):
            mask = 0
            for i, e in enumerate(self.links):
                if crosses(c, e):
                    mask |= 1 << i
            self.chord_masks.append(mask)
        self.incident = {v: 0 for v in range(1, n + 1)}
        self.vmask = []
        for i, e in enumerate(self.links):
            self.incident[e.a] |= 1 << i
            self.incident[e.b] |= 1 << i
            self.vmask.append((1 << e.a) | (1 << e.b))
        self.nodes = 0
        self.deadline = time.monotonic() + cfg.time_budget

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.cfg.node_budget:
            raise BudgetExceededError(f"node budget {self.cfg.node_budget} exhausted")
        if (self.nodes & 1023) == 0 and time.monotonic() > self.deadline:
            raise BudgetExceededError(f"time budget {self.cfg.time_budget}s exhausted")

    def _options(self, chosen: int, covered: int, allowed: int) -> int | None:
        """Links to branch over, 0 if the node is dead, None if ``chosen`` is feasible."""
        uncovered = self.full_vertices & ~covered
        if uncovered and self.cfg.branching == "vertex":
            low = uncovered & -uncovered
            return self.incident[low.bit_length() - 1] & allowed
        best = None
        for cm in self.chord_masks:
            if cm & chosen:
                continue
            opts = cm & allowed
            if best is None or bin(opts).count("1") < bin(best).count("1"):
                best = opts
                if not opts:
                    break
        if best is None:
            return None if not uncovered else self.incident[
                (uncovered & -uncovered).bit_length() - 1] & allowed
        return best

    def _lower(self, size: int, covered: int) -> int:
        u = bin(self.full_vertices & ~covered).count("1")
        return size + (u + 1) // 2

    def search(self, chosen: int, allowed: int, limit: int) -> int | None:
        """Some feasible superset of ``chosen`` using ``allowed`` links with size < limit."""
        covered = 0
        c = chosen
        while c:
            low = c & -c
            covered |= self.vmask[low.bit_length() - 1]
            c ^= low
        return self._dfs(chosen, bin(chosen).count("1"), covered, allowed, limit)

    def _dfs(self, chosen, size, covered, allowed, limit):
        self._tick()
        lb = self._lower(size, covered)
        if lb >= limit:
            return None
        opts = self._options(chosen, covered, allowed)
        if opts is None:
            return chosen
        if lb == size and size + 1 >= limit:
            return None
        while opts:
            low = opts & -opts
            i = low.bit_length() - 1
            opts ^= low
            got = self._dfs(chosen | low, size + 1, covered | self.vmask[i], allowed & ~low, limit)
            if got is not None:
                return got
            # later branches exclude this link: no set is visited twice
            allowed &= ~low
        return None


def _mask_to_links(solver: _Solver, mask: int) -> LinkSet:
    return LinkSet(tuple(e for i, e in enumerate(solver.links) if (mask >> i) & 1))


def exact_optimum(inst: Instance, cfg: BnBConfig | None = None) -> tuple[int, LinkSet]:
    """Minimum size and the lexicographically smallest minimum witness."""
    cfg = cfg or BnBConfig()
    solver = _Solver(inst, cfg)
    full = (1 << solver.m) - 1
    index = {e: i for i, e in enumerate(solver.links)}
    best_mask = 0
    for e in prune_minimal(inst.n, inst.links):
        best_mask |= 1 << index[e]
    best = bin(best_mask).count("1")
    # phase 1: the optimum value
    while True:
        got = solver.search(0, full, best)
        if got is None:
            break
        best_mask, best = got, bin(got).count("1")
    # phase 2: fix links in increasing order while an optimal extension exists
    chosen = 0
    allowed = full
    for _ in range(best):
        for i in range(solver.m):
            if not (allowed >> i) & 1:
                continue
            trial_allowed = allowed & ~((1 << (i + 1)) - 1)
            if solver.search(chosen | (1 << i), trial_allowed, best + 1) is not None:
                chosen |= 1 << i
                allowed = trial_allowed
                break
    witness = _mask_to_links(solver, chosen)
    assert len(witness) == best and feasible(inst.n, witness)
    return best, witness


def enumerate_optimum(inst: Instance) -> tuple[int, LinkSet]:
    """Naive reference: subsets by increasing size, each size in lexicographic order."""
    for k in range(1, len(inst.links) + 1):
        for combo in itertools.combinations(inst.links, k):
            if feasible(inst.n, combo):
                return k, LinkSet(combo)
    raise AssertionError("the candidate set itself is feasible")
