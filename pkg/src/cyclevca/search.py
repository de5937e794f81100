"""Utility, criticality and the local-search algorithms.

Improving sets are found by enumerating connected vertex sets of an
*interaction graph* on the links of S \\ F.  Two links interact when they
cross, share an endpoint outside V(F), or cross a common component of F.
Utility gain and the count of newly covered vertices are both additive over
non-interacting parts, so if some K qualifies then one of its interaction-
connected parts qualifies too, and it is enough to look at connected sets.

Enumeration follows the ESU scheme (each connected set is produced once)
and prunes a branch when an upper bound on the ratio slack of every set
reachable from it is negative.  All comparisons use integers scaled by the
denominator of alpha.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .bounds import as_alpha, ell, ell_budget
from .circle import _crossing_classes, components
from .errors import CapExceeded, SingletonError
from .feasibility import minimal_completion
from .instance import Chord, Instance, LinkSet, crosses, vertices_of


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _vmask(e: Chord) -> int:
    return (1 << e.a) | (1 << e.b)


def utility(links: Iterable[Chord], n: int) -> int:
    """U(F) = -|F| + sum over circle components J of (|V(J)| - 3)."""
    part = components(links, n)
    if not part.singleton_free:
        raise SingletonError(f"link {part.singletons.members[0]!r} crosses no other link")
    return -sum(len(c) for c in part.components) + sum(len(c.covered) - 3 for c in part.components)


def utility_gain(n: int, partial: Iterable[Chord], added: Iterable[Chord]) -> tuple[int, int]:
    """(U(F u K) - U(F), |V(F u K) \\ V(F)|)."""
    partial = set(partial)
    added = set(added) - partial
    before = utility(partial, n)
    after = utility(partial | added, n)
    return after - before, len(vertices_of(added) - vertices_of(partial))


@dataclass(frozen=True)
class SearchParams:
    """``alpha`` drives :func:`local_search`; ``alphas`` drives the refined variant.

    ``n_max`` must exceed the connect budget of the smallest alpha unless
    ``check_n_max`` is turned off (the size guarantee of a single pass does
    not need it, the lower bounds do).
    """

    alpha: Fraction = Fraction(3, 4)
    n_max: int = 8
    alphas: tuple[Fraction, ...] | None = None
    max_candidates: int | None = None
    time_budget: float | None = None
    check_n_max: bool = True

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_alpha(self.alpha))
        if self.alphas is not None:
            al = tuple(as_alpha(a) for a in self.alphas)
            if not al or any(x >= y for x, y in zip(al, al[1:])):
                raise ValueError("alphas must be a nonempty strictly ascending list")
            object.__setattr__(self, "alphas", al)
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        lowest = min(self.alphas) if self.alphas else self.alpha
        if self.check_n_max and self.n_max < ell(lowest) + 1:
            raise ValueError(
                f"n_max={self.n_max} is below {ell(lowest) + 1}, the minimum for alpha={lowest}")


@dataclass
class Step:
    pass_index: int
    alpha: Fraction
    added: tuple[Chord, ...]
    utility_before: int
    utility_after: int
    new_vertices: int


@dataclass
class SearchTrace:
    steps: list[Step] = field(default_factory=list)
    pass_ends: list[int] = field(default_factory=list)
    candidates: int = 0
    final: tuple[Chord, ...] = ()
    completion: tuple[Chord, ...] = ()

    def summary(self) -> dict:
        return {
            "iterations": len(self.steps),
            "passes": len(self.pass_ends),
            "candidates": self.candidates,
            "F": [[e.a, e.b] for e in self.final],
            "Q": [[e.a, e.b] for e in self.completion],
            "steps": [{"alpha": f"{s.alpha.numerator}/{s.alpha.denominator}",
                       "K": [[e.a, e.b] for e in s.added],
                       "gain": s.utility_after - s.utility_before,
                       "new": s.new_vertices} for s in self.steps],
        }


class SearchResult(NamedTuple):
    partial: LinkSet
    completion: LinkSet
    trace: SearchTrace

    @property
    def solution(self) -> LinkSet:
        return self.partial | self.completion


class _Counter:
    def __init__(self, max_candidates, deadline):
        self.count = 0
        self.max_candidates = max_candidates
        self.deadline = deadline

    def tick(self):
        self.count += 1
        if self.max_candidates is not None and self.count > self.max_candidates:
            raise CapExceeded(f"more than {self.max_candidates} candidate sets examined")
        if self.deadline is not None and (self.count & 255) == 0 and time.monotonic() > self.deadline:
            raise CapExceeded("time budget exhausted during improvement search")


class _Improver:
    """Precomputed bit tables for one (S, F, alpha) improvement search."""

    def __init__(self, n: int, links: Sequence[Chord], partial: Iterable[Chord], alpha: Fraction):
        self.n = n
        partial = set(partial)
        part = components(partial, n)
        if not part.singleton_free:
            raise SingletonError("the current partial solution has a singleton")
        self.p, self.q = alpha.numerator, alpha.denominator
        self.nodes = [e for e in sorted(set(links)) if e not in partial]
        comps = part.components
        self.comp_vmask = [sum(1 << v for v in c.covered) for c in comps]
        self.comp_w = [len(c.covered) - 3 for c in comps]
        self.vf = 0
        for m in self.comp_vmask:
            self.vf |= m
        m = len(self.nodes)
        self.vmask = [_vmask(e) for e in self.nodes]
        self.cmask = []
        for e in self.nodes:
            bits = 0
            for j, c in enumerate(comps):
                if any(crosses(e, f) for f in c.links):
                    bits |= 1 << j
            self.cmask.append(bits)
        self.xmask = [0] * m
        self.adj = [0] * m
        for i in range(m):
            for j in range(i + 1, m):
                ei, ej = self.nodes[i], self.nodes[j]
                linked = False
                if crosses(ei, ej):
                    self.xmask[i] |= 1 << j
                    self.xmask[j] |= 1 << i
                    linked = True
                elif (self.vmask[i] & self.vmask[j]) & ~self.vf:
                    linked = True
                elif self.cmask[i] & self.cmask[j]:
                    linked = True
                if linked:
                    self.adj[i] |= 1 << j
                    self.adj[j] |= 1 << i

    def _comp_sum(self, tmask: int) -> tuple[int, int]:
        vm = 0
        w = 0
        j = 0
        while tmask:
            if tmask & 1:
                vm |= self.comp_vmask[j]
                w += self.comp_w[j]
            tmask >>= 1
            j += 1
        return vm, w

    def slack(self, members: list[int]) -> int | None:
        """q * (gain - (1 - alpha) * new), or None if F u K has a singleton."""
        kmask = 0
        for i in members:
            kmask |= 1 << i
        for i in members:
            if not (self.xmask[i] & kmask) and not self.cmask[i]:
                return None
        # group K by crossing each other or a common component of F
        left = set(members)
        total = 0
        tall = 0
        vk = 0
        while left:
            start = left.pop()
            group = [start]
            stack = [start]
            while stack:
                i = stack.pop()
                for j in list(left):
                    if (self.xmask[i] >> j) & 1 or (self.cmask[i] & self.cmask[j]):
                        left.discard(j)
                        group.append(j)
                        stack.append(j)
            gv = 0
            gt = 0
            for i in group:
                gv |= self.vmask[i]
                gt |= self.cmask[i]
            cv, _ = self._comp_sum(gt)
            total += _popcount(gv | cv) - 3
            tall |= gt
            vk |= gv
        _, tw = self._comp_sum(tall)
        gain = -len(members) + total - tw
        new = _popcount(vk & ~self.vf)
        return self.q * gain - (self.q - self.p) * new

    def _upper(self, size, union, tmask, tw, vx, cands, budget) -> int:
        p, q, n = self.p, self.q, self.n
        if budget <= 0 or not cands:
            extra_a = 0
        else:
            incs = []
            c = cands
            while c:
                low = c & -c
                i = low.bit_length() - 1
                c ^= low
                inc = -q
                for v in (self.nodes[i].a, self.nodes[i].b):
                    bit = 1 << v
                    if not (union & bit):
                        inc += q if (self.vf & bit) else p
                fresh = self.cmask[i] & ~tmask
                if fresh:
                    inc += 3 * q * _popcount(fresh)
                if inc > 0:
                    incs.append(inc)
            incs.sort(reverse=True)
            extra_a = sum(incs[:budget])
        base = q * (_popcount(union) - 3 - tw - size) - (q - p) * _popcount(vx & ~self.vf)
        bound_a = base + extra_a
        # global bound from the vertex cap of the cycle
        v0 = _popcount(self.vf | vx)
        vfc = _popcount(self.vf)
        best_b = None
        half = max(0, (n - v0) // 2)
        for e in {0, min(budget, half), min(budget, half + 1)}:
            val = p * min(n, v0 + 2 * e) - q * (size + e) - 3 * q - q * tw + (q - p) * vfc
            best_b = val if best_b is None or val > best_b else best_b
        return min(bound_a, best_b)

    def first_improving(self, n_max: int, counter: _Counter) -> list[int] | None:
        m = len(self.nodes)
        full = (1 << m) - 1
        for root in range(m):
            above = full & ~((1 << (root + 1)) - 1)
            found = self._extend(
                [root], 1 << root, self.adj[root] & above, root, above, n_max, counter,
                union=self.vmask[root] | self._comp_sum(self.cmask[root])[0],
                tmask=self.cmask[root], tw=self._comp_sum(self.cmask[root])[1],
                vx=self.vmask[root], closed=self.adj[root] | (1 << root))
            if found is not None:
                return found
        return None

    def _extend(self, sub, submask, ext, root, above, n_max, counter, union, tmask, tw, vx, closed):
        counter.tick()
        s = self.slack(sub)
        if s is not None and s >= 0:
            return list(sub)
        budget = n_max - len(sub)
        if budget <= 0:
            return None
        cands = (ext | (above & ~closed)) & ~submask
        if self._upper(len(sub), union, tmask, tw, vx, cands, budget) < 0:
            return None
        while ext:
            low = ext & -ext
            w = low.bit_length() - 1
            ext ^= low
            excl = self.adj[w] & above & ~closed & ~submask
            fresh = self.cmask[w] & ~tmask
            cv, cw = self._comp_sum(fresh)
            found = self._extend(
                sub + [w], submask | low, ext | excl, root, above, n_max, counter,
                union=union | self.vmask[w] | cv, tmask=tmask | fresh, tw=tw + cw,
                vx=vx | self.vmask[w], closed=closed | self.adj[w])
            if found is not None:
                return found
            # siblings must not revisit w
            closed |= low
        return None


def find_improving_set(inst: Instance, partial: Iterable[Chord], alpha, n_max: int,
                       max_candidates: int | None = None, deadline: float | None = None,
                       counter: _Counter | None = None) -> LinkSet | None:
    """The first qualifying K in canonical enumeration order, or None when F is critical."""
    a = as_alpha(alpha)
    imp = _Improver(inst.n, inst.links, partial, a)
    counter = counter or _Counter(max_candidates, deadline)
    found = imp.first_improving(n_max, counter)
    if found is None:
        return None
    return LinkSet(tuple(imp.nodes[i] for i in found))


def is_critical(inst: Instance, partial: Iterable[Chord], alpha, n_max: int) -> bool:
    return find_improving_set(inst, partial, alpha, n_max) is None


def _phase_one(inst, partial, alpha, params, trace, pass_index, counter):
    current = set(partial)
    u = utility(current, inst.n)
    while True:
        k = find_improving_set(inst, current, alpha, params.n_max, counter=counter)
        if k is None:
            break
        new = len(vertices_of(k) - vertices_of(current))
        current |= set(k)
        u2 = utility(current, inst.n)
        trace.steps.append(Step(pass_index, alpha, tuple(k), u, u2, new))
        u = u2
    trace.pass_ends.append(len(trace.steps))
    return current


def refined_local_search(inst: Instance, params: SearchParams) -> SearchResult:
    """Phase one for each alpha in ascending order, then one minimal completion."""
    alphas = params.alphas or (params.alpha,)
    deadline = None if params.time_budget is None else time.monotonic() + params.time_budget
    counter = _Counter(params.max_candidates, deadline)
    trace = SearchTrace()
    current: set[Chord] = set()
    for j, a in enumerate(alphas):
        current = _phase_one(inst, current, a, params, trace, j, counter)
    trace.candidates = counter.count
    q = minimal_completion(inst.n, current, inst.links)
    f = LinkSet(tuple(current))
    trace.final = f.members
    trace.completion = q.members
    return SearchResult(f, q, trace)


def local_search(inst: Instance, params: SearchParams) -> SearchResult:
    single = SearchParams(params.alpha, params.n_max, None, params.max_candidates,
                          params.time_budget, params.check_n_max)
    return refined_local_search(inst, single)


def greedy(inst: Instance) -> LinkSet:
    from .feasibility import prune_minimal

    return prune_minimal(inst.n, inst.links)


# ---------------------------------------------------------------- structural checks


def _greedy_maximal_matching(links: Sequence[Chord], seed: int) -> list[Chord]:
    order = list(links)
    random.Random(seed).shuffle(order)
    used: set[int] = set()
    out = []
    for e in order:
        if e.a not in used and e.b not in used:
            used.update(e.ends)
            out.append(e)
    return sorted(out)


def connected_matching_links(e: Chord, matching: Sequence[Chord]) -> list[Chord]:
    """Links of the matching in the circle component of ``e`` within matching + e."""
    key = tuple(sorted(set(matching) | {e}))
    for group in _crossing_classes(key):
        if e in group:
            return [f for f in group if f != e]
    return []


def critical_violations(inst: Instance, partial: Iterable[Chord], alpha,
                        seeds: Iterable[int] = range(10)) -> list[str]:
    """Check the structure every critical set must have; returns readable violations."""
    a = as_alpha(alpha)
    n = inst.n
    partial = tuple(sorted(set(partial)))
    part = components(partial, n)
    vf = vertices_of(partial)
    perimeter = [c for comp in part.components for c in comp.border_chords]
    border = set()
    for comp in part.components:
        border |= comp.border_vertices
    out = []
    for e in inst.links:
        hit = [c for c in perimeter if crosses(e, c)]
        if len(hit) > 1:
            out.append(f"{e!r} crosses {len(hit)} perimeter chords")
        if hit and e.a not in vf and e.b not in vf:
            out.append(f"{e!r} lies outside V(F) but crosses the perimeter")
        touched = [comp for comp in part.components if any(crosses(e, f) for f in comp.links)]
        if len(touched) > 1:
            out.append(f"{e!r} crosses {len(touched)} components of F")
    if 2 * len(perimeter) < len(border):
        out.append(f"|P(F)|={len(perimeter)} < |B(F)|/2={len(border)}/2")
    outside = [e for e in inst.links if e.a not in vf and e.b not in vf]
    fset = set(partial)
    for seed in seeds:
        matching = _greedy_maximal_matching(outside, seed)
        vm = vertices_of(matching)
        mset = set(matching)
        for e in inst.links:
            if e in mset or e in fset:
                continue
            x = int(any(crosses(e, f) for f in partial))
            v_m = sum(1 for v in e.ends if v in vm)
            v_f = sum(1 for v in e.ends if v in vf)
            got = len(connected_matching_links(e, matching))
            cap = ell_budget(x, v_m, v_f, a)
            if got > cap:
                out.append(f"seed {seed}: {e!r} connects {got} matching links, budget {cap}")
    return out
