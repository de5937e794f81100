"""Feasibility oracles, greedy minimal solutions and minimal completions.

Three independent ways of deciding whether a link set 3-connects C_n:

* :func:`is_feasible_crossing` -- every chord of the cycle is crossed by a link;
* :func:`is_feasible_components` -- the links cover every vertex and their
  circle graph is connected;
* :func:`is_three_connected` -- brute force over all vertex pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .circle import _crossing_classes
from .errors import InfeasibleInputError
from .instance import Chord, LinkSet, all_chords, crosses, vertices_of, wrap

# above this size the O(n^2 |S|) chord scan is too slow for the hot path
CHORD_SCAN_LIMIT = 64


@dataclass(frozen=True)
class FeasibilityReport:
    """``witness`` is an uncrossed chord when infeasible (its endpoints form a
    separating pair) and the sorted link tuple of the single component when
    feasible."""

    feasible: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.feasible


def uncrossed_chord(n: int, links: Iterable[Chord]) -> Chord | None:
    """The lexicographically first chord of C_n crossed by no link, if any."""
    links = tuple(links)
    for c in all_chords(n):
        if not any(crosses(c, e) for e in links):
            return c
    return None


def is_feasible_crossing(n: int, links: Iterable[Chord]) -> FeasibilityReport:
    links = tuple(sorted(set(links)))
    c = uncrossed_chord(n, links)
    if c is not None:
        return FeasibilityReport(False, c)
    return FeasibilityReport(True, links)


def _first_uncovered(n: int, links: Iterable[Chord]) -> int | None:
    covered = vertices_of(links)
    for v in range(1, n + 1):
        if v not in covered:
            return v
    return None


def feasible(n: int, links: Iterable[Chord]) -> bool:
    """Fast yes/no feasibility through the edge-cover plus connectivity test."""
    links = tuple(sorted(set(links)))
    if len(vertices_of(links)) != n:
        return False
    return len(_crossing_classes(links)) == 1


def is_feasible_components(n: int, links: Iterable[Chord]) -> FeasibilityReport:
    links = tuple(sorted(set(links)))
    v = _first_uncovered(n, links)
    if v is not None:
        # nothing can cross the chord around an uncovered vertex
        return FeasibilityReport(False, Chord(wrap(v - 1, n), wrap(v + 1, n)))
    if len(_crossing_classes(links)) == 1:
        return FeasibilityReport(True, links)
    return FeasibilityReport(False, uncrossed_chord(n, links))


def is_three_connected(n: int, links: Iterable[Chord]) -> bool:
    """Brute-force test: no pair of vertices separates C_n plus ``links``."""
    adj = {v: {wrap(v - 1, n), wrap(v + 1, n)} for v in range(1, n + 1)}
    for e in links:
        adj[e.a].add(e.b)
        adj[e.b].add(e.a)
    for u in range(1, n + 1):
        for w in range(u + 1, n + 1):
            rest = [v for v in range(1, n + 1) if v != u and v != w]
            seen = {rest[0]}
            stack = [rest[0]]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y != u and y != w and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(rest):
                return False
    return True


def prune_minimal(n: int, links: Iterable[Chord]) -> LinkSet:
    """Drop links in lexicographic order while the set stays feasible.

    One pass suffices: feasibility is monotone, so a link that was needed
    when examined stays needed after later removals.
    """
    current = sorted(set(links))
    if not feasible(n, current):
        raise InfeasibleInputError("cannot prune an infeasible link set")
    for e in list(current):
        trial = [f for f in current if f != e]
        if feasible(n, trial):
            current = trial
    return LinkSet(tuple(current))


def minimal_completion(n: int, partial: Iterable[Chord], links: Iterable[Chord]) -> LinkSet:
    """An inclusion-minimal Q within ``links`` minus ``partial`` making the union feasible.

    Starts from everything outside ``partial`` and prunes in lexicographic
    order.  ``links`` must itself be feasible.
    """
    fixed = set(partial)
    pool = sorted(set(links) - fixed)
    if not feasible(n, fixed | set(pool)):
        raise InfeasibleInputError("the candidate links cannot complete this set")
    for e in list(pool):
        trial = [f for f in pool if f != e]
        if feasible(n, fixed.union(trial)):
            pool = trial
    return LinkSet(tuple(pool))
