"""Circle graphs of chord sets and the geometry of circle components."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import DegenerateZoneError, NotABorderChordError, NotAComponentError
from .instance import Chord, Instance, LinkSet, crosses, cyclically_adjacent, vertices_of, wrap


@dataclass(frozen=True)
class CircleGraph:
    nodes: tuple[Chord, ...]
    adjacency: Mapping[Chord, frozenset[Chord]]

    def edges(self) -> list[tuple[Chord, Chord]]:
        return [(x, y) for x in self.nodes for y in self.adjacency[x] if x < y]

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            x = stack.pop()
            for y in self.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.nodes)


def circle_graph(links: Iterable[Chord]) -> CircleGraph:
    nodes = tuple(sorted(set(links)))
    adj: dict[Chord, set[Chord]] = {e: set() for e in nodes}
    for i, x in enumerate(nodes):
        for y in nodes[i + 1:]:
            if crosses(x, y):
                adj[x].add(y)
                adj[y].add(x)
    return CircleGraph(nodes, {e: frozenset(s) for e, s in adj.items()})


def _crossing_classes(links: tuple[Chord, ...]) -> list[list[Chord]]:
    parent = list(range(len(links)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, x in enumerate(links):
        for j in range(i + 1, len(links)):
            if crosses(x, links[j]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[Chord]] = {}
    for i, e in enumerate(links):
        groups.setdefault(find(i), []).append(e)
    return sorted(groups.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class CircleComponent:
    """A circle component together with its covered vertices, perimeter and zones.

    ``zones`` maps every border chord to the open interval of external
    vertices on its far side, listed in cyclic order.
    """

    n: int
    links: LinkSet
    covered: tuple[int, ...]
    border_chords: tuple[Chord, ...]
    zones: Mapping[Chord, tuple[int, ...]]

    @property
    def border_vertices(self) -> frozenset[int]:
        return frozenset(v for c in self.border_chords for v in c)

    @property
    def internal_vertices(self) -> frozenset[int]:
        return frozenset(self.covered) - self.border_vertices

    def external_vertices(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - frozenset(self.covered)

    def is_internal_chord(self, c: Chord) -> bool:
        pos = {v: i for i, v in enumerate(self.covered)}
        if c.a not in pos or c.b not in pos:
            return False
        m = len(self.covered)
        gap = (pos[c.b] - pos[c.a]) % m
        return gap not in (1, m - 1)

    def __len__(self) -> int:
        return len(self.links)


@lru_cache(maxsize=4096)
def _profile(links: tuple[Chord, ...], n: int) -> CircleComponent:
    covered = tuple(sorted(vertices_of(links)))
    border = []
    zones = {}
    m = len(covered)
    for i, u in enumerate(covered):
        v = covered[(i + 1) % m]
        gap = tuple(wrap(u + k, n) for k in range(1, (v - u) % n))
        if gap:
            c = Chord(u, v)
            border.append(c)
            zones[c] = gap
    return CircleComponent(n, LinkSet(links), covered, tuple(sorted(border)), zones)


def component_profile(links: Iterable[Chord], n: int) -> CircleComponent:
    """Profile a circle component; profiles are cached by link content."""
    key = tuple(sorted(set(links)))
    if len(key) < 2 or len(_crossing_classes(key)) != 1:
        raise NotAComponentError("links do not form a circle component")
    return _profile(key, n)


@dataclass(frozen=True)
class ComponentPartition:
    components: tuple[CircleComponent, ...]
    singletons: LinkSet

    @property
    def singleton_free(self) -> bool:
        return len(self.singletons) == 0

    def component_of(self, e: Chord) -> CircleComponent | None:
        for comp in self.components:
            if e in comp.links:
                return comp
        return None


def components(links: Iterable[Chord], n: int) -> ComponentPartition:
    key = tuple(sorted(set(links)))
    comps, singles = [], []
    for group in _crossing_classes(key):
        if len(group) == 1:
            singles.append(group[0])
        else:
            comps.append(_profile(tuple(group), n))
    return ComponentPartition(tuple(comps), LinkSet(tuple(singles)))


def component_crosses_chord(comp: CircleComponent, c: Chord) -> bool:
    """Whether some link of ``comp`` crosses ``c``, decided from the profile alone."""
    if comp.is_internal_chord(c):
        return True
    return any(crosses(c, p) for p in comp.border_chords)


def connects(e: Chord, links: Iterable[Chord]) -> bool:
    """True iff ``links`` plus ``e`` forms a single circle component."""
    key = tuple(sorted(set(links) | {e}))
    return len(key) >= 2 and len(_crossing_classes(key)) == 1


def link_path(comp: CircleComponent, u: int, v: int) -> list[Chord] | None:
    """A shortest sequence of links from ``u`` to ``v`` in which consecutive links cross."""
    starts = [e for e in comp.links if u in e.ends]
    goal = {e for e in comp.links if v in e.ends}
    prev: dict[Chord, Chord | None] = {e: None for e in starts}
    queue = list(starts)
    graph = circle_graph(comp.links)
    for e in queue:
        if e in goal:
            path = [e]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for f in sorted(graph.adjacency[e]):
            if f not in prev:
                prev[f] = e
                queue.append(f)
    return None


@dataclass(frozen=True)
class ZoneInstance:
    """The smaller instance living in one zone of a component.

    ``psi`` maps each surviving original link to its chord in the zone cycle;
    ``representative`` gives, for every zone link, the lexicographically
    smallest original link that maps to it; the added border link has an
    entry only when some original link lands on it.
    ``label`` sends original vertices of the closed zone to their new labels;
    every other vertex is contracted to ``instance.n``.
    """

    instance: Instance
    border_link: Chord
    psi: Mapping[Chord, Chord]
    representative: Mapping[Chord, Chord]
    label: Mapping[int, int]

    def image(self, links: Iterable[Chord]) -> LinkSet:
        return LinkSet(tuple(self.psi[e] for e in links if e in self.psi))


def zone_instance(ab: Chord, comp: CircleComponent, links: Iterable[Chord]) -> ZoneInstance:
    if ab not in comp.zones:
        raise NotABorderChordError(f"{ab!r} is not a border chord of the component")
    n = comp.n
    zone = comp.zones[ab]
    start = wrap(zone[0] - 1, n)
    closed = (start,) + zone + (wrap(zone[-1] + 1, n),)
    label = {v: i + 1 for i, v in enumerate(closed)}
    n_zone = len(closed) + 1
    if n_zone < 4:
        raise DegenerateZoneError(f"zone cycle would have {n_zone} vertices")
    contracted = n_zone
    psi: dict[Chord, Chord] = {}
    rep: dict[Chord, Chord] = {}
    for e in sorted(set(links)):
        if e in comp.links:
            continue
        x, y = label.get(e.a, contracted), label.get(e.b, contracted)
        if x == y or cyclically_adjacent(x, y, n_zone):
            continue
        image = Chord(x, y)
        psi[e] = image
        rep.setdefault(image, e)
    border_link = Chord(1, len(closed))
    zone_links = set(psi.values()) | {border_link}
    # feasible whenever ``links`` is; not re-checked so partial link sets work too
    inst = Instance(n_zone, tuple(sorted(zone_links)), check_feasible=False)
    return ZoneInstance(inst, border_link, psi, rep, label)
