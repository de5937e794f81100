import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import BLUE, RED, C, random_feasible
from cyclevca.circle import (
    circle_graph, component_crosses_chord, component_profile, components, connects, link_path,
    zone_instance,
)
from cyclevca.errors import NotABorderChordError, NotAComponentError
from cyclevca.feasibility import feasible, minimal_completion
from cyclevca.instance import Chord, all_chords, crosses, vertices_of


def random_partial(inst, rng, p=0.5):
    """A singleton-free subset of S: the non-singleton crossing classes of a random sample."""
    sample = [e for e in inst.links if rng.random() < p]
    part = components(sample, inst.n)
    return part.components


def test_circle_graph_examples():
    g = circle_graph([C(1, 3), C(2, 4)])
    assert g.edges() == [(C(1, 3), C(2, 4))]
    g = circle_graph([C(1, 3), C(4, 6)])
    assert g.edges() == [] and not g.is_connected()
    g = circle_graph(BLUE + RED)
    assert not g.is_connected()
    for x, y in itertools.combinations(BLUE + RED, 2):
        assert (y in g.adjacency[x]) == crosses(x, y)


def test_components_examples():
    assert components([], 6).components == () and len(components([], 6).singletons) == 0
    part = components([C(1, 3), C(2, 4), C(4, 6)], 6)
    assert len(part.components) == 1
    assert part.components[0].links.members == (C(1, 3), C(2, 4))
    assert part.singletons.members == (C(4, 6),)


def test_two_component_configuration_classification():
    n = 12
    part = components(BLUE + RED, n)
    blue, red = part.components
    assert blue.border_vertices == {1, 7}
    assert blue.internal_vertices == {2, 3, 4, 5, 6}
    assert red.internal_vertices == {8, 9} and red.border_vertices == {7, 10}
    assert blue.external_vertices() == set(range(8, 13))
    # a link path between 5 and 2 inside the blue component
    path = link_path(blue, 5, 2)
    assert 5 in path[0].ends and 2 in path[-1].ends
    assert all(crosses(x, y) for x, y in zip(path, path[1:]))


def test_profile_of_crossing_pair():
    prof = component_profile([C(1, 3), C(2, 4)], 6)
    assert prof.covered == (1, 2, 3, 4)
    assert prof.border_chords == (C(1, 4),)
    assert prof.zones[C(1, 4)] == (5, 6)


def test_profile_covering_everything_has_no_border():
    prof = component_profile([C(1, 3), C(2, 5), C(4, 6)], 6)
    assert prof.border_chords == () and prof.zones == {}


def test_profile_rejects_non_components():
    with pytest.raises(NotAComponentError):
        component_profile([C(1, 3)], 6)
    with pytest.raises(NotAComponentError):
        component_profile([C(1, 3), C(4, 6)], 6)


def test_component_crosses_chord_cases():
    n = 12
    blue = components(BLUE, n).components[0]
    assert component_crosses_chord(blue, C(2, 6))        # internal chord
    assert not component_crosses_chord(blue, C(1, 7))    # its own border chord
    assert not component_crosses_chord(blue, C(8, 11))   # inside the zone
    assert component_crosses_chord(blue, C(5, 10))       # crosses the border chord


def test_connects_examples():
    assert connects(C(2, 4), [C(1, 3)])
    assert not connects(C(4, 6), [C(1, 3)])
    # bridging two separate components of X
    x = [C(1, 3), C(2, 4), C(5, 7), C(6, 8)]
    assert not circle_graph(x).is_connected()
    assert connects(C(3, 6), x)


def test_zone_instance_of_near_full_component_is_a_square():
    # covers every vertex but 6, so the zone holds one vertex
    comp = component_profile([C(1, 3), C(2, 4), C(3, 5), C(4, 7)], 7)
    z = zone_instance(C(5, 7), comp, list(comp.links) + [C(2, 6)])
    assert z.instance.n == 4
    assert z.border_link == C(1, 3)
    assert z.instance.links == (C(1, 3), C(2, 4))
    assert z.label == {5: 1, 6: 2, 7: 3}
    assert feasible(4, z.instance.links)


def test_zone_instance_rejects_non_border_chord():
    comp = component_profile([C(1, 3), C(2, 4)], 6)
    with pytest.raises(NotABorderChordError):
        zone_instance(C(2, 5), comp, comp.links)


def test_zone_instance_with_nested_components():
    n = 20
    outer = [C(1, 8), C(3, 14)]
    inner = [C(9, 11), C(10, 12)]
    extra = [C(12, 15), C(1, 10), C(16, 19)]
    comp = component_profile(outer, n)
    assert comp.zones[C(8, 14)] == (9, 10, 11, 12, 13)
    z = zone_instance(C(8, 14), comp, outer + inner + extra)
    assert z.instance.n == 8
    assert z.border_link == C(1, 7)
    assert z.psi[C(9, 11)] == C(2, 4) and z.psi[C(10, 12)] == C(3, 5)
    assert z.psi[C(12, 15)] == C(5, 8)
    assert z.psi[C(1, 10)] == C(3, 8)
    # both endpoints contracted: becomes a loop and disappears
    assert C(16, 19) not in z.psi
    assert z.representative[C(3, 8)] == C(1, 10)


def test_zone_instance_keeps_lexicographically_smallest_representative():
    n = 14
    outer = [C(1, 4), C(2, 9), C(3, 10)]
    comp = component_profile(outer, n)
    # both map to (2, 8): 5 is label 2 and 11, 12 contract
    links = outer + [C(5, 12), C(5, 11), C(6, 8)]
    z = zone_instance(C(4, 9), comp, links)
    assert z.psi[C(5, 11)] == z.psi[C(5, 12)]
    assert z.representative[z.psi[C(5, 11)]] == C(5, 11)


@given(st.integers(6, 11), st.integers(0, 10**6))
def test_profile_invariants(n, seed):
    rng = random.Random(seed)
    inst = random_feasible(n, 0.5, rng)
    for comp in random_partial(inst, rng, 0.6):
        cov = set(comp.covered)
        zone_vertices = [v for z in comp.zones.values() for v in z]
        assert len(zone_vertices) == len(set(zone_vertices))
        assert set(zone_vertices) == set(range(1, n + 1)) - cov
        for c in all_chords(n):
            direct = any(crosses(c, e) for e in comp.links)
            assert component_crosses_chord(comp, c) == direct
        for ab in comp.border_chords:
            z = zone_instance(ab, comp, inst.links)
            assert 4 <= z.instance.n < n
            assert feasible(z.instance.n, z.instance.links)
        for a, b in itertools.combinations(comp.covered, 2):
            assert link_path(comp, a, b) is not None


def _all_link_paths(comp, a, b):
    g = circle_graph(comp.links)
    out = []

    def walk(path):
        if b in path[-1].ends:
            out.append(list(path))
        for f in sorted(g.adjacency[path[-1]]):
            if f not in path:
                walk(path + [f])

    for e in comp.links:
        if a in e.ends:
            walk([e])
    return out


@pytest.mark.parametrize("seed", range(15))
def test_every_link_path_meets_crossing_chords(seed):
    rng = random.Random(seed)
    n = rng.randint(6, 9)
    inst = random_feasible(n, 0.5, rng)
    for comp in random_partial(inst, rng, 0.5):
        if len(comp.links) > 6:
            continue
        for a, b in itertools.combinations(comp.covered, 2):
            if abs(a - b) in (1, n - 1):
                continue
            ab = Chord(a, b)
            paths = _all_link_paths(comp, a, b)
            for cd in all_chords(n):
                if crosses(ab, cd):
                    for path in paths:
                        assert any(crosses(e, cd) for e in path)


@pytest.mark.parametrize("seed", range(40))
def test_components_crossing_a_common_chord_cover_many_vertices(seed):
    rng = random.Random(seed)
    n = rng.randint(8, 14)
    inst = random_feasible(n, 0.4, rng)
    comps = random_partial(inst, rng, 0.5)
    for e in all_chords(n):
        hit = [c for c in comps if any(crosses(e, f) for f in c.links)]
        if not hit:
            continue
        union = set().union(*(set(c.covered) for c in hit))
        assert len(union) >= len(hit) + 2 + sum(len(c.covered) - 3 for c in hit)


@pytest.mark.parametrize("seed", range(30))
def test_zone_correspondence_of_completions(seed):
    rng = random.Random(seed)
    n = rng.randint(8, 13)
    inst = random_feasible(n, 0.5, rng)
    comps = random_partial(inst, rng, 0.6)
    for comp in comps:
        for ab in comp.border_chords:
            zone = set(comp.zones[ab]) | set(ab.ends)
            inside = [c for c in comps if c is not comp and set(c.covered) <= zone]
            f_ab = [e for c in inside for e in c.links]
            q = minimal_completion(n, list(comp.links) + f_ab, inst.links)
            z = zone_instance(ab, comp, inst.links)
            image = set(z.image(f_ab)) | set(z.image(q)) | {z.border_link}
            assert feasible(z.instance.n, image)
