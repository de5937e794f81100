"""
Circle components, border chords and zones
==========================================

Two groups of crossing chords on a 12-cycle.  We look at how each group
splits the cycle into covered vertices and zones, and shrink one zone into
a smaller instance of its own.
"""

from cyclevca import Chord, components, zone_instance, connects, link_path

n = 12
blue = [Chord(1, 3), Chord(2, 5), Chord(3, 6), Chord(4, 7)]
red = [Chord(7, 9), Chord(8, 10)]

# the crossing classes of the union are exactly the two groups
part = components(blue + red, n)
for comp in part.components:
    print("links     ", comp.links.members)
    print("covered   ", comp.covered)
    print("border    ", sorted(comp.border_vertices), "internal", sorted(comp.internal_vertices))
    print("perimeter ", comp.border_chords)
    print()

blue_comp, red_comp = part.components

# vertices 6 and 1 share no link but are joined by a path of crossing links
print("path 6 -> 1:", link_path(blue_comp, 6, 1))

# a link crossing both groups glues them together
print("(6, 8) connects both groups:", connects(Chord(6, 8), blue + red))

# the zone behind blue's border chord 1-7 holds vertices 8..12; the zone
# instance relabels that side as 1..k and contracts everything else
ab = Chord(1, 7)
links = blue + red + [Chord(6, 8), Chord(9, 12), Chord(10, 12), Chord(2, 11)]
z = zone_instance(ab, blue_comp, links)
print()
print("zone", blue_comp.zones[ab], "->", z.instance.n, "vertices")
print("labels", z.label)
for e in links:
    if e in z.psi:
        print(f"  {e!r:>12} -> {z.psi[e]!r}")
print("border link", z.border_link)
