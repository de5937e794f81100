"""
Where the guarantees need large n
=================================

Two things that go wrong on very small cycles.

1. If the local search ends with no components at all, the completion is
   just a minimal solution, and those can have n - 2 links, one more than
   the single-pass size bound n - 3 allows.
2. The LP lower bound is only correct up to an additive constant.  On the
   octagon with its four long diagonals the empty set is critical, so the
   LP promises 56/13 > 4 links, yet the four diagonals already solve it.
"""

from fractions import Fraction

from cyclevca import (
    Chord, Instance, SearchParams, certify, exact_optimum, is_critical, local_search, lp_value,
)

alpha = Fraction(3, 4)

# 1. the zigzag (i, i+2) on a 7-cycle: every minimal solution has 5 = n - 2 links
n = 7
inst = Instance(n, tuple(Chord(i, i + 2) for i in range(1, n - 1)))
res = local_search(inst, SearchParams(alpha=alpha, n_max=8))
print("zigzag: F =", res.partial.members, " |solution| =", len(res.solution),
      " size bound =", n - 3, " optimum =", exact_optimum(inst)[0])

# 2. four long diagonals of the octagon
n = 8
inst = Instance(n, tuple(Chord(i, i + 4) for i in range(1, 5)))
print("diagonals: empty set critical:", is_critical(inst, [], alpha, 8))
print("LP value", lp_value(n, 0, alpha), "but optimum", exact_optimum(inst)[0])
rep = certify(inst, [], inst.links, alpha, 8)
print("certify caps the bound at the solution in hand:", rep.lower_bound,
      "clipped:", rep.lp_clipped)
