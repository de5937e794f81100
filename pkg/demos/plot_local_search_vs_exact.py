"""
Local search against the exact optimum
======================================

Planted instances carry a few long chained components hidden among random
chords.  The local search should pick them up, and the certified ratio
compares its answer with the best lower bound we can prove.
"""

from fractions import Fraction

from cyclevca import (
    SearchParams, alpha_schedule, certify, exact_optimum, greedy, local_search, planted_instance,
    refined_local_search, ell,
)

print(f"{'seed':>4} {'n':>3} {'|S|':>4} {'greedy':>6} {'ls1':>3} {'ls34':>3} {'rls':>3} "
      f"{'opt':>3} {'lower':>5}")
for seed in range(6):
    inst = planted_instance(16, k=2, block=3, p=0.2, seed=seed)
    g = greedy(inst)

    # single pass at alpha = 1; the smallest valid N_max there is 4.  Any
    # set with zero gain qualifies, so it tends to take more links than needed
    ls = local_search(inst, SearchParams(alpha=Fraction(1), n_max=ell(1) + 1))
    ls34 = local_search(inst, SearchParams(alpha=Fraction(3, 4), n_max=8))

    # several passes with a rising alpha
    sched = tuple(a for a in alpha_schedule(4) if a >= Fraction(3, 4))
    rls = refined_local_search(inst, SearchParams(alphas=sched, n_max=ell(sched[0]) + 1))

    opt, _ = exact_optimum(inst)
    rep = certify(inst, ls34.partial, ls34.solution, Fraction(3, 4), 8)
    print(f"{seed:>4} {inst.n:>3} {len(inst.links):>4} {len(g):>6} {len(ls.solution):>3} "
          f"{len(ls34.solution):>3} {len(rls.solution):>3} {opt:>3} {rep.lower_bound:>5}")

# the trace shows what each accepted improvement did
inst = planted_instance(16, k=2, block=3, p=0.2, seed=0)
res = local_search(inst, SearchParams(alpha=Fraction(1), n_max=4))
for step in res.trace.steps:
    print("added", step.added, "utility", step.utility_before, "->", step.utility_after,
          "new vertices", step.new_vertices)
print("completion", res.completion.members)
