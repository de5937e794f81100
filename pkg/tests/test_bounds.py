import itertools
import math
import random
from fractions import Fraction as Q

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from conftest import BLUE, C, random_feasible
from cyclevca.bounds import (
    CASE_ASSIGNMENTS, KINDS, PAIR_CLASSES, VARIABLES, ZERO_SET, _rst, alpha_schedule, certify,
    check_dual, check_primal, classify_vertices, curve_rows, dual_objective, ell, ell_budget,
    ell_table, f_alpha, full_cover_primal, integral_bound, interval_split, lp_certificates,
    lp_rows, lp_value, primal_objective, ratio_bound, refined_bound, first_interval_primal, dual_point,
)
from cyclevca.errors import (
    AlphaRangeError, CertificateInfeasibleError, IntervalError, OverlapError, SingletonError,
)
from cyclevca.exact import exact_optimum
from cyclevca.instance import Instance
from cyclevca.search import SearchParams, is_critical, local_search

ALPHAS = [Q(3, 5), Q(2, 3), Q(7, 10), Q(8, 11), Q(3, 4), Q(9, 10), Q(1)]
GRID = sorted({Q(j, 240) for j in range(121, 241)} | set(ALPHAS))


def test_ell_table_examples():
    t = ell_table(Q(3, 4))
    assert t.ell == 7 and t[("cc", "M")] == 7
    assert t[("bd", "M")] == 4 and t[("ad", "MP")] == 0
    assert t[("cd", "M")] == 6
    assert ell_table(Q(1))[("cd", "M")] == 2
    assert ell(Q(3, 4)) == 7


def test_ell_table_zero_set():
    t = ell_table(Q(8, 11))
    assert len(ZERO_SET) == 18
    for ij, k in itertools.product(PAIR_CLASSES, KINDS):
        if (ij, k) in ZERO_SET:
            assert t.forbidden(ij, k) and t[(ij, k)] is None
        else:
            assert t[(ij, k)] >= 0


def test_ell_rejects_bad_alpha():
    for bad in (Q(1, 2), Q(11, 10), 0.75, "x"):
        with pytest.raises(AlphaRangeError):
            ell_table(bad)


def test_ell_budget_examples():
    assert ell_budget(0, 2, 0, Q(3, 4)) == 7
    for a in GRID:
        assert ell_budget(1, 0, 2, a) == 0


@pytest.mark.parametrize("a", GRID[::7])
def test_ell_budget_reproduces_table(a):
    t = ell_table(a)
    for key, triple in CASE_ASSIGNMENTS.items():
        want = t[key] if t[key] is not None else 0
        assert ell_budget(*triple, a) == want


@pytest.mark.parametrize("a", GRID[::5])
def test_ell_budget_never_exceeds_ell(a):
    for x, vm, vf in itertools.product((0, 1), range(3), range(3)):
        if vm + vf <= 2:
            assert 0 <= ell_budget(x, vm, vf, a) <= ell(a)


def test_f_alpha_examples():
    assert f_alpha(Q(3, 4)) == Q(3, 22)
    assert f_alpha(Q(8, 11)) == Q(3, 22)
    assert f_alpha(Q(1)) == Q(3, 10)
    assert ratio_bound(Q(8, 11)) == Q(233, 121)
    assert ratio_bound(Q(3, 4)) == Q(85, 44)


def test_f_alpha_is_nondecreasing_with_jumps_on_schedule():
    fine = sorted({Q(j, 2000) for j in range(1001, 2001)})
    sched = set(alpha_schedule(2000))
    vals = [f_alpha(a) for a in fine]
    for (a, fa), (b, fb) in zip(zip(fine, vals), zip(fine[1:], vals[1:])):
        assert fa <= fb
        if fa != fb:
            assert any(a < p <= b for p in sched)


def test_ratio_bound_minimum_on_grid():
    rows = curve_rows("bound")
    best = min(rows, key=lambda r: r[2])
    assert best[0] == Q(8, 11) and best[2] == Q(233, 121)


def test_three_s_exceeds_r():
    for a in GRID:
        r, s, _ = _rst(a)
        assert 3 * s - r > 0


def test_lp_value_examples():
    a = Q(3, 4)
    assert _rst(a) == (21, 11, 39)
    for n in (13, 26, 100):
        assert lp_value(n, 0, a) == Q(7 * n, 13)
    assert lp_value(22, 3, a) == 11
    assert lp_value(22, 22, a) == 11
    assert lp_value(39, 0, a) == 21


@pytest.mark.parametrize("a", ALPHAS)
def test_lp_value_shape(a):
    n = 60
    vals = [lp_value(n, v, a) for v in range(n + 1)]
    assert all(x >= y for x, y in zip(vals, vals[1:]))
    split = interval_split(n, a)
    for v, val in enumerate(vals):
        assert (val == Q(n, 2)) == (v >= split)
    # at the split the linear piece meets n/2
    r, s, t = _rst(a)
    assert (r * n - s * split) / t == Q(n, 2)


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("n", [22, 39, 100])
def test_certificates_on_every_cover_size(a, n):
    for v in range(n + 1):
        cert = lp_certificates(n, v, a)
        assert cert.objective == lp_value(n, v, a)
        assert cert.interval == ("I1" if v < interval_split(n, a) else "I2")


def test_certificate_examples_at_three_quarters():
    y = dual_point(Q(3, 4), 1)
    assert y[2] == Q(7, 13) and y[5] == Q(10, 39) and y[0] == Q(10, 39)
    for n, v in ((39, 0), (39, 5), (100, 13)):
        assert dual_objective(y, n, v, Q(3, 4)) == Q(21 * n - 11 * v, 39)
    assert dual_point(Q(3, 4), 2) == (Q(1, 2),) * 3 + (0, 0, Q(1, 2), 0)
    # left end point of the split: first-interval primal already reaches n/2
    x = first_interval_primal(22, 3, Q(3, 4))
    check_primal(x, 22, 3, Q(3, 4))
    assert primal_objective(x) == 11
    assert lp_certificates(22, 3, Q(3, 4)).objective == 11


def test_broken_certificates_name_the_row():
    a = Q(3, 4)
    x = first_interval_primal(39, 0, a)
    x["cd_M"] -= 1
    with pytest.raises(CertificateInfeasibleError) as exc:
        check_primal(x, 39, 0, a)
    assert exc.value.constraint == "cover_D"
    y = list(dual_point(a, 1))
    y[2] += 1
    with pytest.raises(CertificateInfeasibleError):
        check_dual(tuple(y), a)
    with pytest.raises(IntervalError):
        lp_certificates(10, 11, a)


def solve_lp(a, n, v, form):
    rows = lp_rows(a, form)
    A = np.array([[-float(r.coeffs.get(var, 0)) for var in VARIABLES] for r in rows])
    b = np.array([-float(r.rhs(n, v)) for r in rows])
    c = np.array([0.0 if var in ("x_A", "x_B") else 1.0 for var in VARIABLES])
    res = linprog(c, A_ub=A, b_ub=b, bounds=[(0, None)] * len(VARIABLES), method="highs")
    assert res.status == 0
    return res.fun


@pytest.mark.parametrize("a", ALPHAS)
def test_closed_form_matches_numerical_lp(a):
    n = 100
    for v in range(0, n + 1, 5):
        assert solve_lp(a, n, v, "substituted") == pytest.approx(float(lp_value(n, v, a)), abs=1e-7)


def test_displayed_cover_row_allows_values_below_half():
    n, a = 40, Q(3, 4)
    x = {k: Q(0) for k in VARIABLES}
    x["x_A"] = Q(n)
    x["aa_R"] = Q(n, 2)
    check_primal(x, n, 0, a, form="displayed")
    assert primal_objective(x) == n / 2 < lp_value(n, 0, a)
    with pytest.raises(CertificateInfeasibleError):
        check_primal(x, n, 0, a)
    assert solve_lp(a, n, 0, "displayed") <= n / 2 + 1e-9


def test_full_cover_primal():
    for n in (6, 30):
        x = full_cover_primal(n)
        for a in ALPHAS:
            check_primal(x, n, n, a)
        assert primal_objective(x) == Q(n, 2)


def test_integral_bound():
    assert integral_bound(1) == Q(127, 65)
    assert float(integral_bound(10)) == pytest.approx(1.87111, abs=1e-5)
    big = integral_bound(2000)
    assert Q(18700, 10000) < big <= Q(187032, 100000)
    prev = integral_bound(1)
    for k in range(2, 30):
        cur = integral_bound(k)
        assert cur <= prev
        prev = cur
    assert refined_bound([Q(8, 11)]) == ratio_bound(Q(8, 11))


def test_classify_vertices():
    a, b, c, d = classify_vertices(8, [], [C(1, 3), C(5, 7)])
    assert not a and not b and c == {1, 3, 5, 7} and d == {2, 4, 6, 8}
    a, b, c, d = classify_vertices(12, BLUE)
    assert a == set(range(2, 7)) and b == {1, 7} and not c
    assert d == set(range(8, 13))
    with pytest.raises(OverlapError):
        classify_vertices(12, BLUE, [C(2, 9)])
    with pytest.raises(SingletonError):
        classify_vertices(12, [C(1, 3)])


@given(st.integers(6, 12), st.integers(0, 10**6))
def test_classification_is_a_partition(n, seed):
    rng = random.Random(seed)
    inst = random_feasible(n, 0.5, rng)
    res = local_search(inst, SearchParams(alpha=Q(1), n_max=4))
    from cyclevca.instance import vertices_of
    vf = vertices_of(res.partial)
    matching, used = [], set(vf)
    for e in inst.links:
        if not (set(e.ends) & used):
            matching.append(e)
            used |= set(e.ends)
    a, b, c, d = classify_vertices(n, res.partial, matching)
    assert len(a) + len(b) == len(vf)
    assert a | b | c | d == set(range(1, n + 1))
    assert len(a) + len(b) + len(c) + len(d) == n


def test_certify_examples():
    inst = Instance(4, (C(1, 3), C(2, 4)))
    rep = certify(inst, [], inst.links, Q(3, 4), 8)
    assert rep.ratio == 1 and rep.lower_bound == 2
    assert rep.lp_bound == Q(28, 13) and rep.lp_clipped
    # rotated diagonals: one component covering every vertex
    n = 12
    diag = tuple(C(i, i + n // 2) for i in range(1, n // 2 + 1))
    inst = Instance(n, diag)
    res = local_search(inst, SearchParams(alpha=Q(3, 4), n_max=8))
    rep = certify(inst, res.partial, res.solution, Q(3, 4), 8)
    assert rep.critical and rep.lp_bound == n // 2
    assert rep.lower_bound == n // 2 and rep.ratio == 1


def test_certify_skips_lp_for_small_n_max():
    inst = Instance(4, (C(1, 3), C(2, 4)))
    rep = certify(inst, [], inst.links, Q(3, 4), 7)
    assert rep.lp_bound is None and not rep.critical


@pytest.mark.parametrize("seed", range(20))
def test_certified_ratio_within_guarantee(seed):
    rng = random.Random(seed)
    n = rng.randint(8, 12)
    inst = random_feasible(n, 0.45, rng, cap=30)
    for a in (Q(3, 4), Q(1)):
        n_max = ell(a) + 1
        res = local_search(inst, SearchParams(alpha=a, n_max=n_max))
        rep = certify(inst, res.partial, res.solution, a, n_max)
        assert rep.critical and rep.ratio >= 1
        assert rep.ratio <= ratio_bound(a)


def test_lp_bound_can_exceed_the_optimum_on_small_instances():
    # four long diagonals of the octagon: the only solution is all of them,
    # and the empty set is critical, so the LP bound claims 56/13 > 4
    n = 8
    inst = Instance(n, tuple(C(i, i + 4) for i in range(1, 5)))
    assert exact_optimum(inst)[0] == 4
    assert is_critical(inst, [], Q(3, 4), 8)
    assert lp_value(n, 0, Q(3, 4)) == Q(56, 13)
    rep = certify(inst, [], inst.links, Q(3, 4), 8)
    assert math.ceil(rep.lp_bound) == 5 > 4
    assert rep.lp_clipped and rep.lower_bound == 4 and rep.ratio == 1
    # a random instance shows the same thing
    links = [(1, 4), (1, 5), (1, 6), (2, 6), (2, 7), (3, 5), (3, 6), (4, 7), (4, 8), (5, 8)]
    inst = Instance(8, tuple(C(a, b) for a, b in links))
    opt, witness = exact_optimum(inst)
    assert opt == 4 and witness.members == (C(1, 4), C(2, 7), C(3, 6), C(5, 8))
    assert is_critical(inst, [], Q(3, 4), 8)
    assert math.ceil(lp_value(8, 0, Q(3, 4))) == 5
