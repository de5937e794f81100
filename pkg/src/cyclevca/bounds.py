"""Analysis constants and lower bounds, all in exact rational arithmetic.

The LP lower bound is never solved numerically.  Its value has a closed form
(:func:`lp_value`) and explicit primal and dual points are built and checked
row by row against a transcribed constraint table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    AlphaRangeError,
    CertificateInfeasibleError,
    IntervalError,
    OverlapError,
    SingletonError,
)
from .instance import Chord, vertices_of

HALF = Fraction(1, 2)

PAIR_CLASSES = ("aa", "ab", "ac", "ad", "bb", "bc", "bd", "cc", "cd", "dd")
KINDS = ("M", "P", "MP", "R")

# (pair class, kind) combinations that no optimal link can have
ZERO_SET = frozenset({
    ("aa", "M"), ("aa", "MP"), ("aa", "P"), ("ab", "M"), ("ab", "MP"),
    ("ac", "M"), ("ac", "R"), ("ad", "M"), ("ad", "R"), ("bb", "MP"),
    ("cc", "P"), ("cc", "MP"), ("cd", "P"), ("cd", "MP"), ("dd", "M"),
    ("dd", "P"), ("dd", "MP"), ("dd", "R"),
})

# numerators (c0, c1) of ceil((c0 - c1*alpha) / (2 alpha - 1)); clamp marks the ceil_+ entries
_ELL_FORMULAS = {
    ("ac", "MP"): (2, 2, False),
    ("ad", "MP"): (2, 3, True),
    ("bb", "M"): (3, 2, False),
    ("bc", "M"): (4, 2, False),
    ("bc", "MP"): (2, 2, False),
    ("bd", "M"): (4, 3, False),
    ("bd", "MP"): (2, 3, True),
    ("cc", "M"): (5, 2, False),
    ("cd", "M"): (5, 3, False),
}

# (X, V_M, V_F) indicator triples from which each budget is obtained
CASE_ASSIGNMENTS = {
    ("ac", "MP"): (1, 1, 1),
    ("ad", "MP"): (1, 0, 1),
    ("bb", "M"): (0, 0, 2),
    ("bc", "M"): (0, 1, 1),
    ("bc", "MP"): (1, 1, 1),
    ("bd", "M"): (0, 0, 1),
    ("bd", "MP"): (1, 0, 1),
    ("cc", "M"): (0, 2, 0),
    ("cd", "M"): (0, 1, 0),
    ("bb", "MP"): (1, 0, 2),
}


def as_alpha(alpha) -> Fraction:
    """Coerce to an exact rational in (1/2, 1].  Floats are refused."""
    if isinstance(alpha, float):
        raise AlphaRangeError("alpha must be an exact rational, not a float")
    try:
        a = Fraction(alpha)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise AlphaRangeError(f"cannot read alpha from {alpha!r}") from exc
    if not (HALF < a <= 1):
        raise AlphaRangeError(f"alpha must lie in (1/2, 1], got {a}")
    return a


def _ceil_ratio(c0: int, c1: int, alpha: Fraction) -> int:
    return math.ceil((c0 - c1 * alpha) / (2 * alpha - 1))


def ell(alpha) -> int:
    """Largest number of matching links one link can connect at criticality."""
    return _ceil_ratio(5, 2, as_alpha(alpha))


def ell_budget(x: int, v_m: int, v_f: int, alpha) -> int:
    a = as_alpha(alpha)
    if x not in (0, 1) or not (0 <= v_m <= 2 and 0 <= v_f <= 2) or v_m + v_f > 2:
        raise ValueError(f"bad indicator triple ({x}, {v_m}, {v_f})")
    return max(0, math.ceil((5 - 2 * x - v_f - (4 - v_m - v_f) * a) / (2 * a - 1)))


@dataclass(frozen=True)
class EllTable:
    """Budgets per (pair class, kind); ``None`` marks a forbidden combination."""

    alpha: Fraction
    entries: Mapping[tuple[str, str], int | None]

    def __getitem__(self, key: tuple[str, str]) -> int | None:
        return self.entries[key]

    def forbidden(self, ij: str, k: str) -> bool:
        return self.entries[(ij, k)] is None

    @property
    def ell(self) -> int:
        return self.entries[("cc", "M")]


def ell_table(alpha) -> EllTable:
    a = as_alpha(alpha)
    entries: dict[tuple[str, str], int | None] = {}
    for ij in PAIR_CLASSES:
        for k in KINDS:
            if (ij, k) in ZERO_SET:
                entries[(ij, k)] = None
            elif (ij, k) in _ELL_FORMULAS:
                c0, c1, clamp = _ELL_FORMULAS[(ij, k)]
                v = _ceil_ratio(c0, c1, a)
                entries[(ij, k)] = max(v, 0) if clamp else v
            else:
                entries[(ij, k)] = 0
    return EllTable(a, entries)


def _rst(alpha) -> tuple[int, int, int]:
    t = ell_table(alpha)
    r = 3 + 3 * t[("cd", "M")]
    s = 3 + 2 * t[("bd", "M")] + t[("ad", "MP")]
    tt = 3 + 6 * t[("cd", "M")]
    return r, s, tt


def _s_only(a: Fraction) -> int:
    return 3 + 2 * _ceil_ratio(4, 3, a) + max(0, _ceil_ratio(2, 3, a))


def f_alpha(alpha) -> Fraction:
    return Fraction(3, 2 * _s_only(as_alpha(alpha)))


def w_value(x, alpha) -> Fraction:
    r, s, t = _rst(alpha)
    return (r - s * Fraction(x)) / t


def lp_value(n: int, v_f: int, alpha) -> Fraction:
    """Optimal value of the lower-bounding LP for a critical F covering ``v_f`` vertices."""
    if not (0 <= v_f <= n):
        raise ValueError(f"need 0 <= |V(F)| <= n, got {v_f} with n={n}")
    r, s, t = _rst(alpha)
    return max(Fraction(n, 2), Fraction(r * n - s * v_f, t))


def interval_split(n: int, alpha) -> Fraction:
    """Left end of the second interval: below it the LP value exceeds n/2."""
    return n * f_alpha(alpha)


def ratio_bound(alpha) -> Fraction:
    a = as_alpha(alpha)
    return 2 - 2 * (1 - a) * f_alpha(a)


def alpha_schedule(k_max: int) -> list[Fraction]:
    """Breakpoints of f_alpha down to the k_max-th of each family, ascending, ending at 1."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    pts = {Fraction(1)}
    for k in range(1, k_max + 1):
        for p in (Fraction(k + 4, 2 * k + 3), Fraction(k + 2, 2 * k + 3)):
            if HALF < p <= 1:
                pts.add(p)
    return sorted(pts)


def _tree_sum(terms: list[Fraction]) -> Fraction:
    # pairwise summation keeps the intermediate denominators small
    if not terms:
        return Fraction(0)
    while len(terms) > 1:
        nxt = [terms[i] + terms[i + 1] for i in range(0, len(terms) - 1, 2)]
        if len(terms) % 2:
            nxt.append(terms[-1])
        terms = nxt
    return terms[0]


def refined_bound(alphas: Iterable) -> Fraction:
    """Guarantee of the multi-pass search for an ascending alpha list (1 is appended if absent)."""
    pts = [as_alpha(a) for a in alphas]
    if not pts:
        raise ValueError("need at least one alpha")
    if any(x >= y for x, y in zip(pts, pts[1:])):
        raise ValueError("alphas must be strictly ascending")
    if pts[-1] != 1:
        pts.append(Fraction(1))
    # f is constant on long runs; merge them before summing
    svals = [_s_only(a) for a in pts]
    terms = []
    j = 0
    while j < len(pts) - 1:
        k = j + 1
        while k < len(pts) - 1 and svals[k] == svals[j]:
            k += 1
        terms.append((pts[k] - pts[j]) * Fraction(3, 2 * svals[j]))
        j = k
    return 2 - 2 * _tree_sum(terms)


def integral_bound(k_max: int) -> Fraction:
    return refined_bound(alpha_schedule(k_max))


# ---------------------------------------------------------------- the LP

VARIABLES = (
    "x_M", "x_A", "x_B",
    "aa_R", "ab_P", "bb_M", "bb_P", "cc_M", "ad_P", "ad_MP",
    "ac_MP", "bc_M", "bc_MP", "bd_M", "bd_MP", "cd_M",
)
COSTS = {v: (0 if v in ("x_A", "x_B") else 1) for v in VARIABLES}


@dataclass(frozen=True)
class Row:
    """One ``>=`` row: sum(coeffs[v] * x_v) >= rhs_n * n + rhs_v * |V(F)|."""

    name: str
    coeffs: Mapping[str, Fraction]
    rhs_n: int
    rhs_v: int

    def rhs(self, n, v_f) -> Fraction:
        return Fraction(self.rhs_n * n + self.rhs_v * v_f)


def lp_rows(alpha, form: str = "substituted") -> list[Row]:
    """The simplified LP as data.

    ``form="substituted"`` is the program the closed-form dual points are
    feasible for: the cover row for D uses |A|+|B| = |V(F)| and the perimeter
    row is doubled.  ``form="displayed"`` keeps the cover row as
    ``... >= n - 2x_M - x_A - x_B``; its optimum can drop below n/2.
    """
    t = ell_table(alpha)
    L = lambda ij, k: t[(ij, k)]  # noqa: E731
    r1 = {"aa_R": 2, "ab_P": 1, "ad_P": 1, "ad_MP": 1, "ac_MP": 1, "x_A": -1}
    r2 = {"ab_P": 1, "bb_M": 2, "bb_P": 2, "bc_M": 1, "bc_MP": 1, "bd_M": 1,
          "bd_MP": 1, "x_B": -1}
    cover_d = {"ad_P": 1, "ad_MP": 1, "bd_M": 1, "bd_MP": 1, "cd_M": 1, "x_M": 2}
    r4 = {v: 2 for v in ("ab_P", "ad_P", "ad_MP", "ac_MP", "bb_P", "bc_MP", "bd_MP")}
    r4["x_B"] = -1
    r5 = {"bb_M": L("bb", "M"), "ad_MP": L("ad", "MP"), "ac_MP": L("ac", "MP"),
          "bd_M": L("bd", "M"), "bc_M": L("bc", "M"), "bc_MP": L("bc", "MP"),
          "cd_M": L("cd", "M"), "bd_MP": L("bd", "MP"), "cc_M": L("cc", "M"), "x_M": -1}
    if form == "substituted":
        r3 = Row("cover_D", cover_d, 1, -1)
    elif form == "displayed":
        r3 = Row("cover_D", {**cover_d, "x_A": 1, "x_B": 1}, 1, 0)
    else:
        raise ValueError(f"unknown LP form {form!r}")
    rows = [
        Row("cover_A", r1, 0, 0),
        Row("cover_B", r2, 0, 0),
        r3,
        Row("perimeter", r4, 0, 0),
        Row("matching", r5, 0, 0),
        Row("covered_F", {"x_A": 1, "x_B": 1}, 0, 1),
        Row("capacity", {"x_M": -2, "x_A": -1, "x_B": -1}, -1, 0),
    ]
    return [Row(r.name, {k: Fraction(v) for k, v in r.coeffs.items() if v}, r.rhs_n, r.rhs_v)
            for r in rows]


@dataclass(frozen=True)
class DualRow:
    """Column of the primal read as a dual row: sum_i coeffs[i] * y_i <= cost."""

    variable: str
    coeffs: tuple[Fraction, ...]
    cost: int


def dual_rows(alpha, form: str = "substituted") -> list[DualRow]:
    rows = lp_rows(alpha, form)
    return [DualRow(v, tuple(r.coeffs.get(v, Fraction(0)) for r in rows), COSTS[v])
            for v in VARIABLES]


def primal_objective(x: Mapping[str, Fraction]) -> Fraction:
    return sum((COSTS[v] * Fraction(x.get(v, 0)) for v in VARIABLES), Fraction(0))


def dual_objective(y: tuple, n: int, v_f: int, alpha, form: str = "substituted") -> Fraction:
    rows = lp_rows(alpha, form)
    return sum((Fraction(yi) * r.rhs(n, v_f) for yi, r in zip(y, rows)), Fraction(0))


def check_primal(x: Mapping[str, Fraction], n: int, v_f: int, alpha,
                 form: str = "substituted") -> None:
    for v in VARIABLES:
        if Fraction(x.get(v, 0)) < 0:
            raise CertificateInfeasibleError(f"primal variable {v} is negative", v)
    for r in lp_rows(alpha, form):
        lhs = sum((c * Fraction(x.get(v, 0)) for v, c in r.coeffs.items()), Fraction(0))
        if lhs < r.rhs(n, v_f):
            raise CertificateInfeasibleError(
                f"primal row {r.name}: {lhs} < {r.rhs(n, v_f)}", r.name)


def check_dual(y: tuple, alpha, form: str = "substituted") -> None:
    for i, yi in enumerate(y):
        if Fraction(yi) < 0:
            raise CertificateInfeasibleError(f"dual variable y{i + 1} is negative", f"y{i + 1}")
    for d in dual_rows(alpha, form):
        lhs = sum((c * Fraction(yi) for c, yi in zip(d.coeffs, y)), Fraction(0))
        if lhs > d.cost:
            raise CertificateInfeasibleError(
                f"dual row for {d.variable}: {lhs} > {d.cost}", d.variable)


def first_interval_primal(n: int, v_f: int, alpha) -> dict[str, Fraction]:
    """Optimal primal point for |V(F)| in the first interval."""
    a = as_alpha(alpha)
    t = ell_table(a)
    lcd, lbd, lad = t[("cd", "M")], t[("bd", "M")], t[("ad", "MP")]
    v = Fraction(v_f)
    den = 3 + 6 * lcd
    x = {k: Fraction(0) for k in VARIABLES}
    x["x_A"] = v / 3
    x["x_B"] = 2 * v / 3
    x["x_M"] = (3 * lcd * n + (lad + 2 * lbd - 6 * lcd) * v) / den
    x["ad_P" if a > Fraction(2, 3) else "ad_MP"] = v / 3
    x["bd_M"] = 2 * v / 3
    x["cd_M"] = (3 * n - v * (2 * lad + 4 * lbd + 6)) / den
    return x


def full_cover_primal(n: int) -> dict[str, Fraction]:
    """A primal point of value n/2 when F covers every vertex."""
    x = {k: Fraction(0) for k in VARIABLES}
    x["x_A"] = Fraction(n, 3)
    x["x_B"] = Fraction(2 * n, 3)
    x["aa_R"] = Fraction(n, 6)
    x["bb_P"] = Fraction(n, 3)
    return x


def second_interval_primal(n: int, v_f, alpha) -> dict[str, Fraction]:
    """Primal point of value n/2 on the second interval.

    Interpolates between the first-interval point at its right end and
    :func:`full_cover_primal`; every row is linear in (x, |V(F)|), so the
    mixture stays feasible.
    """
    v0 = interval_split(n, alpha)
    v = Fraction(v_f)
    if v < v0:
        raise IntervalError(f"|V(F)|={v_f} lies left of {v0}")
    lam = Fraction(1) if v0 == n else (v - v0) / (n - v0)
    left = first_interval_primal(n, v0, alpha)
    right = full_cover_primal(n)
    return {k: (1 - lam) * left[k] + lam * right[k] for k in VARIABLES}


def dual_point(alpha, column: int) -> tuple[Fraction, ...]:
    """Dual points: column 1 for the first interval, column 2 for either."""
    t = ell_table(alpha)
    lcd, lbd, lad = t[("cd", "M")], t[("bd", "M")], t[("ad", "MP")]
    if column == 1:
        d = 2 * lcd + 1
        y1 = Fraction(3 * lcd - 2 * lbd - lad, 3 * d)
        return (y1, Fraction(lcd - lbd, d), Fraction(lcd + 1, d),
                Fraction(lbd - lad, 3 * d), Fraction(1, d), y1, Fraction(0))
    if column == 2:
        h = HALF
        return (h, h, h, Fraction(0), Fraction(0), h, Fraction(0))
    raise ValueError("column must be 1 or 2")


@dataclass(frozen=True)
class LpCertificate:
    n: int
    v_f: int
    alpha: Fraction
    interval: str
    primal: Mapping[str, Fraction]
    dual: tuple[Fraction, ...]
    objective: Fraction


def lp_certificates(n: int, v_f, alpha) -> LpCertificate:
    """Build and verify matching primal and dual points; the common value is lp_value."""
    a = as_alpha(alpha)
    if not (0 <= v_f <= n):
        raise IntervalError(f"|V(F)|={v_f} outside [0, {n}]")
    if v_f < interval_split(n, a):
        interval, x, y = "I1", first_interval_primal(n, v_f, a), dual_point(a, 1)
    else:
        interval, x, y = "I2", second_interval_primal(n, v_f, a), dual_point(a, 2)
    check_primal(x, n, v_f, a)
    check_dual(y, a)
    po = primal_objective(x)
    do = dual_objective(y, n, v_f, a)
    if po != do:
        raise CertificateInfeasibleError(f"objectives differ: primal {po}, dual {do}", "objective")
    r, s, t = _rst(a)
    expected = max(Fraction(n, 2), (r * n - s * Fraction(v_f)) / t)
    if po != expected:
        raise CertificateInfeasibleError(
            f"certified value {po} differs from closed form {expected}", "objective")
    return LpCertificate(n, v_f, a, interval, x, y, po)


# ---------------------------------------------------------------- certificates per instance


def classify_vertices(n: int, partial: Iterable[Chord], matching: Iterable[Chord] = ()):
    """Split [n] into internal (A), border (B), matched (C) and remaining (D) vertices."""
    from .circle import components

    part = components(partial, n)
    if not part.singleton_free:
        raise SingletonError("F has a link crossing no other link of F")
    covered = set()
    border = set()
    for comp in part.components:
        covered.update(comp.covered)
        border.update(comp.border_vertices)
    c = vertices_of(matching)
    if c & covered:
        raise OverlapError("the matching touches V(F)")
    a = covered - border
    d = set(range(1, n + 1)) - covered - c
    return frozenset(a), frozenset(border), frozenset(c), frozenset(d)


@dataclass(frozen=True)
class BoundsReport:
    n: int
    v_f: int
    alpha: Fraction
    size: int
    half_bound: int
    lp_bound: Fraction | None
    lower_bound: int
    ratio: Fraction
    critical: bool = field(default=False)
    # the LP value is only a lower bound up to an additive constant; on small
    # instances it can overshoot a solution in hand and is then cut back
    lp_clipped: bool = field(default=False)


def certify(inst, partial, solution, alpha, n_max: int) -> BoundsReport:
    """Lower-bound |OPT| and report the certified ratio of ``solution``.

    The LP bound is used only if ``partial`` is re-verified critical and
    n_max exceeds the connect budget.  Since |OPT| is an integer, the
    reported lower bound takes the ceiling.  ``solution`` is feasible, so no
    lower bound above its size can be right; the LP part is capped there and
    ``lp_clipped`` records when that happened.
    """
    from .search import is_critical

    a = as_alpha(alpha)
    n = inst.n
    partial = tuple(partial)
    v_f = len(vertices_of(partial))
    half = -(-n // 2)
    lp = None
    crit = False
    if n_max > ell(a):
        crit = is_critical(inst, partial, a, n_max)
        if crit:
            lp = lp_value(n, v_f, a)
    size = len(tuple(solution))
    clipped = lp is not None and math.ceil(lp) > size
    lower = max(half, min(math.ceil(lp), size)) if lp is not None else half
    return BoundsReport(n, v_f, a, size, half, lp, lower, Fraction(size, lower), crit, clipped)


def curve_rows(what: str, k_max: int = 20) -> list[tuple]:
    if what == "falpha":
        return [(a, f_alpha(a), ratio_bound(a)) for a in alpha_schedule(k_max)]
    if what == "bound":
        # uniform grid, so the minimum at 8/11 shows up between grid points too
        grid = sorted({Fraction(j, 100) for j in range(51, 101)} | {Fraction(8, 11)})
        return [(a, f_alpha(a), ratio_bound(a)) for a in grid]
    if what == "integral":
        return [(k, Fraction(k + 2, 2 * k + 3), integral_bound(k)) for k in range(1, k_max + 1)]
    raise ValueError(f"unknown curve {what!r}")
