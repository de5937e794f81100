"""Command line: ``cyclevca gen|check|solve|bench|curve``.

Exit codes: 0 ok, 1 infeasible or failed validation, 2 budget or cap
exceeded, 3 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bounds
from .errors import (
    BudgetExceededError,
    CapExceeded,
    FormatError,
    GenerationFailedError,
    InfeasibleCandidateSetError,
    InfeasibleInputError,
    VCAError,
)
from .exact import BnBConfig, exact_optimum
from .feasibility import is_feasible_components, is_feasible_crossing, is_three_connected
from .generate import all_chords_instance, planted_instance, random_instance
from .instance import Instance, make_chord, parse_instance, serialize_instance, vertices_of
from .search import SearchParams, greedy, local_search, refined_local_search

EXIT_OK, EXIT_INFEASIBLE, EXIT_BUDGET, EXIT_FORMAT = 0, 1, 2, 3


def parse_rational(text: str) -> Fraction:
    """Accept ``p/q`` or an integer; decimals are refused to keep alpha exact."""
    t = text.strip()
    if "." in t or "e" in t.lower():
        raise FormatError(f"write rationals as p/q, not decimals: {text!r}")
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {text!r}") from exc


def fmt_q(x: Fraction | None) -> str | None:
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _write(data: bytes, path: str | None):
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


# ---------------------------------------------------------------- gen


def cmd_gen(args) -> int:
    if args.kind == "all_chords":
        inst = all_chords_instance(args.n)
    elif args.kind == "random":
        inst = random_instance(args.n, args.p, args.seed)
    else:
        inst = planted_instance(args.n, args.k, args.block, args.p, args.seed)
    _write(serialize_instance(inst, args.format), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- check


def _verdicts(n, links) -> dict:
    a = is_feasible_crossing(n, links)
    b = is_feasible_components(n, links)
    c = is_three_connected(n, links)
    witness = a.witness if not a.feasible else None
    return {
        "crossing": a.feasible,
        "components": b.feasible,
        "brute_force": c,
        "witness": None if witness is None else [witness.a, witness.b],
    }


def cmd_check(args) -> int:
    inst = parse_instance(_read(args.file))
    report = {"n": inst.n, "links": len(inst.links), "S": _verdicts(inst.n, inst.links)}
    sets = [report["S"]]
    if args.subset:
        raw = json.loads(_read(args.subset).decode())
        pairs = raw["links"] if isinstance(raw, dict) else raw
        try:
            sub = [make_chord(int(a), int(b), inst.n) for a, b in pairs]
        except (TypeError, ValueError) as exc:
            raise FormatError(f"bad subset file: {exc}") from exc
        missing = [e for e in sub if e not in set(inst.links)]
        if missing:
            raise FormatError(f"subset uses links outside S: {missing[0]!r}")
        report["subset"] = _verdicts(inst.n, sub)
        sets.append(report["subset"])
    print(json.dumps(report, separators=(",", ":")))
    for v in sets:
        if len({v["crossing"], v["components"], v["brute_force"]}) != 1:
            print("internal error: feasibility oracles disagree", file=sys.stderr)
            return EXIT_INFEASIBLE
        if not v["crossing"]:
            return EXIT_INFEASIBLE
    return EXIT_OK


# ---------------------------------------------------------------- solve


def _params(args) -> SearchParams:
    alphas = None
    if args.algo == "rls":
        if args.alphas:
            alphas = tuple(parse_rational(x) for x in args.alphas.split(","))
        else:
            alphas = tuple(bounds.alpha_schedule(args.kmax))
    try:
        alpha = bounds.as_alpha(parse_rational(args.alpha))
        if alphas is not None:
            alphas = tuple(bounds.as_alpha(a) for a in alphas)
    except bounds.AlphaRangeError as exc:
        raise FormatError(str(exc)) from exc
    lowest = min(alphas) if alphas else alpha
    n_max = args.nmax if args.nmax is not None else bounds.ell(lowest) + 1
    try:
        return SearchParams(alpha, n_max, alphas, args.max_candidates, args.time_budget)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def solve_instance(inst: Instance, args) -> dict:
    start = time.perf_counter()
    trace = None
    lp = None
    if args.algo == "greedy":
        sol = greedy(inst)
        lower = -(-inst.n // 2)
    elif args.algo == "exact":
        cfg = BnBConfig(args.node_budget, args.time_budget or 120.0)
        _, sol = exact_optimum(inst, cfg)
        lower = len(sol)
    else:
        params = _params(args)
        res = (local_search if args.algo == "ls" else refined_local_search)(inst, params)
        sol = res.solution
        last = params.alphas[-1] if params.alphas else params.alpha
        rep = bounds.certify(inst, res.partial, sol, last, params.n_max)
        lower, lp = rep.lower_bound, rep.lp_bound
        trace = res.trace.summary()
        trace["lp_clipped"] = rep.lp_clipped
        v_f = len(vertices_of(res.partial))
        # single-pass size guarantee; it can fail when F ends empty, see README
        bound = inst.n - 3 - (1 - last) * v_f
        trace["size_bound"] = fmt_q(bound)
        trace["size_bound_holds"] = len(sol) <= bound
    elapsed = int(round((time.perf_counter() - start) * 1000))
    if not is_three_connected(inst.n, sol):
        raise InfeasibleInputError("solver output failed 3-connectivity re-verification")
    out = {
        "n": inst.n,
        "algo": args.algo,
        "solution": [[e.a, e.b] for e in sol],
        "size": len(sol),
        "lower_bound": lower,
        "lp_bound": fmt_q(lp),
        "ratio": fmt_q(Fraction(len(sol), lower)),
        "time_ms": 0 if args.no_timing else elapsed,
    }
    if trace is not None:
        out["trace"] = trace
    return out


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.file))
    out = solve_instance(inst, args)
    print(json.dumps(out, separators=(",", ":")))
    return EXIT_OK


# ---------------------------------------------------------------- bench

BENCH_COLUMNS = ["n", "p", "seed", "algo", "size", "exact", "ratio", "time_ms"]


def _bench_one(job):
    n, p, seed, algos, opts = job
    inst = random_instance(n, p, seed)
    exact_size = None
    if "exact" in algos or opts["with_exact"]:
        exact_size, _ = exact_optimum(inst, BnBConfig(opts["node_budget"]))
    rows = []
    for algo in algos:
        ns = argparse.Namespace(algo=algo, alpha=opts["alpha"], nmax=opts["nmax"], alphas=None,
                                kmax=opts["kmax"], max_candidates=None, time_budget=None,
                                node_budget=opts["node_budget"], no_timing=opts["no_timing"])
        res = solve_instance(inst, ns)
        ratio = fmt_q(Fraction(res["size"], exact_size)) if exact_size else ""
        rows.append([n, p, seed, algo, res["size"],
                     "" if exact_size is None else exact_size, ratio, res["time_ms"]])
    return rows


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("VCA_THREADS", "1")))
    except ValueError:
        return 1


def bench_rows(n_list, p_list, seeds, algos, opts) -> list[list]:
    jobs = [(n, p, s, algos, opts) for n in n_list for p in p_list for s in seeds]
    workers = min(_threads(), len(jobs)) if jobs else 1
    if workers <= 1:
        results = [_bench_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers) as pool:
            # map keeps input order regardless of completion order
            results = list(pool.map(_bench_one, jobs))
    return [row for rows in results for row in rows]


def cmd_bench(args) -> int:
    try:
        n_list = [int(x) for x in args.n_list.split(",")]
        p_list = [float(x) for x in args.p_list.split(",")]
        seeds = [int(x) for x in args.seeds.split(",")]
    except ValueError as exc:
        raise FormatError(f"bad list argument: {exc}") from exc
    algos = args.algos.split(",")
    for a in algos:
        if a not in ("greedy", "ls", "rls", "exact"):
            raise FormatError(f"unknown algorithm {a!r}")
    opts = {"alpha": args.alpha, "nmax": args.nmax, "kmax": args.kmax,
            "node_budget": args.node_budget, "no_timing": args.no_timing,
            "with_exact": not args.skip_exact}
    rows = bench_rows(n_list, p_list, seeds, algos, opts)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_COLUMNS)
    w.writerows(rows)
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


# ---------------------------------------------------------------- curve


def cmd_curve(args) -> int:
    rows = bounds.curve_rows(args.what, args.kmax)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if args.what == "integral":
        w.writerow(["k", "alpha_k", "integral_bound", "integral_bound_decimal"])
        for k, a, b in rows:
            w.writerow([k, fmt_q(a), fmt_q(b), f"{float(b):.6f}"])
    else:
        w.writerow(["alpha", "f_alpha", "ratio_bound", "ratio_bound_decimal"])
        for a, f, r in rows:
            w.writerow([fmt_q(a), fmt_q(f), fmt_q(r), f"{float(r):.6f}"])
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclevca",
                                 description="Make a cycle 3-connected with few extra chords.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a feasible instance")
    g.add_argument("--kind", choices=["all_chords", "random", "planted"], default="random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, default=0.5, help="chord density")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--k", type=int, default=2, help="planted components")
    g.add_argument("--block", type=int, default=2, help="links per planted component")
    g.add_argument("--format", choices=["json", "text"], default="json")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run the three feasibility oracles")
    c.add_argument("file")
    c.add_argument("--subset", help="JSON list of links (or an instance file) to test instead of S")
    c.set_defaults(func=cmd_check)

    def solver_flags(p):
        p.add_argument("--alpha", default="3/4", help="rational p/q in (1/2, 1]")
        p.add_argument("--nmax", type=int, default=None)
        p.add_argument("--kmax", type=int, default=4)
        p.add_argument("--node-budget", type=int, default=5_000_000)
        p.add_argument("--no-timing", action="store_true",
                       help="report time_ms as 0 so output is byte-identical across runs")

    s = sub.add_parser("solve", help="solve one instance and print JSON")
    s.add_argument("file")
    s.add_argument("--algo", choices=["greedy", "ls", "rls", "exact"], default="ls")
    s.add_argument("--alphas", help="comma-separated ascending rationals for rls")
    s.add_argument("--max-candidates", type=int, default=None)
    s.add_argument("--time-budget", type=float, default=None)
    solver_flags(s)
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="seeded benchmark as CSV")
    b.add_argument("--n-list", default="8,10")
    b.add_argument("--p-list", default="0.5")
    b.add_argument("--seeds", default="0,1,2")
    b.add_argument("--algos", default="greedy,ls,exact")
    b.add_argument("--skip-exact", action="store_true")
    solver_flags(b)
    b.set_defaults(func=cmd_bench)

    cv = sub.add_parser("curve", help="bound curves as CSV")
    cv.add_argument("--what", choices=["falpha", "bound", "integral"], default="falpha")
    cv.add_argument("--kmax", type=int, default=10)
    cv.set_defaults(func=cmd_curve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (CapExceeded, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InfeasibleCandidateSetError, InfeasibleInputError, GenerationFailedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (VCAError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
