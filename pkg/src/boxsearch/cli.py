"""Command-line interface: ``boxsearch <command> ...``.

Exit status is 0 when the command succeeds and every check it runs passes,
1 when a check fails, and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import statistics
import sys
import time

from .checks import REFERENCE_TOL, SUITES, reproduce_reference_values, run_suite
from .engine import evaluate, evaluate_all, evaluate_mixed, simulate
from .model import (GameVariant, HiderMixed, InvalidInstance, PolicyViolation, check_allocation,
                    format_number, instance_from_dict, load_instance)
from .serialize import HIDERS, SEARCHERS, build_strategy, strategy_from_json, strategy_to_json
from .solver import (SolverBudgetExceeded, check_equalizing_property, solve_game,
                     solve_normal_game, DEFAULT_STATE_BUDGET)
from .strategies import hider_equalizing_multi, hider_equalizing_single
from .values import NoClosedForm, closed_form_value

# interface names for suites that are also known by a descriptive name
SUITE_ALIASES = {"lemma5": "edge-permutation", "lemma6": "overlap-regret", "table2": "reduction-matrix"}


class UsageError(Exception):
    pass


# ------------------------------------------------------------- helpers


def _fmt(v, exact):
    return format_number(v, exact)


def _alloc_str(x):
    return "(" + ",".join(map(str, x)) + ")"


def _read_json(path):
    try:
        with open(path) as fh:
            return json.loads(fh.read(), parse_float=str)
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None
    except json.JSONDecodeError as err:
        raise UsageError(f"{path} is not valid JSON: {err}") from None


def _instance(args):
    """Instance from --instance or --costs/--balls, with --variant overriding."""
    exact = args.exact
    if args.instance:
        try:
            with open(args.instance) as fh:
                text = fh.read()
        except OSError as err:
            raise UsageError(f"cannot read {args.instance}: {err.strerror}") from None
        try:
            inst = load_instance(text, exact)
        except json.JSONDecodeError as err:
            raise UsageError(f"{args.instance} is not valid JSON: {err}") from None
        data = inst.to_json()
        data["costs"] = list(inst.costs)
    elif args.costs is not None and args.balls is not None:
        data = {"costs": [c.strip() for c in args.costs.split(",")], "balls": args.balls}
    else:
        raise UsageError("give --instance FILE, or both --costs and --balls")
    if args.variant:
        data["variant"] = args.variant
    elif args.instance is None:
        data["variant"] = "multi-cost"
    return instance_from_dict(data, exact)


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _hider_arg(args, inst):
    if getattr(args, "allocation", None):
        x = tuple(int(v) for v in args.allocation.split(","))
        check_allocation(x, inst.n, inst.k, inst.variant.look_mode)
        return HiderMixed.point(x, inst.variant.look_mode)
    if getattr(args, "hider", None):
        if args.hider in HIDERS:
            return build_strategy(args.hider, inst.costs, inst.k)
        hm = strategy_from_json(_read_json(args.hider), args.exact)
        if not isinstance(hm, HiderMixed):
            raise UsageError("--hider must hold a hider strategy")
        if hm.n != inst.n or hm.k != inst.k:
            raise UsageError("hider strategy does not match the instance")
        return hm
    return None


def _searcher_arg(args, inst):
    if args.strategy in SEARCHERS:
        return build_strategy(args.strategy, inst.costs, inst.k)
    obj = strategy_from_json(_read_json(args.strategy), args.exact)
    if isinstance(obj, HiderMixed):
        raise UsageError("--strategy must hold a searcher strategy")
    return obj


def _default_hider(inst):
    if inst.variant.single:
        return hider_equalizing_single(inst.costs, inst.k)
    return hider_equalizing_multi(inst.costs, inst.k)


# ------------------------------------------------------------ commands


def cmd_value(args):
    inst = _instance(args)
    try:
        value, formula = closed_form_value(inst)
    except NoClosedForm as err:
        raise UsageError(f"{err} (try `boxsearch solve`)") from None
    shown = _fmt(value, args.exact)
    _emit(args, {"instance": inst.to_json(), "value": shown, "formula": formula},
          [f"value: {shown}", f"formula: {formula}"])
    return 0


def cmd_strategy(args):
    inst = _instance(args)
    data = strategy_to_json(args.kind, inst.costs, inst.k, args.exact)
    text = json.dumps(data, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        if not args.json:
            print(f"wrote {args.kind} strategy to {args.out}")
            return 0
    print(text)
    return 0


def cmd_evaluate(args):
    inst = _instance(args)
    policy = _searcher_arg(args, inst)
    hider = _hider_arg(args, inst)
    if hider is None:
        res = evaluate_all(policy, inst.costs, inst.k, inst.variant)
        label = "worst case over allocations"
    elif len(hider.probs) == 1:
        (x,) = hider.support()
        res = evaluate(policy, x, inst.costs, inst.variant)
        label = f"against {_alloc_str(x)}"
    else:
        res = evaluate_mixed(policy, hider, inst.costs, inst.variant)
        label = "against the hider mixture"
    e = args.exact
    breakdown = [{"allocation": list(x), "payoff": _fmt(v, e)} for x, v in res.breakdown.items()]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["allocation", "payoff"])
            for x, v in res.breakdown.items():
                w.writerow([_alloc_str(x), _fmt(v, e)])
    lines = [f"expected {inst.variant.payoff_mode} {label}: {_fmt(res.expected_payoff, e)}",
             f"states visited: {res.node_count}"]
    lines += [f"  {_alloc_str(x)}: {_fmt(v, e)}" for x, v in res.breakdown.items()]
    _emit(args, {"expected_payoff": _fmt(res.expected_payoff, e), "node_count": res.node_count,
                 "summary": label, "breakdown": breakdown}, lines)
    return 0


def cmd_solve(args):
    inst = _instance(args)
    e = args.exact
    start = time.perf_counter()
    res = solve_game(inst.costs, inst.k, inst.variant, args.eps, exact=e, budget=args.budget)
    seconds = time.perf_counter() - start
    report = check_equalizing_property(res.hider_mixed, inst.costs)
    out = {
        "instance": inst.to_json(),
        "value": _fmt(res.value, e),
        "iterations": res.iterations,
        "duality_gap": _fmt(res.duality_gap, e),
        "seconds": round(seconds, 3),
        "hider": [{"allocation": list(x), "probability": _fmt(p, e)} for x, p in res.hider_mixed.items()],
        "searcher": [{"probability": _fmt(p, e), "policy": t.to_json()} for t, p in res.searcher_mixed.items()],
        "equalizing": {"equalizing": bool(report.equalizing),
                       "support": [list(x) for x in report.support],
                       "outside_support": [list(x) for x in report.missing],
                       "max_ratio_deviation": _fmt(report.max_ratio_deviation, e)},
    }
    lines = [f"value: {out['value']}  ({res.iterations} iterations, gap {out['duality_gap']}, {seconds:.2f}s)",
             "hider support:"]
    lines += [f"  {_alloc_str(x)}  {_fmt(p, e)}" for x, p in res.hider_mixed.items()]
    lines.append(f"equalizing property: {'yes' if report.equalizing else 'no'}"
                 f" (max ratio deviation {out['equalizing']['max_ratio_deviation']})")
    lines.append(f"searcher mixes {len(res.searcher_mixed)} decision trees")
    try:
        closed, formula = closed_form_value(inst)
        diff = abs(float(closed) - float(res.value))
        out["closed_form"] = {"value": _fmt(closed, e), "formula": formula, "abs_difference": float(diff)}
        lines.append(f"closed form: {_fmt(closed, e)} via {formula}")
    except NoClosedForm:
        pass
    if args.normal_only:
        if inst.variant != GameVariant("multi", "regret"):
            raise UsageError("--normal-only applies to the multi-regret variant")
        nv, nh, seqs = solve_normal_game(inst.costs, inst.k, exact=e)
        out["normal_only"] = {
            "value": _fmt(nv, e),
            "hider": [{"allocation": list(x), "probability": _fmt(p, e)} for x, p in nh.items()],
            "sequences": [{"sequence": [b + 1 for b in s], "probability": _fmt(p, e)} for s, p in seqs.items()],
        }
        lines.append(f"normal strategies only: {_fmt(nv, e)} over {len(seqs)} sequences")
    _emit(args, out, lines)
    return 0


def cmd_play(args):
    inst = _instance(args)
    policy = _searcher_arg(args, inst)
    hider = _hider_arg(args, inst) or _default_hider(inst)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    rng = random.Random(args.seed)
    allocs = hider.support()
    weights = [float(p) for _, p in hider.items()]
    samples = []
    for _ in range(args.trials):
        x = rng.choices(allocs, weights)[0]
        samples.append(float(simulate(policy, x, inst.costs, inst.variant, rng)))
    mean = statistics.fmean(samples)
    err = statistics.stdev(samples) / len(samples) ** 0.5 if len(samples) > 1 else 0.0
    out = {"seed": args.seed, "trials": args.trials, "mean": _fmt(mean, False),
           "standard_error": _fmt(err, False), "min": min(samples), "max": max(samples)}
    _emit(args, out, [f"mean {inst.variant.payoff_mode} over {args.trials} plays (seed {args.seed}): "
                      f"{out['mean']} +/- {out['standard_error']}"])
    return 0


def cmd_verify(args):
    name = SUITE_ALIASES.get(args.suite, args.suite)
    start = time.perf_counter()
    rep = run_suite(name, args.budget)
    seconds = time.perf_counter() - start
    ok = rep.passed
    out = {"suite": args.suite, "checked": rep.checked, "failed": len(rep.failures),
           "passed": ok, "seconds": round(seconds, 3), "counterexamples": rep.failures}
    lines = [f"{args.suite}: {rep.checked - len(rep.failures)}/{rep.checked} pass ({seconds:.2f}s)"]
    lines += [f"  counterexample: {json.dumps(f, default=str)}" for f in rep.failures]
    _emit(args, out, lines)
    return 0 if ok else 1


def cmd_reproduce(args):
    rows = reproduce_reference_values(exact=args.exact)
    e = args.exact
    table = [{"instance": r.name, "variant": r.variant, "costs": list(r.costs), "balls": r.k,
              "reported": _fmt(r.expected, isinstance(r.expected, int) or e),
              "computed": _fmt(r.computed, e), "abs_difference": abs(float(r.computed) - float(r.expected)),
              "support_ok": bool(r.support_ok), "passed": bool(r.passed), "seconds": round(r.seconds, 3), "note": r.note}
             for r in rows]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(table[0]))
            w.writeheader()
            for row in table:
                w.writerow({**row, "costs": " ".join(row["costs"])})
    ok = all(r.passed for r in rows)
    lines = [f"{'instance':34} {'reported':>12} {'computed':>14}  result"]
    for row in table:
        lines.append(f"{row['instance']:34} {str(row['reported']):>12} {str(row['computed']):>14}  "
                     f"{'pass' if row['passed'] else 'FAIL'}")
    lines.append(f"tolerance {REFERENCE_TOL}; {'all rows pass' if ok else 'some rows fail'}")
    _emit(args, {"tolerance": REFERENCE_TOL, "passed": ok, "rows": table}, lines)
    return 0 if ok else 1


# -------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boxsearch",
                                description="Solve and analyse zero-sum box-search games.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, instance=True):
        sp.add_argument("--exact", action="store_true", help="rational arithmetic and rational output")
        sp.add_argument("--json", action="store_true", help="print JSON")
        if instance:
            sp.add_argument("--instance", metavar="FILE", help="instance JSON file")
            sp.add_argument("--costs", help="comma-separated box costs, e.g. 10,9,1,1")
            sp.add_argument("--balls", "-k", type=int, help="number of balls")
            sp.add_argument("--variant", choices=[str(GameVariant(a, b)) for a in ("multi", "single")
                                                  for b in ("cost", "regret")])

    sp = sub.add_parser("value", help="closed-form value and the formula used")
    common(sp)
    sp.set_defaults(func=cmd_value)

    sp = sub.add_parser("strategy", help="serialize a constructed strategy")
    common(sp)
    sp.add_argument("--kind", required=True, choices=sorted(SEARCHERS) + sorted(HIDERS))
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_strategy)

    sp = sub.add_parser("evaluate", help="exact expected payoff of a searcher strategy")
    common(sp)
    sp.add_argument("--strategy", required=True, metavar="FILE|NAME",
                        help="searcher strategy JSON or constructor name")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--allocation", help="pure allocation, e.g. 2,0")
    g.add_argument("--hider", metavar="FILE|NAME", help="hider strategy JSON or constructor name")
    sp.add_argument("--csv", metavar="FILE", help="write the per-allocation table")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("solve", help="solve an instance exactly by double oracle")
    common(sp)
    sp.add_argument("--eps", type=float, default=None, help="stopping gap (default 0 exact, 1e-9 float)")
    sp.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET,
                    help="maximum info states per best response")
    sp.add_argument("--normal-only", action="store_true",
                    help="also solve the game restricted to normal searcher strategies")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("play", help="Monte Carlo plays of a searcher strategy")
    common(sp)
    sp.add_argument("--strategy", required=True, metavar="FILE|NAME",
                        help="searcher strategy JSON or constructor name")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--allocation")
    g.add_argument("--hider", metavar="FILE|NAME", help="hider strategy JSON or constructor name")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1000)
    sp.set_defaults(func=cmd_play)

    sp = sub.add_parser("verify", help="run a property suite")
    common(sp, instance=False)
    sp.add_argument("--suite", required=True, choices=sorted(SUITES) + sorted(SUITE_ALIASES))
    sp.add_argument("--budget", type=int, default=None, help="number of random trials")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("reproduce-paper", help="recompute the reference values and compare")
    common(sp, instance=False)
    sp.add_argument("--csv", metavar="FILE")
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidInstance, PolicyViolation, SolverBudgetExceeded) as err:
        print(f"boxsearch: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
