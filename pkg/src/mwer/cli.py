"""Command-line entry point (``mwer``).

Exit status: 0 success, 2 bad input, 3 an audit found a counterexample,
4 an update is undefined (the event is null for the beliefs).
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from collections.abc import Sequence

from .audit.checks import AuditReport, Axiom, MenuPolicy
from .audit.search import audit_axiom, find_counterexample, table4_matrix
from .convergence import delivery_demo, delivery_sweep, render_sweep, simulate_iid
from .errors import MwerError, UpdateUndefinedError, ValidationError
from .model import WeightedBeliefs
from .rules import Rule, rank
from .scenario_io import (
    audit_record,
    comparison_record,
    dumps_json,
    load_scenario,
    loads_json,
    parse_candidates,
    ranking_record,
    update_record,
    witness_document,
)
from .updating import (
    epstein_schneider_update,
    likelihood_update,
    measure_by_measure_update,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_UNDEFINED = 4

SEED_ENV = "MWER_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"mwer: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _emit(args, record: dict, text: str) -> None:
    if args.json:
        print(dumps_json(record, indent=None))
    else:
        print(text)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _columns(rows: list[list[str]], right: Sequence[bool] = ()) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    out = []
    for r in rows:
        cells = [
            c.rjust(w) if i < len(right) and right[i] else c.ljust(w)
            for i, (c, w) in enumerate(zip(r, widths))
        ]
        out.append("  ".join(cells).rstrip())
    return "\n".join(out)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_rank(args) -> int:
    sc = load_scenario(args.scenario)
    rule = Rule.parse(args.rule)
    menu = sc.menu(args.menu)
    beliefs = sc.beliefs
    if args.measure:
        beliefs = WeightedBeliefs([(beliefs.measure(args.measure), 1.0)])
    r = rank(rule, menu, None if rule is Rule.REG else beliefs)
    rows = [["tier", "act", "score"]]
    for i, tier in enumerate(r.tiers, start=1):
        for name in tier:
            rows.append([str(i), name, f"{r.scores[name]:.10g}"])
    text = f"{rule.name} on {args.menu}: {r}\n" + _columns(rows, (True, False, True))
    _emit(args, ranking_record(r, args.menu), text)
    return EXIT_OK


def cmd_update(args) -> int:
    sc = load_scenario(args.scenario)
    event = sc.event(args.event)
    before = sc.beliefs
    result = None
    if args.method == "likelihood":
        result = likelihood_update(before, event)
        after = result.beliefs
    elif args.method == "mbm":
        after = measure_by_measure_update(before, event)
    else:
        if args.threshold is None:
            raise ValidationError("--method es needs --threshold")
        after = epstein_schneider_update(before, event, args.threshold)
    rec = update_record(before, after, args.method, args.event, result)
    rows = [["measure", *sc.states.states, "weight"]]
    for m, w in after:
        rows.append([m.name or "?", *(f"{p:.10g}" for p in m.probs), f"{w:.10g}"])
    text = f"{args.method} update on {args.event}\n" + _columns(rows, (False,) + (True,) * (len(rows[0]) - 1))
    if result is not None:
        text += "\ndropped: " + (", ".join(rec["dropped"]) or "none")
        text += "\ngroups:  " + "; ".join("{" + ", ".join(g) + "}" for g in rec["groups"])
    _emit(args, rec, text)
    return EXIT_OK


def _report_text(rec: dict) -> str:
    lines = [
        f"{rec['axiom']} / {rec['rule']} ({rec['policy']} menus): {rec['verdict']}",
        f"  trials {rec['trials']}  supported {rec['supported']}  violations {rec['violations']}"
        f"  vacuous {rec['vacuous']}  inconclusive {rec['inconclusive']}",
    ]
    w = rec.get("witness")
    if w is not None:
        body = w["witness"]
        lines.append(f"  probe {body['probe']}")
        for c in body["comparisons"]:
            lines.append(
                f"  in {c['menu']}: {c['a']} {c['relation']} {c['b']}"
                f"  ({c['score_a']:.10g} vs {c['score_b']:.10g})"
            )
        if body["note"]:
            lines.append(f"  note: {body['note']}")
    return "\n".join(lines)


def cmd_audit(args) -> int:
    seed = _seed(args)
    axiom, rule = Axiom.parse(args.axiom), Rule.parse(args.rule)
    policy = MenuPolicy.parse(args.policy)
    if args.trials < 0 or args.budget < 0:
        raise ValidationError("--trials and --budget must be nonnegative")
    if args.trials == 0 and args.budget == 0:
        raise ValidationError("nothing to do: --trials and --budget are both 0")
    report = audit_axiom(axiom, rule, policy, args.trials, seed)
    if report.witness is None and args.budget > 0:
        w, used = find_counterexample(axiom, rule, policy, args.budget, seed, start=args.trials)
        if w is not None:
            report = report.merged(AuditReport(axiom, rule, policy, used, 1, 0, witness=w))
        else:
            report = report.merged(AuditReport(axiom, rule, policy, used, 0, 0))
    rec = audit_record(report)
    rec["seed"] = seed
    if args.witness_out and report.witness is not None:
        with open(args.witness_out, "w", encoding="utf-8") as fh:
            fh.write(dumps_json(witness_document(report.witness)) + "\n")
    _emit(args, rec, _report_text(rec))
    return EXIT_COUNTEREXAMPLE if report.violations else EXIT_OK


def cmd_table4(args) -> int:
    seed = _seed(args)
    if args.trials <= 0 or args.budget <= 0:
        raise ValidationError("--trials and --budget must be positive")
    report = table4_matrix(args.trials, args.budget, seed)
    cells = []
    broken = False
    for (row, rule), cell in report.cells.items():
        broken |= cell.expected and cell.verdict == "counterexample"
        entry = {
            "row": row,
            "rule": rule.value,
            "expected": cell.expected,
            "verdict": cell.verdict,
            "trials": cell.trials,
            "violations": cell.violations,
        }
        witness = next((r.witness for r in cell.reports if r.witness is not None), None)
        if witness is not None:
            entry["witness_axiom"] = witness.axiom.value
            entry["witness_comparisons"] = [comparison_record(c) for c in witness.comparisons]
        cells.append(entry)
    rec = {"trials": args.trials, "budget": args.budget, "seed": seed, "cells": cells}
    _emit(args, rec, report.render())
    return EXIT_COUNTEREXAMPLE if broken else EXIT_OK


def cmd_converge(args) -> int:
    seed = _seed(args)
    with open(args.candidates, encoding="utf-8") as fh:
        beliefs, named = parse_candidates(loads_json(fh.read()))
    if args.truth not in named:
        raise ValidationError(f"unknown truth measure {args.truth!r}")
    traj = simulate_iid(beliefs, named[args.truth], args.rounds, seed)
    rec = traj.summary()
    rec["truth"] = args.truth
    rows = [["candidate", "prior", "final"]]
    for i, n in enumerate(traj.names):
        rows.append([n, f"{traj.weights[0, i]:.6g}", f"{traj.weights[-1, i]:.6g}"])
    text = (
        f"{traj.rounds} rounds from {args.truth} (seed {seed}); leader {rec['leader']}\n"
        + _columns(rows, (False, True, True))
    )
    _emit(args, rec, text)
    return EXIT_OK


_SWEEP = re.compile(r"^(\d+)\.\.(\d+)(?::(\d+))?$")


def cmd_demo(args) -> int:
    if args.sweep:
        m = _SWEEP.match(args.sweep)
        if not m:
            raise ValidationError(f"--sweep expects A..B or A..B:STEP, got {args.sweep!r}")
        lo, hi, step = int(m[1]), int(m[2]), int(m[3] or 1)
        if step <= 0 or hi < lo:
            raise ValidationError(f"empty sweep {args.sweep!r}")
        rows = delivery_sweep(range(lo, hi + 1, step))
        if args.json:
            for r in rows:
                print(
                    dumps_json(
                        {
                            "n_good": r.n_good,
                            "weight_pr10": r.weight,
                            "mwer_m0": [list(t) for t in r.mwer_m0.tiers],
                            "mwer_m1": [list(t) for t in r.mwer_m1.tiers],
                            "divergence_mer": r.to_mer,
                            "divergence_seu": r.to_seu,
                        },
                        indent=None,
                    )
                )
        else:
            print(render_sweep(rows))
        return EXIT_OK
    rep = delivery_demo(args.n_good)
    _emit(args, rep.to_record(), rep.render())
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    rules = [r.value for r in Rule]
    p = _Parser(prog="mwer", description="Weighted-regret decisions, belief updating and axiom audits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed=False):
        sp.add_argument("--json", action="store_true", help="one JSON record per result")
        if seed:
            sp.add_argument("--seed", type=int, default=None, help=f"default from ${SEED_ENV}, else 0")

    sp = sub.add_parser("rank", help="rank a menu under one rule")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--menu", required=True)
    sp.add_argument("--rule", required=True, choices=rules)
    sp.add_argument("--measure", help="use only this measure (weight 1), e.g. for SEU")
    common(sp)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("update", help="update the beliefs on an event")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--event", required=True)
    sp.add_argument("--method", default="likelihood", choices=["likelihood", "mbm", "es"])
    sp.add_argument("--threshold", type=float)
    common(sp)
    sp.set_defaults(func=cmd_update)

    sp = sub.add_parser("audit", help="probe one axiom for one rule")
    sp.add_argument("--axiom", required=True, help=", ".join(a.value for a in Axiom))
    sp.add_argument("--rule", required=True, choices=rules)
    sp.add_argument("--policy", default="transformed", choices=[m.value for m in MenuPolicy])
    sp.add_argument("--trials", type=int, default=0, help="probes to tally")
    sp.add_argument("--budget", type=int, default=10_000, help="further probes searching for a counterexample")
    sp.add_argument("--witness-out", help="write the witness (a loadable scenario) here")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("table4", help="audit every rule against every axiom row")
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--budget", type=int, default=100_000)
    common(sp, seed=True)
    sp.set_defaults(func=cmd_table4)

    sp = sub.add_parser("converge", help="simulate weight convergence on i.i.d. data")
    sp.add_argument("--candidates", required=True)
    sp.add_argument("--truth", required=True)
    sp.add_argument("--rounds", type=int, required=True)
    common(sp, seed=True)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("demo", help="worked examples")
    demo = sp.add_subparsers(dest="demo", required=True, parser_class=_Parser)
    dp = demo.add_parser("delivery", help="the cupcake-delivery problem")
    dp.add_argument("--n-good", type=int, default=0)
    dp.add_argument("--sweep", help="A..B or A..B:STEP")
    common(dp)
    dp.set_defaults(func=cmd_demo)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UpdateUndefinedError as exc:
        print(f"mwer: undefined: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except (MwerError, OSError) as exc:
        print(f"mwer: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
