"""Randomized auditing: probe builders, counterexample search and the
rule-by-axiom matrix."""

from __future__ import annotations

import time
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import RulePreconditionError, ValidationError
from ..model import Act, Menu, Scenario, WeightedBeliefs
from ..rules import Rule, rank
from .checks import (
    AuditReport,
    Axiom,
    MenuPolicy,
    Witness,
    evaluate_probe,
    witness_from,
)
from .generate import (
    ScenarioParams,
    constant_tied_with,
    random_act,
    random_constant,
    random_event,
    random_lottery_row,
    random_scenario,
    tie_with,
    trial_rng,
)

SMALL = ScenarioParams()
"""Search distribution: 2-3 states, 2-4 acts, 1-3 measures, utilities in [-10, 10]."""


def _params_for(rule: Rule, params: ScenarioParams) -> ScenarioParams:
    if rule is Rule.SEU:
        return params.replace(measures=(1, 1))
    return params


def _pick(rng: np.random.Generator, items, k: int = 1):
    idx = rng.choice(len(items), size=k, replace=False)
    return [items[i] for i in idx]


def _mix_p(rng: np.random.Generator) -> float:
    if rng.random() < 0.25:
        return 0.5
    return float(rng.uniform(0.02, 0.98))


def _with_menu(sc: Scenario, name: str, acts) -> Scenario:
    return sc.extended(menus={name: Menu(acts)})


def _dominated(rng: np.random.Generator, sources: list[Act], name: str) -> Act:
    """An act that, state by state, mixes some source's lottery toward the worst prize."""
    first = sources[0]
    prizes = first.prizes
    worst = np.zeros(len(prizes))
    worst[prizes.index(prizes.worst)] = 1.0
    rows = []
    for i in range(len(first.states)):
        src = sources[int(rng.integers(len(sources)))]
        t = 1.0 if rng.random() < 0.3 else float(rng.random())
        rows.append(t * src.matrix[i] + (1 - t) * worst)
    return Act(name, first.states, prizes, np.vstack(rows))


def probe_params(axiom: Axiom, rule: Rule, params: ScenarioParams) -> ScenarioParams:
    """Distribution of the base scenario drawn first by :func:`build_probe`."""
    params = _params_for(rule, params)
    if axiom is Axiom.MIXTURE_CONTINUITY:
        params = params.replace(acts=(max(3, params.acts[0]), max(3, params.acts[1])))
    return params


def build_probe(
    axiom: Axiom | str,
    rule: Rule | str,
    rng: np.random.Generator,
    params: ScenarioParams = SMALL,
    base: Scenario | None = None,
) -> tuple[Scenario, dict[str, Any]]:
    """A random scenario plus a probe exercising ``axiom`` for ``rule``.

    ``base`` short-circuits the initial ``random_scenario(probe_params(...), rng)``
    draw; the caller is then responsible for ``rng`` being in the matching state.
    """
    axiom, rule = Axiom.parse(axiom), Rule.parse(rule)
    params = probe_params(axiom, rule, params)
    beliefs_rule = rule
    sc = base if base is not None else random_scenario(params, rng)

    if axiom is Axiom.AXIOM12:
        return _axiom12_probe(rule, rng, params, sc)
    acts = list(sc.menu("M"))
    beliefs = sc.beliefs

    if axiom in (Axiom.TRANSITIVITY, Axiom.COMPLETENESS, Axiom.NONTRIVIALITY, Axiom.BOUNDEDNESS):
        return sc, {"menu": "M"}

    if axiom is Axiom.MONOTONICITY:
        (f,) = _pick(rng, acts)
        g = _dominated(rng, [f], "g_dom")
        return _with_menu(sc, "M", [*acts, g]), {"menu": "M", "f": f.name, "g": g.name}

    if axiom is Axiom.MIXTURE_CONTINUITY:
        r = rank(rule, sc.menu("M"), None if rule is Rule.REG else beliefs)
        if len(r.tiers) >= 3:
            tiers = sorted(_pick(rng, list(range(len(r.tiers))), 3))
            f, g, h = (r.tiers[t][int(rng.integers(len(r.tiers[t])))] for t in tiers)
        else:
            f, g, h = (a.name for a in _pick(rng, acts, 3))
        return sc, {"menu": "M", "f": f, "g": g, "h": h}

    if axiom is Axiom.AMBIGUITY_AVERSION:
        (g,) = _pick(rng, acts)
        seed_act = random_act(rng, "seed", sc.states, sc.prizes)
        others = [a for a in acts if a.name != g.name]
        f = tie_with(beliefs_rule, beliefs, others, g, seed_act, "f_tie")
        return (
            _with_menu(sc, "M", [*others, g, f]),
            {"menu": "M", "f": f.name, "g": g.name, "p": _mix_p(rng)},
        )

    if axiom in (Axiom.INDEPENDENCE, Axiom.C_INDEPENDENCE):
        if len(acts) < 2:
            acts.append(random_act(rng, "a_extra", sc.states, sc.prizes))
        f, g = _pick(rng, acts, 2)
        menu_acts = list(acts)
        if rng.random() < 0.5:
            others = [a for a in acts if a.name not in (f.name, g.name)]
            f = tie_with(beliefs_rule, beliefs, others, g, f, "f_tie")
            menu_acts = [*others, g, f]
        if axiom is Axiom.C_INDEPENDENCE:
            h = random_constant(rng, "h_const", sc.states, sc.prizes)
        elif rng.random() < 0.5:
            (h,) = _pick(rng, menu_acts)
        else:
            h = random_act(rng, "h", sc.states, sc.prizes)
        sc = _with_menu(sc, "M", menu_acts).extended(acts=[h])
        return sc, {"menu": "M", "f": f.name, "g": g.name, "h": h.name, "p": _mix_p(rng)}

    if axiom is Axiom.CONSTANT_MENU_INDEPENDENCE:
        l1 = random_constant(rng, "l1", sc.states, sc.prizes)
        if rng.random() < 0.3:
            l2 = constant_tied_with(beliefs_rule, beliefs, list(acts), l1, "l2")
        else:
            l2 = random_constant(rng, "l2", sc.states, sc.prizes)
        fresh = [
            random_act(rng, f"b{i + 1}", sc.states, sc.prizes)
            for i in range(int(rng.integers(1, 4)))
        ]
        sc = sc.extended(menus={"M": Menu([*acts, l1, l2]), "M2": Menu([*fresh, l1, l2])})
        return sc, {"menu": "M", "menu2": "M2", "f": l1.name, "g": l2.name}

    if axiom is Axiom.INA:
        if len(acts) < 2:
            acts.append(random_act(rng, "a_extra", sc.states, sc.prizes))
            sc = _with_menu(sc, "M", acts)
        f, g = _pick(rng, acts, 2)
        extra = [_dominated(rng, acts, f"n{i + 1}") for i in range(int(rng.integers(1, 3)))]
        sc = sc.extended(menus={"Mp": Menu(extra)})
        return sc, {"menu": "M", "menu2": "Mp", "f": f.name, "g": g.name}

    if axiom is Axiom.MDC:
        event = random_event(rng, beliefs, min_weight=0.05)
        sc = sc.extended(events={"E": event})
        f, g, h = (a.name for a in (acts[int(rng.integers(len(acts)))] for _ in range(3)))
        return sc, {"menu": "M", "event": "E", "f": f, "g": g, "h": h}

    raise RulePreconditionError(f"no probe builder for {axiom.value}")


def _axiom12_probe(rule: Rule, rng: np.random.Generator, params: ScenarioParams, base: Scenario):
    """Menu with state-independent outcome distributions plus a tied constant act."""
    states, prizes = base.states, base.prizes
    k = int(rng.integers(2, 5))
    rows = [random_lottery_row(rng, len(prizes)) for _ in range(k)]
    shifts = rng.integers(k, size=len(states))
    acts = [
        Act(f"c{j + 1}", states, prizes, np.vstack([rows[(j + sh) % k] for sh in shifts]))
        for j in range(k)
    ]
    for x in range(int(rng.integers(0, 2))):
        pick = rng.integers(k, size=len(states))
        acts.append(Act(f"x{x + 1}", states, prizes, np.vstack([rows[i] for i in pick])))
    (f,) = _pick(rng, acts)
    others = [a for a in acts if a.name != f.name]
    h = constant_tied_with(rule, base.beliefs, others, f, "h_const")
    sc = Scenario(
        states, prizes, {a.name: a for a in [*acts, h]}, {"M": Menu([*acts, h])}, base.beliefs, {}
    )
    return sc, {"menu": "M", "f": f.name, "h": h.name, "p": _mix_p(rng)}


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=12_000)
def _trial_base(seed: int, trial: int, params: ScenarioParams):
    # Scenarios are immutable, so the first draw of a trial can be shared by
    # every (axiom, rule) pair that asks for the same distribution.
    rng = trial_rng(seed, trial)
    sc = random_scenario(params, rng)
    return sc, rng.bit_generator.state


def _run_trial(axiom, rule, policy, seed, trial, params, overrides):
    sc, state = _trial_base(seed, trial, probe_params(axiom, rule, params))
    rng = np.random.Generator(np.random.PCG64())
    rng.bit_generator.state = state
    sc, probe = build_probe(axiom, rule, rng, params, base=sc)
    probe.update(overrides)
    return sc, probe, evaluate_probe(axiom, rule, sc, policy, probe)


def audit_axiom(
    axiom: Axiom | str,
    rule: Rule | str,
    policy: MenuPolicy | str = MenuPolicy.TRANSFORMED,
    trials: int = 1000,
    seed: int = 0,
    params: ScenarioParams = SMALL,
    probe_overrides: dict[str, Any] | None = None,
) -> AuditReport:
    """Run ``trials`` random probes and tally outcomes (keeps the first witness)."""
    axiom, rule, policy = Axiom.parse(axiom), Rule.parse(rule), MenuPolicy.parse(policy)
    if trials < 0:
        raise ValidationError("trials must be nonnegative")
    counts = {"ok": 0, "violation": 0, "vacuous": 0, "inconclusive": 0}
    witness = None
    extra_support = 0
    if axiom is Axiom.NONTRIVIALITY:
        from ..fixtures import delivery_scenario

        sc = delivery_scenario()
        if rule is Rule.SEU:
            sc = sc.with_beliefs(WeightedBeliefs([(sc.beliefs.measures[0], 1.0)]))
        if evaluate_probe(axiom, rule, sc, policy, {"menu": "M0"}).status == "ok":
            extra_support = 1
    for t in range(trials):
        sc, probe, out = _run_trial(axiom, rule, policy, seed, t, params, probe_overrides or {})
        counts[out.status] += 1
        if out.status == "violation" and witness is None:
            witness = witness_from(axiom, rule, policy, sc, probe, out)
    return AuditReport(
        axiom,
        rule,
        policy,
        trials=trials,
        violations=counts["violation"],
        supported=counts["ok"] + extra_support,
        vacuous=counts["vacuous"],
        inconclusive=counts["inconclusive"],
        witness=witness,
    )


def find_counterexample(
    axiom: Axiom | str,
    rule: Rule | str,
    policy: MenuPolicy | str = MenuPolicy.TRANSFORMED,
    budget: int = 10_000,
    seed: int = 0,
    params: ScenarioParams = SMALL,
    probe_overrides: dict[str, Any] | None = None,
    start: int = 0,
) -> tuple[Witness | None, int]:
    """Search for a violating probe; returns ``(witness or None, trials used)``.

    Trial indices ``start .. start + budget - 1`` are tried in order.
    """
    axiom, rule, policy = Axiom.parse(axiom), Rule.parse(rule), MenuPolicy.parse(policy)
    if budget <= 0:
        raise ValidationError("budget must be positive")
    for t in range(start, start + budget):
        sc, probe, out = _run_trial(axiom, rule, policy, seed, t, params, probe_overrides or {})
        if out.status == "violation":
            return witness_from(axiom, rule, policy, sc, probe, out), t - start + 1
    return None, budget


# ---------------------------------------------------------------------------
# rule x axiom matrix
# ---------------------------------------------------------------------------

RULE_ORDER = (Rule.SEU, Rule.REG, Rule.MER, Rule.MWER, Rule.MMEU)

ROW_AXIOMS: dict[str, tuple[Axiom, ...]] = {
    "Ax. 1-6,8-10": (
        Axiom.TRANSITIVITY,
        Axiom.COMPLETENESS,
        Axiom.NONTRIVIALITY,
        Axiom.MONOTONICITY,
        Axiom.MIXTURE_CONTINUITY,
        Axiom.AMBIGUITY_AVERSION,
        Axiom.CONSTANT_MENU_INDEPENDENCE,
        Axiom.INA,
        Axiom.BOUNDEDNESS,
    ),
    "Ind": (Axiom.INDEPENDENCE,),
    "C-Ind": (Axiom.C_INDEPENDENCE,),
    "Ax. 12": (Axiom.AXIOM12,),
}

EXPECTED: dict[str, frozenset[Rule]] = {
    "Ax. 1-6,8-10": frozenset(RULE_ORDER),
    "Ind": frozenset({Rule.SEU, Rule.REG, Rule.MER, Rule.MWER}),
    "C-Ind": frozenset({Rule.SEU, Rule.MMEU}),
    "Ax. 12": frozenset({Rule.SEU, Rule.REG, Rule.MER}),
}
"""Which cells the characterization table marks as holding."""

ROW_POLICY = {
    "Ax. 1-6,8-10": MenuPolicy.FIXED,
    "Ind": MenuPolicy.TRANSFORMED,
    "C-Ind": MenuPolicy.FIXED,
    "Ax. 12": MenuPolicy.FIXED,
}


@dataclass(frozen=True)
class Table4Cell:
    row: str
    rule: Rule
    expected: bool
    reports: tuple[AuditReport, ...]
    budget_used: int = 0
    seconds: float = 0.0

    @property
    def verdict(self) -> str:
        verdicts = {r.verdict for r in self.reports}
        if "counterexample" in verdicts:
            return "counterexample"
        if verdicts == {"supported"}:
            return "supported"
        return "inconclusive"

    @property
    def trials(self) -> int:
        return sum(r.trials for r in self.reports)

    @property
    def violations(self) -> int:
        return sum(r.violations for r in self.reports)


@dataclass(frozen=True)
class Table4Report:
    cells: dict[tuple[str, Rule], Table4Cell] = field(default_factory=dict)
    trials: int = 0
    budget: int = 0
    seed: int = 0

    def cell(self, row: str, rule: Rule | str) -> Table4Cell:
        return self.cells[(row, Rule.parse(rule))]

    def render(self) -> str:
        width = max(len(r) for r in ROW_AXIOMS) + 2
        head = "".ljust(width) + "".join(r.name.ljust(16) for r in RULE_ORDER)
        lines = [head]
        for row in ROW_AXIOMS:
            parts = []
            for rule in RULE_ORDER:
                c = self.cells.get((row, rule))
                mark = "-" if c is None else {"supported": "ok", "counterexample": "CX"}.get(
                    c.verdict, "??"
                )
                tag = "v" if c is not None and c.expected else " "
                parts.append(f"{tag} {mark}".ljust(16))
            lines.append(row.ljust(width) + "".join(parts))
        lines.append("v = holds in the characterization table; ok = supported, CX = counterexample, ?? = inconclusive")
        return "\n".join(lines)


def table4_matrix(
    trials: int = 10_000,
    budget: int = 100_000,
    seed: int = 0,
    rows=None,
    rules=None,
    params: ScenarioParams = SMALL,
) -> Table4Report:
    """Audit every cell: probes for expected-to-hold cells, search for the rest."""
    if trials <= 0 or budget <= 0:
        raise ValidationError("trials and budget must be positive")
    cells = {}
    for row in rows or ROW_AXIOMS:
        policy = ROW_POLICY[row]
        for rule in rules or RULE_ORDER:
            rule = Rule.parse(rule)
            expected = rule in EXPECTED[row]
            start = time.perf_counter()
            if expected:
                reports = tuple(
                    audit_axiom(ax, rule, policy, trials, seed, params) for ax in ROW_AXIOMS[row]
                )
                used = 0
            else:
                reports = []
                used = 0
                for ax in ROW_AXIOMS[row]:
                    w, n = find_counterexample(ax, rule, policy, budget, seed, params)
                    used += n
                    reports.append(
                        AuditReport(ax, rule, policy, n, int(w is not None), 0, witness=w)
                    )
                reports = tuple(reports)
            cells[(row, rule)] = Table4Cell(
                row, rule, expected, reports, used, time.perf_counter() - start
            )
    return Table4Report(cells, trials, budget, seed)
