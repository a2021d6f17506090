"""Executable forms of the preference axioms.

Each check evaluates one axiom instance (a *probe*) for one decision rule
and classifies it as ``ok``, ``violation``, ``vacuous`` (antecedent false)
or ``inconclusive`` (an existence claim with no witness on the search grid).

A probe is a small JSON-friendly mapping naming acts, menus, events and
mixing weights inside a :class:`~mwer.model.Scenario`.  All mixtures and
derived menus are rebuilt from the scenario, so a probe replays exactly.
"""

from __future__ import annotations

import dataclasses
import enum
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import InvalidReferenceError, RulePreconditionError
from ..model import (
    Act,
    Event,
    Menu,
    PrizeSpace,
    Scenario,
    WeightedBeliefs,
    mix_acts,
    mix_menu,
    splice,
    splice_menu,
)
from ..rules import (
    EPS_PREF,
    PreferenceRanking,
    Rule,
    goodness,
    max_weighted_expected_regret,
    rank,
    score_matrix,
)
from ..updating import UpdateResult, event_weight, likelihood_update, sequential_update

VIOLATION_MARGIN = 10 * EPS_PREF
"""A contradicted comparison must hold by more than this to count."""

MIX_GRID = tuple(k / 64 for k in range(1, 64))
_DYADIC = tuple(2.0**-j for j in range(7, 41))


class Axiom(str, enum.Enum):
    TRANSITIVITY = "transitivity"
    COMPLETENESS = "completeness"
    NONTRIVIALITY = "nontriviality"
    MONOTONICITY = "monotonicity"
    MIXTURE_CONTINUITY = "mixture-continuity"
    AMBIGUITY_AVERSION = "ambiguity-aversion"
    INDEPENDENCE = "independence"
    CONSTANT_MENU_INDEPENDENCE = "constant-menu-independence"
    INA = "ina"
    BOUNDEDNESS = "boundedness"
    C_INDEPENDENCE = "c-independence"
    AXIOM12 = "axiom12"
    MDC = "mdc"

    @classmethod
    def parse(cls, text: str | Axiom) -> Axiom:
        if isinstance(text, Axiom):
            return text
        key = str(text).lower().replace("_", "-")
        aliases = {
            "ind": "independence",
            "cind": "c-independence",
            "c-ind": "c-independence",
            "cindependence": "c-independence",
            "ax12": "axiom12",
            "axiom-12": "axiom12",
            "mixturecontinuity": "mixture-continuity",
            "ambiguityaversion": "ambiguity-aversion",
            "constantmenuindependence": "constant-menu-independence",
            "menu-independence-for-constant-acts": "constant-menu-independence",
        }
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise InvalidReferenceError(f"unknown axiom {text!r}") from None


class MenuPolicy(str, enum.Enum):
    """How mixtures are placed in menus when an axiom mixes acts.

    ``transformed`` compares mixtures inside ``p*M + (1-p)*h``; ``fixed``
    compares them inside ``M`` extended by the mixed acts.
    """

    TRANSFORMED = "transformed"
    FIXED = "fixed"

    @classmethod
    def parse(cls, text: str | MenuPolicy) -> MenuPolicy:
        if isinstance(text, MenuPolicy):
            return text
        try:
            return cls(str(text).lower())
        except ValueError:
            raise InvalidReferenceError(f"unknown menu policy {text!r}") from None


@dataclass(frozen=True)
class Comparison:
    menu: str
    a: str
    b: str
    score_a: float
    score_b: float
    relation: str
    """``">"``, ``"~"`` or ``"<"`` read as ``a ? b``."""
    advantage: float
    """Oriented score gap; positive favours ``a``."""

    @property
    def weak(self) -> bool:
        return self.relation != "<"

    def contradicts_weak(self) -> bool:
        """``a`` is worse than ``b`` by more than the violation margin."""
        return self.advantage < -VIOLATION_MARGIN


@dataclass
class ProbeOutcome:
    status: str
    comparisons: list[Comparison] = field(default_factory=list)
    menus: dict[str, Menu] = field(default_factory=dict)
    note: str = ""


@dataclass(frozen=True)
class Witness:
    axiom: Axiom
    rule: Rule
    policy: MenuPolicy
    scenario: Scenario
    """Source scenario extended with every derived act and menu."""
    probe: Mapping[str, Any]
    comparisons: tuple[Comparison, ...]
    note: str = ""


@dataclass(frozen=True)
class AuditReport:
    axiom: Axiom
    rule: Rule
    policy: MenuPolicy
    trials: int
    violations: int
    supported: int
    vacuous: int = 0
    inconclusive: int = 0
    witness: Witness | None = None

    @property
    def verdict(self) -> str:
        if self.violations:
            return "counterexample"
        if self.supported:
            return "supported"
        return "inconclusive"

    def merged(self, other: AuditReport) -> AuditReport:
        return AuditReport(
            self.axiom,
            self.rule,
            self.policy,
            self.trials + other.trials,
            self.violations + other.violations,
            self.supported + other.supported,
            self.vacuous + other.vacuous,
            self.inconclusive + other.inconclusive,
            self.witness or other.witness,
        )


def never_strictly_optimal(h: Act, menu: Menu, prizes: PrizeSpace | None = None) -> bool:
    """True iff in every state some act of ``menu`` does at least as well as ``h``."""
    if prizes is not None and prizes != h.prizes:
        raise InvalidReferenceError("prize space differs from the act's")
    best = menu.utility_matrix.max(axis=0)
    return bool(np.all(best >= h.utilities))


def state_independent_outcomes(menu: Menu) -> bool:
    """Every state offers the same set of lotteries across the menu."""
    per_state = [
        {tuple(a.matrix[i].tolist()) for a in menu} for i in range(len(menu.states))
    ]
    return all(s == per_state[0] for s in per_state[1:])


# ---------------------------------------------------------------------------
# evaluation helpers
# ---------------------------------------------------------------------------


class _Judge:
    """Ranks named menus once and answers pairwise comparisons."""

    def __init__(self, rule: Rule, beliefs: WeightedBeliefs | None):
        self.rule = rule
        self.beliefs = beliefs
        self.menus: dict[str, Menu] = {}
        self._rankings: dict[str, PreferenceRanking] = {}

    def add(self, name: str, menu: Menu) -> str:
        self.menus[name] = menu
        self._rankings.pop(name, None)
        return name

    def ranking(self, name: str) -> PreferenceRanking:
        r = self._rankings.get(name)
        if r is None:
            r = rank(self.rule, self.menus[name], self.beliefs)
            self._rankings[name] = r
        return r

    def goodness_batch(self, stacks: np.ndarray) -> np.ndarray:
        """Oriented scores for ``batch x acts x states`` utility stacks.

        Used only to screen candidates; verdicts always go through
        :meth:`compare`.
        """
        if self.rule is Rule.REG:
            probs, weights = np.eye(stacks.shape[-1])[:1], np.ones(1)
        else:
            probs, weights = self.beliefs.matrix, self.beliefs.weights
        raw = score_matrix(self.rule, stacks, probs, weights)
        return -raw if self.rule.minimizes else raw

    def compare(self, menu: str, a: Act, b: Act) -> Comparison:
        m = self.menus[menu]
        m.require(a, b)
        r = self.ranking(menu)
        ta, tb = r.tier_of(a.name), r.tier_of(b.name)
        rel = ">" if ta < tb else "<" if ta > tb else "~"
        return Comparison(
            menu, a.name, b.name, r.scores[a.name], r.scores[b.name], rel, r.advantage(a.name, b.name)
        )


def _iff_violated(c1: Comparison, c2: Comparison) -> bool:
    return (c1.weak and c2.contradicts_weak()) or (c2.weak and c1.contradicts_weak())


def _act(sc: Scenario, probe: Mapping[str, Any], key: str) -> Act:
    try:
        return sc.act(probe[key])
    except KeyError:
        raise RulePreconditionError(f"probe is missing {key!r}") from None


def _p(probe: Mapping[str, Any]) -> float:
    p = float(probe.get("p", 0.5))
    if not 0.0 < p < 1.0:
        raise RulePreconditionError(f"mixing weight {p!r} must lie strictly inside (0, 1)")
    return p


def _beliefs_for(rule: Rule, sc: Scenario) -> WeightedBeliefs | None:
    if rule is Rule.SEU and len(sc.beliefs) != 1:
        raise RulePreconditionError("SEU needs exactly one measure")
    return None if rule is Rule.REG else sc.beliefs


def _constant_for(lottery_row: np.ndarray, like: Act, name: str) -> Act:
    return Act(name, like.states, like.prizes, np.tile(lottery_row, (len(like.states), 1)))


# ---------------------------------------------------------------------------
# per-axiom evaluators
# ---------------------------------------------------------------------------


def _transitivity(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    menu = sc.menu(probe["menu"])
    j.add(probe["menu"], menu)
    r = j.ranking(probe["menu"])
    tier = np.array([r.tier_of(n) for n in menu.names])
    good = np.array([goodness(r.rule, r.scores[n]) for n in menu.names])
    weak = (tier[:, None] <= tier[None, :]).astype(int)
    chained = (weak @ weak) > 0
    if not np.any(chained & (good[:, None] - good[None, :] < -VIOLATION_MARGIN)):
        return ProbeOutcome("ok")
    acts = menu.acts
    for f in acts:
        for g in acts:
            for h in acts:
                fg, gh, fh = (
                    j.compare(probe["menu"], f, g),
                    j.compare(probe["menu"], g, h),
                    j.compare(probe["menu"], f, h),
                )
                if fg.weak and gh.weak and fh.contradicts_weak():
                    return ProbeOutcome("violation", [fg, gh, fh])
    return ProbeOutcome("ok")


def _completeness(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    menu = sc.menu(probe["menu"])
    j.add(probe["menu"], menu)
    for f in menu:
        for g in menu:
            c1, c2 = j.compare(probe["menu"], f, g), j.compare(probe["menu"], g, f)
            if not (c1.weak or c2.weak):
                return ProbeOutcome("violation", [c1, c2])
    return ProbeOutcome("ok")


def _nontriviality(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    menu = sc.menu(probe["menu"])
    j.add(probe["menu"], menu)
    r = j.ranking(probe["menu"])
    if len(r.tiers) < 2:
        return ProbeOutcome("vacuous", note="all acts indifferent in this menu")
    c = j.compare(probe["menu"], menu[r.tiers[0][0]], menu[r.tiers[-1][0]])
    return ProbeOutcome("ok", [c])


def _constant_pair_prefers(j: _Judge, f: Act, g: Act, i: int, label: str) -> Comparison:
    cf = _constant_for(f.matrix[i], f, f"({f.name}@{f.states.states[i]})*")
    cg = _constant_for(g.matrix[i], g, f"({g.name}@{g.states.states[i]})*")
    if cf.same_outcomes(cg):
        cg = cf
    name = j.add(label, Menu([cf, cg]))
    return j.compare(name, cf, cg)


def _monotonicity(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    menu = sc.menu(probe["menu"])
    f, g = _act(sc, probe, "f"), _act(sc, probe, "g")
    pointwise = []
    for i, s in enumerate(sc.states):
        c = _constant_pair_prefers(j, f, g, i, f"{{f({s})*,g({s})*}}")
        if not c.weak:
            return ProbeOutcome("vacuous", note=f"f(s)* not weakly preferred at {s}")
        pointwise.append(c)
    j.add(probe["menu"], menu)
    c = j.compare(probe["menu"], f, g)
    if c.contradicts_weak():
        return ProbeOutcome("violation", [*pointwise, c])
    return ProbeOutcome("ok", [c])


def _continuity_search(j: _Judge, menu: Menu, f: Act, g: Act, h: Act, upper: bool):
    qs = list(reversed(MIX_GRID)) + [1 - d for d in _DYADIC] if upper else list(MIX_GRID) + list(_DYADIC)
    q_arr = np.array(qs)[:, None]
    mixes = q_arr * f.utilities + (1 - q_arr) * h.utilities
    base = np.broadcast_to(menu.utility_matrix, (len(qs), *menu.utility_matrix.shape))
    good = j.goodness_batch(np.concatenate([base, mixes[:, None, :]], axis=1))
    gap = good[:, -1] - good[:, menu.index(g.name)]
    if not upper:
        gap = -gap
    for q, screen in zip(qs, gap):
        # a strict preference needs a positive gap; the margin absorbs the
        # rounding between this screen and the exact comparison
        if screen <= -EPS_PREF:
            continue
        mix = mix_acts(q, f, h)
        name = j.add(f"M+{mix.name}", menu.with_acts(mix))
        c = j.compare(name, mix, g) if upper else j.compare(name, g, mix)
        if c.relation == ">":
            return q, c
    return None, None


def _mixture_continuity(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    menu = sc.menu(probe["menu"])
    f, g, h = (_act(sc, probe, k) for k in ("f", "g", "h"))
    j.add(probe["menu"], menu)
    fg, gh = j.compare(probe["menu"], f, g), j.compare(probe["menu"], g, h)
    if fg.relation != ">" or gh.relation != ">":
        return ProbeOutcome("vacuous", [fg, gh], note="f > g > h does not hold")
    q, cq = _continuity_search(j, menu, f, g, h, upper=True)
    r, cr = _continuity_search(j, menu, f, g, h, upper=False)
    if q is None or r is None:
        return ProbeOutcome("inconclusive", [fg, gh], note="no grid witness for q or r")
    return ProbeOutcome("ok", [fg, gh, cq, cr], note=f"q={q!r} r={r!r}")


def _ambiguity_aversion(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    menu = sc.menu(probe["menu"])
    f, g = _act(sc, probe, "f"), _act(sc, probe, "g")
    p = _p(probe)
    j.add(probe["menu"], menu)
    c0 = j.compare(probe["menu"], f, g)
    if c0.relation != "~":
        return ProbeOutcome("vacuous", [c0], note="f and g not indifferent")
    mix = mix_acts(p, f, g)
    name = j.add(f"{probe['menu']}+mix", menu.with_acts(mix))
    c = j.compare(name, mix, g)
    if c.contradicts_weak():
        return ProbeOutcome("violation", [c0, c])
    return ProbeOutcome("ok", [c0, c])


def _mixed_pair_menu(j: _Judge, policy: MenuPolicy, menu_name: str, menu: Menu, mf, mg, h, p):
    if policy is MenuPolicy.TRANSFORMED:
        return j.add(f"mix({p!r},{menu_name},{h.name})", mix_menu(p, menu, h))
    return j.add(f"{menu_name}+mixes", menu.with_acts(mf, mg))


def _independence(j: _Judge, sc, policy, probe, constant_only: bool = False) -> ProbeOutcome:
    menu = sc.menu(probe["menu"])
    f, g, h = (_act(sc, probe, k) for k in ("f", "g", "h"))
    p = _p(probe)
    if constant_only and not h.is_constant():
        raise RulePreconditionError("C-Independence needs a constant act h")
    j.add(probe["menu"], menu)
    c1 = j.compare(probe["menu"], f, g)
    mf, mg = mix_acts(p, f, h), mix_acts(p, g, h)
    name = _mixed_pair_menu(j, policy, probe["menu"], menu, mf, mg, h, p)
    c2 = j.compare(name, mf, mg)
    if _iff_violated(c1, c2):
        return ProbeOutcome("violation", [c1, c2])
    return ProbeOutcome("ok", [c1, c2])


def _constant_menu_independence(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    l1, l2 = _act(sc, probe, "f"), _act(sc, probe, "g")
    if not (l1.is_constant() and l2.is_constant()):
        raise RulePreconditionError("constant-menu independence compares constant acts")
    m1, m2 = probe["menu"], probe["menu2"]
    j.add(m1, sc.menu(m1))
    j.add(m2, sc.menu(m2))
    c1, c2 = j.compare(m1, l1, l2), j.compare(m2, l1, l2)
    if _iff_violated(c1, c2):
        return ProbeOutcome("violation", [c1, c2])
    return ProbeOutcome("ok", [c1, c2])


def _ina(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    menu, extra = sc.menu(probe["menu"]), sc.menu(probe["menu2"])
    f, g = _act(sc, probe, "f"), _act(sc, probe, "g")
    if not all(never_strictly_optimal(h, menu) for h in extra):
        return ProbeOutcome("vacuous", note="an added act is sometimes strictly optimal")
    j.add(probe["menu"], menu)
    name = j.add(f"{probe['menu']}+{probe['menu2']}", menu.with_acts(*extra))
    c1, c2 = j.compare(probe["menu"], f, g), j.compare(name, f, g)
    if _iff_violated(c1, c2):
        return ProbeOutcome("violation", [c1, c2])
    return ProbeOutcome("ok", [c1, c2])


def _boundedness(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    menu = sc.menu(probe["menu"])
    prizes = menu.prizes
    n = len(menu.states)
    top_u = float(np.max(prizes.vector))
    cells = menu.utility_matrix.reshape(-1)
    stacks = np.empty((len(cells), 2, n))
    stacks[:, 0, :] = top_u
    stacks[:, 1, :] = cells[:, None]
    good = j.goodness_batch(stacks)
    if not np.any(good[:, 0] - good[:, 1] < -VIOLATION_MARGIN):
        return ProbeOutcome("ok")
    top = Act.from_prizes("best*", menu.states, prizes, [prizes.best] * n)
    for f in menu:
        for i, s in enumerate(menu.states):
            c = _constant_pair_prefers(j, top, f, i, f"{{best*,{f.name}({s})*}}")
            if c.contradicts_weak():
                return ProbeOutcome("violation", [c])
    return ProbeOutcome("ok")


def _axiom12(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    menu = sc.menu(probe["menu"])
    f, h = _act(sc, probe, "f"), _act(sc, probe, "h")
    p = _p(probe)
    if not h.is_constant():
        raise RulePreconditionError("Axiom 12 needs a constant act h")
    if not state_independent_outcomes(menu):
        return ProbeOutcome("vacuous", note="menu lacks state-independent outcome distributions")
    j.add(probe["menu"], menu)
    c0 = j.compare(probe["menu"], h, f)
    if c0.relation != "~":
        return ProbeOutcome("vacuous", [c0], note="h and f not indifferent")
    mix = mix_acts(p, f, h)
    name = j.add(f"{probe['menu']}+mix", menu.with_acts(mix))
    c = j.compare(name, mix, f)
    if abs(c.advantage) > VIOLATION_MARGIN:
        return ProbeOutcome("violation", [c0, c])
    return ProbeOutcome("ok", [c0, c])


def _resolve_updater(updater) -> Callable[[WeightedBeliefs, Event], WeightedBeliefs]:
    if updater is None:
        updater = "likelihood"
    if isinstance(updater, str):
        from ..updating import measure_by_measure_update

        table = {"likelihood": likelihood_update, "mbm": measure_by_measure_update}
        try:
            updater = table[updater]
        except KeyError:
            raise InvalidReferenceError(f"unknown updater {updater!r}") from None

    def run(b: WeightedBeliefs, e: Event) -> WeightedBeliefs:
        out = updater(b, e)
        return out.beliefs if isinstance(out, UpdateResult) else out

    return run


def _mdc_outcome(
    j: _Judge,
    beliefs: WeightedBeliefs,
    event: Event,
    menu: Menu,
    menu_name: str,
    f: Act,
    g: Act,
    h: Act,
    updater,
) -> ProbeOutcome:
    if event_weight(beliefs, event) == 0.0:
        raise RulePreconditionError(f"event {event.label} is null")
    menu.require(f, g, h)
    update = _resolve_updater(updater)
    cond = _Judge(Rule.MWER, update(beliefs, event))
    cond.add(menu_name, menu)
    c_cond = cond.compare(menu_name, f, g)
    c_cond = dataclasses.replace(c_cond, menu=f"{menu_name}|{event.label}")
    comparisons = [c_cond]
    first = None
    for h2 in [h, *[a for a in menu if a.name != h.name]]:
        spliced = splice_menu(menu, event, h2)
        name = j.add(f"{menu_name}{event.label}{h2.name}", spliced)
        c = j.compare(name, splice(f, event, h2), splice(g, event, h2))
        comparisons.append(c)
        if first is None:
            first = c
        if _iff_violated(c_cond, c):
            return ProbeOutcome("violation", comparisons, note=f"disagreement at h={h2.name}")
        if _iff_violated(first, c):
            return ProbeOutcome("violation", comparisons, note="'some h' and 'all h' readings differ")
    return ProbeOutcome("ok", comparisons)


def _mdc(j: _Judge, sc, policy, probe) -> ProbeOutcome:
    if j.rule is not Rule.MWER:
        raise RulePreconditionError("MDC is audited for MWER only")
    menu = sc.menu(probe["menu"])
    f, g, h = (_act(sc, probe, k) for k in ("f", "g", "h"))
    event = sc.event(probe["event"])
    return _mdc_outcome(
        j, sc.beliefs, event, menu, probe["menu"], f, g, h, probe.get("updater", "likelihood")
    )


_EVALUATORS = {
    Axiom.TRANSITIVITY: _transitivity,
    Axiom.COMPLETENESS: _completeness,
    Axiom.NONTRIVIALITY: _nontriviality,
    Axiom.MONOTONICITY: _monotonicity,
    Axiom.MIXTURE_CONTINUITY: _mixture_continuity,
    Axiom.AMBIGUITY_AVERSION: _ambiguity_aversion,
    Axiom.INDEPENDENCE: _independence,
    Axiom.CONSTANT_MENU_INDEPENDENCE: _constant_menu_independence,
    Axiom.INA: _ina,
    Axiom.BOUNDEDNESS: _boundedness,
    Axiom.C_INDEPENDENCE: lambda j, sc, pol, pr: _independence(j, sc, pol, pr, constant_only=True),
    Axiom.AXIOM12: _axiom12,
    Axiom.MDC: _mdc,
}


def evaluate_probe(
    axiom: Axiom | str,
    rule: Rule | str,
    scenario: Scenario,
    policy: MenuPolicy | str,
    probe: Mapping[str, Any],
) -> ProbeOutcome:
    axiom, rule, policy = Axiom.parse(axiom), Rule.parse(rule), MenuPolicy.parse(policy)
    judge = _Judge(rule, _beliefs_for(rule, scenario))
    out = _EVALUATORS[axiom](judge, scenario, policy, probe)
    out.menus = {k: v for k, v in judge.menus.items() if k not in scenario.menus}
    return out


def witness_from(
    axiom: Axiom, rule: Rule, policy: MenuPolicy, scenario: Scenario, probe, out: ProbeOutcome
) -> Witness:
    return Witness(
        axiom,
        rule,
        policy,
        scenario.extended(menus=out.menus),
        dict(probe),
        tuple(out.comparisons),
        out.note,
    )


def check_axiom(
    axiom: Axiom | str,
    rule: Rule | str,
    scenario: Scenario,
    policy: MenuPolicy | str,
    probe: Mapping[str, Any],
) -> AuditReport:
    """Evaluate one axiom instance and wrap the outcome as a one-trial report."""
    axiom, rule, policy = Axiom.parse(axiom), Rule.parse(rule), MenuPolicy.parse(policy)
    out = evaluate_probe(axiom, rule, scenario, policy, probe)
    witness = None
    if out.status == "violation":
        witness = witness_from(axiom, rule, policy, scenario, probe, out)
    return AuditReport(
        axiom,
        rule,
        policy,
        trials=1,
        violations=int(out.status == "violation"),
        supported=int(out.status == "ok"),
        vacuous=int(out.status == "vacuous"),
        inconclusive=int(out.status == "inconclusive"),
        witness=witness,
    )


def replay(witness: Witness) -> AuditReport:
    """Re-run the probe stored in a witness."""
    return check_axiom(witness.axiom, witness.rule, witness.scenario, witness.policy, witness.probe)


# ---------------------------------------------------------------------------
# dynamic checks
# ---------------------------------------------------------------------------


def check_theorem2_identity(
    beliefs: WeightedBeliefs, event: Event, menu: Menu, f: Act, h: Act
) -> float:
    """Gap between the spliced MWER score and the scaled conditional score.

    Returns ``|reg_{MEh}(fEh) - w(E) * reg_{M, B|E}(f)|``; zero up to rounding.
    """
    menu.require(f, h)
    updated = likelihood_update(beliefs, event).beliefs
    lhs = max_weighted_expected_regret(splice(f, event, h), splice_menu(menu, event, h), beliefs)
    rhs = event_weight(beliefs, event) * max_weighted_expected_regret(f, menu, updated)
    return abs(lhs - rhs)


def check_mdc(
    beliefs: WeightedBeliefs,
    event: Event,
    menu: Menu,
    f: Act,
    g: Act,
    h: Act,
    *,
    updater="likelihood",
) -> AuditReport:
    """Conditional MWER comparison of ``f, g`` against the spliced comparison.

    Every ``h'`` in the menu is tried, so the report also covers the claim that
    the "some h" and "all h" readings agree.
    """
    judge = _Judge(Rule.MWER, beliefs)
    out = _mdc_outcome(judge, beliefs, event, menu, "M", f, g, h, updater)
    witness = None
    if out.status == "violation":
        sc = Scenario(
            menu.states,
            menu.prizes,
            {a.name: a for a in menu},
            {"M": menu},
            beliefs,
            {"E": Event(event.space, event.members, "E")},
        )
        probe = {"menu": "M", "event": "E", "f": f.name, "g": g.name, "h": h.name}
        if isinstance(updater, str):
            probe["updater"] = updater
        witness = witness_from(Axiom.MDC, Rule.MWER, MenuPolicy.FIXED, sc, probe, out)
    return AuditReport(
        Axiom.MDC,
        Rule.MWER,
        MenuPolicy.FIXED,
        trials=1,
        violations=int(out.status == "violation"),
        supported=int(out.status == "ok"),
        witness=witness,
    )


def belief_distance(a: WeightedBeliefs, b: WeightedBeliefs) -> float:
    """Sup-norm gap between two weighted sets after matching measures.

    Infinite when the sets have different sizes.
    """
    if len(a) != len(b):
        return float("inf")
    worst = 0.0
    for x, y in ((a, b), (b, a)):
        for m, w in x:
            gaps = [max(m.distance(m2), abs(w - w2)) for m2, w2 in y]
            worst = max(worst, min(gaps))
    return worst


def check_prop1(beliefs: WeightedBeliefs, e1: Event, e2: Event) -> float:
    """Largest disagreement among updating on ``e1`` then ``e2``, the reverse
    order, and the intersection directly."""
    direct = likelihood_update(beliefs, e1 & e2).beliefs
    forward = sequential_update(beliefs, [e1, e2]).beliefs
    backward = sequential_update(beliefs, [e2, e1]).beliefs
    return max(
        belief_distance(forward, backward),
        belief_distance(forward, direct),
        belief_distance(backward, direct),
    )
