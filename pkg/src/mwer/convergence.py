"""Weight dynamics under repeated observation, and the cupcake-delivery walkthrough.

``simulate_iid`` runs likelihood updating on i.i.d. draws without building
product state spaces: each round multiplies a candidate's weight by the
probability it gave the observed outcome and rescales so the largest weight
is 1.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .errors import SpaceMismatchError, UpdateUndefinedError, ValidationError
from .fixtures import delivery_scenario
from .model import Measure, Menu, WeightedBeliefs
from .rules import PreferenceRanking, Rule, rank, regret_matrix

# ---------------------------------------------------------------------------
# i.i.d. simulation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightTrajectory:
    """Weights of each candidate after every round (row 0 is the prior)."""

    names: tuple[str, ...]
    weights: NDArray
    outcomes: tuple[str, ...]
    seed: int | None

    @property
    def rounds(self) -> int:
        return len(self.outcomes)

    @property
    def final(self) -> dict[str, float]:
        return {n: float(w) for n, w in zip(self.names, self.weights[-1])}

    def summary(self) -> dict:
        counts = {o: self.outcomes.count(o) for o in dict.fromkeys(sorted(self.outcomes))}
        return {
            "seed": self.seed,
            "rounds": self.rounds,
            "final_weights": self.final,
            "leader": self.names[int(np.argmax(self.weights[-1]))],
            "outcome_counts": counts,
        }


def simulate_iid(
    candidates: WeightedBeliefs,
    truth: Measure,
    rounds: int,
    seed: int | None = None,
) -> WeightTrajectory:
    """Draw ``rounds`` outcomes from ``truth`` and likelihood-update the candidates.

    Weights are tracked in log space, so long runs neither underflow the
    leader nor lose the exact ``max = 1`` normalization.
    """
    if rounds < 0:
        raise ValidationError(f"rounds must be nonnegative, got {rounds}")
    if truth.space != candidates.space:
        raise SpaceMismatchError("truth and candidates over different outcome spaces")
    rng = np.random.default_rng(seed)
    space = candidates.space
    draws = rng.choice(len(space), size=rounds, p=truth.vector)

    with np.errstate(divide="ignore"):
        log_like = np.log(candidates.matrix)
        log_w = np.log(candidates.weights)
    history = np.empty((rounds + 1, len(candidates)))
    history[0] = candidates.weights
    for t, o in enumerate(draws, start=1):
        log_w = log_w + log_like[:, o]
        top = log_w.max()
        if not np.isfinite(top):
            raise UpdateUndefinedError(
                f"round {t}: every candidate gives outcome {space.states[o]!r} probability 0"
            )
        log_w = log_w - top
        history[t] = np.exp(log_w)
    history.setflags(write=False)
    names = tuple(m.name or f"m{i + 1}" for i, m in enumerate(candidates.measures))
    return WeightTrajectory(names, history, tuple(space.states[o] for o in draws), seed)


# ---------------------------------------------------------------------------
# ranking distance
# ---------------------------------------------------------------------------


def ranking_divergence(a: PreferenceRanking, b: PreferenceRanking) -> float:
    """Normalized Kendall-tau distance between two weak orders.

    A pair ordered strictly one way in ``a`` and the other way in ``b`` counts
    1; a pair tied in one ranking but strict in the other counts 1/2.
    """
    names = sorted(a.scores)
    if set(names) != set(b.scores):
        raise ValidationError("rankings are over different menus")
    if len(names) < 2:
        return 0.0
    ta = {n: a.tier_of(n) for n in names}
    tb = {n: b.tier_of(n) for n in names}
    total = 0.0
    pairs = 0
    for x, y in itertools.combinations(names, 2):
        pairs += 1
        da = np.sign(ta[x] - ta[y])
        db = np.sign(tb[x] - tb[y])
        if da * db < 0:
            total += 1.0
        elif da != db:
            total += 0.5
    return total / pairs


# ---------------------------------------------------------------------------
# cupcake delivery
# ---------------------------------------------------------------------------

BATCH = 1000
BROKEN = 10


def _check_n(n_good: int) -> int:
    if isinstance(n_good, bool) or int(n_good) != n_good:
        raise ValidationError(f"N must be an integer, got {n_good!r}")
    n_good = int(n_good)
    if not 0 <= n_good <= BATCH:
        raise ValidationError(f"N must lie in [0, {BATCH}], got {n_good}")
    return n_good


def delivery_pr1_likelihood(n_good: int) -> float:
    """Chance that the first ``N`` cupcakes are good when exactly one of 1000 is broken."""
    n_good = _check_n(n_good)
    return (BATCH - n_good) / BATCH


def delivery_pr10_likelihood(n_good: int) -> float:
    """Same chance when ten are broken: C(1000-N, 10) / C(1000, 10)."""
    n_good = _check_n(n_good)
    if n_good > BATCH - BROKEN:
        return 0.0
    out = 1.0
    for k in range(BROKEN):
        out *= (BATCH - n_good - k) / (BATCH - k)
    return out


def delivery_weight(n_good: int) -> float:
    """Weight of the ten-broken measure after seeing ``N`` good cupcakes.

    The ratio of the two likelihoods above; the leading factor of the ten-
    broken product cancels against the one-broken likelihood, leaving nine
    factors each in [0, 1].
    """
    n_good = _check_n(n_good)
    if n_good > BATCH - BROKEN:
        return 0.0
    out = 1.0
    for k in range(1, BROKEN):
        out *= (BATCH - n_good - k) / (BATCH - k)
    return out


def delivery_beliefs(n_good: int) -> WeightedBeliefs:
    """Prior beliefs of the delivery problem after ``N`` good cupcakes.

    Once the ten-broken measure has likelihood 0 it is dropped rather than
    kept with weight 0, which is what likelihood updating does.
    """
    base = delivery_scenario().beliefs
    pr1, pr10 = base.measures
    w = delivery_weight(n_good)
    if w == 0.0:
        return WeightedBeliefs([(pr1, 1.0)])
    return WeightedBeliefs([(pr1, 1.0), (pr10, w)])


DEMO_RULES = (Rule.MWER, Rule.MER, Rule.SEU, Rule.MMEU, Rule.REG)


@dataclass(frozen=True)
class DeliveryReport:
    n_good: int
    weight: float
    pr1_likelihood: float
    pr10_likelihood: float
    rankings: dict[tuple[str, Rule], PreferenceRanking]
    payoffs: dict[str, tuple[float, ...]]
    regrets: dict[str, dict[str, tuple[float, ...]]]
    states: tuple[str, ...] = field(default=())

    def ranking(self, menu: str, rule: Rule | str) -> PreferenceRanking:
        return self.rankings[(menu, Rule.parse(rule))]

    def to_record(self) -> dict:
        return {
            "n_good": self.n_good,
            "weight_pr10": self.weight,
            "likelihood_pr1": self.pr1_likelihood,
            "likelihood_pr10": self.pr10_likelihood,
            "states": list(self.states),
            "payoffs": {k: list(v) for k, v in self.payoffs.items()},
            "regrets": {m: {k: list(v) for k, v in t.items()} for m, t in self.regrets.items()},
            "rankings": [
                {
                    "menu": menu,
                    "rule": rule.value,
                    "tiers": [list(t) for t in r.tiers],
                    "scores": r.scores,
                }
                for (menu, rule), r in self.rankings.items()
            ],
        }

    def render(self) -> str:
        lines = [
            f"N = {self.n_good} good cupcakes observed",
            f"  Pr1(E) = {self.pr1_likelihood:.6g}   Pr10(E) = {self.pr10_likelihood:.6g}"
            f"   weight(Pr10) = {self.weight:.6g}",
            "",
            _table("payoffs", self.states, self.payoffs),
        ]
        for menu, table in self.regrets.items():
            lines += ["", _table(f"regret in {menu}", self.states, table)]
        lines.append("")
        width = max(len(r.name) for r in DEMO_RULES)
        for menu in self.regrets:
            lines.append(f"rankings on {menu}")
            for rule in DEMO_RULES:
                r = self.rankings[(menu, rule)]
                sc = ", ".join(f"{n}={v:.6g}" for n, v in r.scores.items())
                lines.append(f"  {rule.name.ljust(width)}  {str(r):<32} {sc}")
        return "\n".join(lines)


def _table(title: str, states, rows: dict[str, tuple[float, ...]]) -> str:
    name_w = max(len(title), *(len(n) for n in rows))
    col_w = max(12, *(len(s) + 2 for s in states))
    head = title.ljust(name_w) + "".join(s.rjust(col_w) for s in states)
    body = [n.ljust(name_w) + "".join(f"{v:>{col_w}.6g}" for v in vals) for n, vals in rows.items()]
    return "\n".join([head, *body])


def delivery_demo(n_good: int) -> DeliveryReport:
    """Rank the delivery acts under every rule after ``N`` good cupcakes."""
    n_good = _check_n(n_good)
    sc = delivery_scenario()
    beliefs = delivery_beliefs(n_good)
    pr1 = WeightedBeliefs([(beliefs.measures[0], 1.0)])
    rankings = {}
    regrets = {}
    for menu_name in ("M0", "M1"):
        menu: Menu = sc.menu(menu_name)
        for rule in DEMO_RULES:
            rankings[(menu_name, rule)] = rank(rule, menu, pr1 if rule is Rule.SEU else beliefs)
        reg = regret_matrix(menu)
        regrets[menu_name] = {n: tuple(float(x) for x in row) for n, row in zip(menu.names, reg)}
    payoffs = {a.name: tuple(float(u) for u in a.utilities) for a in sc.menu("M1")}
    return DeliveryReport(
        n_good,
        delivery_weight(n_good),
        delivery_pr1_likelihood(n_good),
        delivery_pr10_likelihood(n_good),
        rankings,
        payoffs,
        regrets,
        sc.states.states,
    )


@dataclass(frozen=True)
class SweepRow:
    n_good: int
    weight: float
    mwer_m0: PreferenceRanking
    mwer_m1: PreferenceRanking
    to_mer: float
    to_seu: float


def delivery_sweep(values: Iterable[int]) -> list[SweepRow]:
    """MWER rankings across ``N``, with their distance to MER and SEU(Pr1) on M0."""
    rows = []
    for n in values:
        rep = delivery_demo(n)
        m0 = rep.ranking("M0", Rule.MWER)
        rows.append(
            SweepRow(
                rep.n_good,
                rep.weight,
                m0,
                rep.ranking("M1", Rule.MWER),
                ranking_divergence(m0, rep.ranking("M0", Rule.MER)),
                ranking_divergence(m0, rep.ranking("M0", Rule.SEU)),
            )
        )
    return rows


def render_sweep(rows: list[SweepRow]) -> str:
    head = f"{'N':>5}  {'weight':>11}  {'MWER on M0':<28}{'MWER on M1':<34}{'d(MER)':>7}{'d(SEU)':>8}"
    body = [
        f"{r.n_good:>5}  {r.weight:>11.5g}  {str(r.mwer_m0):<28}{str(r.mwer_m1):<34}"
        f"{r.to_mer:>7.3f}{r.to_seu:>8.3f}"
        for r in rows
    ]
    return "\n".join([head, *body])
