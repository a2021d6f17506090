"""Regret and the five decision rules.

Every rule reduces a menu to one score per act:

========  ==============================================  =========
rule      score                                           better
========  ==============================================  =========
SEU       expected utility under the single measure       higher
MMEU      minimum expected utility over the measures      higher
MER       maximum expected regret over the measures       lower
MWER      maximum weight * expected regret                lower
REG       maximum regret over states                      lower
========  ==============================================  =========

Score functions report the raw quantity; orientation is applied only when
building a :class:`PreferenceRanking`.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidReferenceError, RulePreconditionError, SpaceMismatchError
from .model import Act, Measure, Menu, WeightedBeliefs

EPS_PREF = 1e-9
"""Absolute tolerance under which two scores are a tie."""


class Rule(str, enum.Enum):
    SEU = "seu"
    MMEU = "mmeu"
    MER = "mer"
    MWER = "mwer"
    REG = "reg"

    @classmethod
    def parse(cls, text: str | Rule) -> Rule:
        if isinstance(text, Rule):
            return text
        try:
            return cls(str(text).lower())
        except ValueError:
            raise InvalidReferenceError(f"unknown rule {text!r}") from None


# True for the regret-based rules (lower score is better).
for _r in Rule:
    _r.minimizes = _r.value in ("mer", "mwer", "reg")
del _r


# ---------------------------------------------------------------------------
# regret quantities
# ---------------------------------------------------------------------------


def regret_matrix(menu: Menu) -> NDArray:
    """``reg_M(f, s)`` for every act (rows) and state (columns)."""
    u = menu.utility_matrix
    return u.max(axis=0) - u


def _row(f: Act, menu: Menu) -> int:
    menu.require(f)
    return menu.index(f.name)


def _check_measure(menu: Menu, measure: Measure) -> None:
    if measure.space != menu.states:
        raise SpaceMismatchError("measure and menu over different state spaces")


def regret(f: Act, state: str, menu: Menu) -> float:
    """Best utility available in ``state`` minus the utility of ``f`` there."""
    i = _row(f, menu)
    j = menu.states.index(state)
    col = menu.utility_matrix[:, j]
    return float(col.max() - col[i])


def worst_case_regret(f: Act, menu: Menu) -> float:
    return float(regret_matrix(menu)[_row(f, menu)].max())


def expected_regret(f: Act, menu: Menu, measure: Measure) -> float:
    _check_measure(menu, measure)
    return float(regret_matrix(menu)[_row(f, menu)] @ measure.vector)


def _as_measures(measures: Iterable[Measure] | WeightedBeliefs) -> list[Measure]:
    if isinstance(measures, WeightedBeliefs):
        return list(measures.measures)
    out = list(measures)
    if not out:
        raise RulePreconditionError("need at least one measure")
    return out


def max_expected_regret(f: Act, menu: Menu, measures: Iterable[Measure] | WeightedBeliefs) -> float:
    ms = _as_measures(measures)
    for m in ms:
        _check_measure(menu, m)
    r = regret_matrix(menu)[_row(f, menu)]
    return float(max(r @ m.vector for m in ms))


def max_weighted_expected_regret(f: Act, menu: Menu, beliefs: WeightedBeliefs) -> float:
    if beliefs.space != menu.states:
        raise SpaceMismatchError("beliefs and menu over different state spaces")
    r = regret_matrix(menu)[_row(f, menu)]
    return float(np.max(beliefs.weights * (beliefs.matrix @ r)))


# ---------------------------------------------------------------------------
# scoring
# ---------------------------------------------------------------------------


def score_matrix(
    rule: Rule, utilities: NDArray, probs: NDArray, weights: NDArray
) -> NDArray:
    """Raw scores from bare arrays.

    ``utilities`` is acts x states, ``probs`` is measures x states and
    ``weights`` has one entry per measure.
    Leading batch axes on ``utilities`` are allowed (``... x acts x states``).
    """
    if rule is Rule.SEU:
        if probs.shape[0] != 1:
            raise RulePreconditionError(
                f"SEU needs exactly one measure, got {probs.shape[0]}"
            )
        return utilities @ probs[0]
    if rule is Rule.MMEU:
        return (utilities @ probs.T).min(axis=-1)
    reg = utilities.max(axis=-2, keepdims=True) - utilities
    if rule is Rule.REG:
        return reg.max(axis=-1)
    er = reg @ probs.T
    if rule is Rule.MER:
        return er.max(axis=-1)
    return (er * weights).max(axis=-1)


def scores(rule: Rule | str, menu: Menu, beliefs: WeightedBeliefs | None) -> dict[str, float]:
    """Raw score of every act in the menu (REG ignores ``beliefs``)."""
    rule = Rule.parse(rule)
    if rule is Rule.REG:
        k = len(menu.states)
        probs, weights = np.eye(k)[:1], np.ones(1)
    else:
        if beliefs is None:
            raise RulePreconditionError(f"{rule.name} needs beliefs")
        if beliefs.space != menu.states:
            raise SpaceMismatchError("beliefs and menu over different state spaces")
        probs, weights = beliefs.matrix, beliefs.weights
    raw = score_matrix(rule, menu.utility_matrix, probs, weights)
    return {name: float(v) for name, v in zip(menu.names, raw)}


def goodness(rule: Rule, score: float) -> float:
    """Map a raw score onto a larger-is-better scale."""
    return -score if rule.minimizes else score


def group_tiers(names: Iterable[str], keys: Iterable[float], eps: float = EPS_PREF):
    """Group items into tiers, best (largest key) first.

    A tier collects every item whose key lies within ``eps`` of the tier's
    first member.  Ties keep input order.
    """
    pairs = sorted(zip(names, keys), key=lambda nk: -nk[1])
    tiers: list[list[str]] = []
    lead = None
    for name, key in pairs:
        if lead is None or lead - key > eps:
            tiers.append([name])
            lead = key
        else:
            tiers[-1].append(name)
    return tuple(tuple(t) for t in tiers)


@dataclass(frozen=True)
class PreferenceRanking:
    rule: Rule
    tiers: tuple[tuple[str, ...], ...]
    scores: dict[str, float]

    def tier_of(self, name: str) -> int:
        for i, tier in enumerate(self.tiers):
            if name in tier:
                return i
        raise InvalidReferenceError(f"act {name!r} is not ranked")

    def weakly_prefers(self, a: str, b: str) -> bool:
        return self.tier_of(a) <= self.tier_of(b)

    def strictly_prefers(self, a: str, b: str) -> bool:
        return self.tier_of(a) < self.tier_of(b)

    def indifferent(self, a: str, b: str) -> bool:
        return self.tier_of(a) == self.tier_of(b)

    def advantage(self, a: str, b: str) -> float:
        """How much better ``a`` scores than ``b`` (positive favours ``a``)."""
        return goodness(self.rule, self.scores[a]) - goodness(self.rule, self.scores[b])

    def tier_sets(self) -> list[frozenset[str]]:
        return [frozenset(t) for t in self.tiers]

    def same_order(self, other: PreferenceRanking) -> bool:
        return self.tier_sets() == other.tier_sets()

    @property
    def best(self) -> tuple[str, ...]:
        return self.tiers[0]

    def __str__(self) -> str:
        return " > ".join("[" + ", ".join(t) + "]" for t in self.tiers)


def rank(
    rule: Rule | str,
    menu: Menu,
    beliefs: WeightedBeliefs | None,
    *,
    extend: Iterable[Act] = (),
) -> PreferenceRanking:
    """Rank the acts of ``menu`` (optionally extended first) under ``rule``."""
    rule = Rule.parse(rule)
    extend = list(extend)
    if extend:
        menu = menu.with_acts(*extend)
    raw = scores(rule, menu, beliefs)
    tiers = group_tiers(raw, [goodness(rule, v) for v in raw.values()])
    return PreferenceRanking(rule, tiers, raw)


def compare(
    rule: Rule | str,
    menu: Menu,
    beliefs: WeightedBeliefs | None,
    f: Act,
    g: Act,
    *,
    extend: bool = False,
) -> PreferenceRanking:
    """Ranking of ``menu`` after checking both acts are members.

    With ``extend=True`` missing acts are added to the menu instead of
    raising :class:`MenuMembershipError`.
    """
    if extend:
        menu = menu.with_acts(*(a for a in (f, g) if a not in menu))
    menu.require(f, g)
    return rank(rule, menu, beliefs)
