"""Small named scenarios used throughout the docs and tests."""

from __future__ import annotations

from .model import (
    Act,
    Event,
    Measure,
    Menu,
    PrizeSpace,
    Scenario,
    StateSpace,
    WeightedBeliefs,
)

DELIVERY_PAYOFFS = {
    "cont": (10_000, -10_000),
    "back": (0, 0),
    "check": (5_001, -4_999),
    "new": (20_000, -20_000),
}


def utility_prize_name(value: float) -> str:
    """``u`` followed by the shortest text that reads back as ``value``."""
    short = f"{value:g}"
    return "u" + (short if float(short) == value else repr(value))


def utility_prizes(values) -> PrizeSpace:
    """One prize per distinct utility value, named after the value."""
    distinct = sorted(set(float(v) for v in values))
    return PrizeSpace(tuple(utility_prize_name(v) for v in distinct), tuple(distinct))


def utility_act(name: str, states: StateSpace, prizes: PrizeSpace, utilities) -> Act:
    """Act paying a sure prize with the given utility in each state."""
    table = dict(zip(prizes.utilities, prizes.prizes))
    return Act.from_prizes(name, states, prizes, [table[float(u)] for u in utilities])


def delivery_scenario(weight_ten: float = 1.0) -> Scenario:
    """The cupcake-delivery problem collapsed to the two states that matter.

    Menus ``M0`` (cont, back, check) and ``M1`` (plus ``new``); measures
    ``Pr1`` and ``Pr10`` are point masses with weights ``1`` and ``weight_ten``.
    """
    states = StateSpace(("one_broken", "ten_broken"))
    prizes = utility_prizes(v for pay in DELIVERY_PAYOFFS.values() for v in pay)
    acts = {n: utility_act(n, states, prizes, pay) for n, pay in DELIVERY_PAYOFFS.items()}
    pr1 = Measure(states, (1.0, 0.0), "Pr1")
    pr10 = Measure(states, (0.0, 1.0), "Pr10")
    return Scenario(
        states,
        prizes,
        acts,
        {
            "M0": Menu([acts["cont"], acts["back"], acts["check"]]),
            "M1": Menu([acts["cont"], acts["back"], acts["check"], acts["new"]]),
        },
        WeightedBeliefs([(pr1, 1.0), (pr10, weight_ten)]),
        {
            "one": Event(states, frozenset({"one_broken"}), "one"),
            "ten": Event(states, frozenset({"ten_broken"}), "ten"),
        },
    )


def updown_scenario() -> Scenario:
    """Two states, acts ``up = (1, 0)`` and ``down = (0, 1)``, both point masses weight 1."""
    states = StateSpace(("s1", "s2"))
    prizes = PrizeSpace(("zero", "one"), (0.0, 1.0))
    up = Act.from_prizes("up", states, prizes, ["one", "zero"])
    down = Act.from_prizes("down", states, prizes, ["zero", "one"])
    beliefs = WeightedBeliefs(
        [(Measure.point_mass(states, "s1"), 1.0), (Measure.point_mass(states, "s2"), 1.0)]
    )
    return Scenario(
        states, prizes, {"up": up, "down": down}, {"M": Menu([up, down])}, beliefs, {}
    )
