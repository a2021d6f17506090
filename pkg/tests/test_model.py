from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mwer.errors import InvalidReferenceError, SpaceMismatchError, ValidationError
from mwer.model import (
    Act,
    Event,
    Lottery,
    Measure,
    Menu,
    PrizeSpace,
    Scenario,
    StateSpace,
    WeightedBeliefs,
    constant_act,
    expected_utility,
    lottery_utility,
    mix_acts,
    mix_menu,
    splice,
    splice_menu,
)
from mwer.rules import regret_matrix

from strategies import acts, beliefs, events, spaces, unit

# ---------------------------------------------------------------------------
# spaces and lotteries
# ---------------------------------------------------------------------------


def test_state_space_rejects_duplicates_and_empty():
    with pytest.raises(ValidationError):
        StateSpace(("a", "a"))
    with pytest.raises(ValidationError):
        StateSpace(())


def test_prize_space_needs_two_distinct_utilities():
    with pytest.raises(ValidationError):
        PrizeSpace(("x", "y"), (1.0, 1.0))
    with pytest.raises(ValidationError):
        PrizeSpace(("x",), (1.0,))
    with pytest.raises(ValidationError):
        PrizeSpace(("x", "y"), (0.0, float("inf")))
    p = PrizeSpace.from_mapping({"lo": -1.0, "hi": 2.0})
    assert p.best == "hi" and p.worst == "lo"


def test_lottery_utility_examples():
    prizes = PrizeSpace(("win", "lose", "one", "zero"), (10_000.0, -10_000.0, 1.0, 0.0))
    assert lottery_utility(Lottery.point("win"), prizes) == 10_000
    assert lottery_utility(Lottery({"win": 0.5, "lose": 0.5}), prizes) == 0
    assert lottery_utility(Lottery({"one": 0.3, "zero": 0.7}), prizes) == pytest.approx(0.3, abs=1e-15)


def test_lottery_validation():
    with pytest.raises(ValidationError):
        Lottery({"a": 0.5, "b": 0.4})
    with pytest.raises(ValidationError):
        Lottery({"a": 1.2, "b": -0.2})
    prizes = PrizeSpace(("a", "b"), (0.0, 1.0))
    with pytest.raises(InvalidReferenceError):
        lottery_utility(Lottery.point("zzz"), prizes)
    # within the 1e-9 input tolerance, stored renormalized
    lot = Lottery({"a": 0.5, "b": 0.5 + 5e-10})
    assert sum(lot.support.values()) == pytest.approx(1.0, abs=1e-15)


# ---------------------------------------------------------------------------
# acts
# ---------------------------------------------------------------------------


def test_act_shape_and_distribution_checks():
    s = StateSpace(("s1", "s2"))
    p = PrizeSpace(("a", "b"), (0.0, 1.0))
    with pytest.raises(ValidationError):
        Act("f", s, p, [[1.0, 0.0]])
    with pytest.raises(ValidationError):
        Act("f", s, p, [[0.6, 0.6], [1.0, 0.0]])
    with pytest.raises(ValidationError):
        Act.from_lotteries("f", s, p, {"s1": Lottery.point("a")})
    with pytest.raises(InvalidReferenceError):
        Act.from_lotteries("f", s, p, {"s1": Lottery.point("a"), "s2": Lottery.point("a"), "s3": Lottery.point("a")})


def test_act_is_immutable():
    s = StateSpace(("s1",))
    p = PrizeSpace(("a", "b"), (0.0, 1.0))
    f = Act.from_prizes("f", s, p, ["a"])
    with pytest.raises(AttributeError):
        f.name = "g"
    with pytest.raises(ValueError):
        f.matrix[0, 0] = 0.5


def test_expected_utility_examples(delivery):
    cont, check = delivery.act("cont"), delivery.act("check")
    pr1 = delivery.beliefs.measure("Pr1")
    uniform = Measure.uniform(delivery.states)
    assert expected_utility(cont, pr1) == 10_000
    assert expected_utility(check, uniform) == 1.0
    point = Measure.point_mass(delivery.states, "ten_broken")
    assert expected_utility(check, point) == check.utilities[1]


def test_expected_utility_space_mismatch(delivery):
    other = Measure.uniform(StateSpace(("x", "y")))
    with pytest.raises(SpaceMismatchError):
        expected_utility(delivery.act("cont"), other)


def test_mix_examples(updown, delivery):
    up, down = updown.act("up"), updown.act("down")
    assert mix_acts(1.0, up, down) is up
    assert mix_acts(0.0, up, down) is down
    half = mix_acts(0.5, up, down)
    assert half.utilities.tolist() == [0.5, 0.5]
    with pytest.raises(ValidationError):
        mix_acts(1.5, up, down)

    m0 = delivery.menu("M0")
    back = delivery.act("back")
    assert mix_menu(1.0, m0, back).names == m0.names
    assert len(mix_menu(0.0, m0, back)) == 1
    mixed = mix_menu(0.5, m0, back)
    cont_mix = next(a for a in mixed if "cont" in a.name)
    assert cont_mix.utilities.tolist() == [5000.0, -5000.0]


def test_splice_examples(delivery):
    cont, back = delivery.act("cont"), delivery.act("back")
    one = delivery.event("one")
    assert splice(cont, one, back).utilities.tolist() == [10_000.0, 0.0]
    assert splice(cont, Event.full(delivery.states), back) is cont
    assert splice(cont, Event.empty(delivery.states), back) is back
    assert len(splice_menu(delivery.menu("M0"), Event.empty(delivery.states), back)) == 1


def test_constant_act_examples(delivery):
    lot = Lottery.point("u5001")
    c = constant_act(lot, delivery.states, delivery.prizes)
    assert c.is_constant()
    assert c.utilities.tolist() == [5001.0, 5001.0]
    for m in (Measure.uniform(delivery.states), *delivery.beliefs.measures):
        assert expected_utility(c, m) == lottery_utility(lot, delivery.prizes)
    assert regret_matrix(Menu([c])).tolist() == [[0.0, 0.0]]


# ---------------------------------------------------------------------------
# menus, measures, beliefs, events
# ---------------------------------------------------------------------------


def test_menu_invariants(delivery):
    with pytest.raises(ValidationError):
        Menu([])
    cont = delivery.act("cont")
    fake = cont.renamed("cont2").renamed("cont")
    assert len(Menu([cont, fake])) == 1  # identical act listed twice
    clash = Act("cont", cont.states, cont.prizes, delivery.act("back").matrix)
    with pytest.raises(ValidationError):
        Menu([cont, clash])
    m0 = delivery.menu("M0")
    assert "cont" in m0 and cont in m0 and clash not in m0


def test_measure_validation_and_tolerance():
    s = StateSpace(("a", "b"))
    with pytest.raises(ValidationError, match="sum"):
        Measure(s, (0.5, 0.4), "bad")
    with pytest.raises(ValidationError):
        Measure(s, (1.5, -0.5))
    m = Measure(s, (0.5, 0.5 + 1e-10))
    assert sum(m.probs) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(InvalidReferenceError):
        Measure.from_mapping(s, {"c": 1.0})


def test_weighted_beliefs_normalization():
    s = StateSpace(("a", "b"))
    p, q = Measure(s, (1.0, 0.0), "p"), Measure(s, (0.0, 1.0), "q")
    b = WeightedBeliefs([(p, 0.5), (q, 0.25)])
    assert b.weights.tolist() == [1.0, 0.5]
    with pytest.raises(ValidationError):
        WeightedBeliefs([(p, 0.0), (q, 0.0)])
    with pytest.raises(ValidationError):
        WeightedBeliefs([(p, 1.0), (Measure(s, (1.0, 0.0), "p2"), 1.0)])
    with pytest.raises(ValidationError):
        WeightedBeliefs([(p, 1.2)])
    with pytest.raises(ValidationError):
        WeightedBeliefs([])


def test_event_rejects_unknown_states():
    s = StateSpace(("a", "b"))
    with pytest.raises(InvalidReferenceError):
        Event(s, frozenset({"c"}))
    assert Event.empty(s).mask.tolist() == [False, False]


def test_scenario_cross_references(delivery):
    other = Act.from_prizes("ghost", delivery.states, delivery.prizes, ["u0", "u0"])
    with pytest.raises(InvalidReferenceError):
        Scenario(
            delivery.states,
            delivery.prizes,
            delivery.acts,
            {"X": Menu([other])},
            delivery.beliefs,
        )
    with pytest.raises(InvalidReferenceError):
        delivery.menu("nope")
    with pytest.raises(SpaceMismatchError):
        delivery.with_beliefs(WeightedBeliefs([(Measure.uniform(StateSpace(("x",))), 1.0)]))


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@given(st.data())
def test_mix_linearity(data):
    states, prizes = data.draw(spaces())
    f = data.draw(acts(states, prizes, "f"))
    g = data.draw(acts(states, prizes, "g"))
    p = data.draw(unit)
    h = mix_acts(p, f, g, name="h")
    expect = p * f.utilities + (1 - p) * g.utilities
    assert np.max(np.abs(h.utilities - expect)) <= 1e-12 * max(1.0, np.abs(prizes.vector).max())


@given(st.data())
def test_splice_idempotent(data):
    states, prizes = data.draw(spaces())
    f = data.draw(acts(states, prizes, "f"))
    h = data.draw(acts(states, prizes, "h"))
    e = data.draw(events(states))
    once = splice(f, e, h, name="x")
    twice = splice(once, e, h, name="x")
    assert np.array_equal(once.matrix, twice.matrix)


@given(st.data())
def test_beliefs_max_weight_exactly_one(data):
    states, _ = data.draw(spaces())
    b = data.draw(beliefs(states))
    assert b.weights.max() == 1.0
    assert np.all((b.weights >= 0) & (b.weights <= 1))


@given(st.data())
def test_scenario_acceptance_implies_invariants(data):
    states, prizes = data.draw(spaces())
    fs = [data.draw(acts(states, prizes, f"a{i}")) for i in range(data.draw(st.integers(1, 3)))]
    b = data.draw(beliefs(states))
    sc = Scenario(states, prizes, {f.name: f for f in fs}, {"M": Menu(fs)}, b)
    for f in sc.acts.values():
        assert np.allclose(f.matrix.sum(axis=1), 1.0, atol=1e-12) and f.matrix.min() >= 0
    for m in sc.beliefs.measures:
        assert abs(sum(m.probs) - 1.0) <= 1e-12 and min(m.probs) >= 0
    assert sc.beliefs.weights.max() == 1.0
