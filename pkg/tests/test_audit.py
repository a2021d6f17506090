from __future__ import annotations

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from strategies import acts, spaces

from mwer.audit import (
    Axiom,
    MenuPolicy,
    ScenarioParams,
    audit_axiom,
    check_axiom,
    check_mdc,
    check_prop1,
    check_theorem2_identity,
    find_counterexample,
    never_strictly_optimal,
    random_scenario,
    replay,
    table4_matrix,
)
from mwer.audit.generate import (
    bracket_root,
    constant_tied_with,
    random_beliefs,
    random_lottery_rows,
    tie_with,
)
from mwer.errors import RulePreconditionError, ValidationError
from mwer.model import Event, Measure, Menu, StateSpace, WeightedBeliefs
from mwer.rules import Rule, rank
from mwer.scenario_io import dumps_json, loads_json, parse_witness, same_scenario, witness_document

# ---------------------------------------------------------------------------
# generator
# ---------------------------------------------------------------------------


def test_random_scenario_is_deterministic():
    for seed in range(20):
        assert same_scenario(random_scenario(seed=seed), random_scenario(seed=seed))
    assert not same_scenario(random_scenario(seed=1), random_scenario(seed=2))


def test_random_scenario_respects_bounds():
    params = ScenarioParams(states=(2, 2), acts=(2, 2), measures=(1, 1))
    for seed in range(50):
        sc = random_scenario(params, seed)
        assert len(sc.states) == 2 and len(sc.menu("M")) == 2 and len(sc.beliefs) == 1
        rank(Rule.SEU, sc.menu("M"), sc.beliefs)
    with pytest.raises(ValidationError):
        ScenarioParams(states=(3, 2))
    with pytest.raises(ValidationError):
        ScenarioParams(prizes=(1, 1))
    with pytest.raises(ValidationError):
        ScenarioParams(utility_range=(1.0, 1.0))


def test_random_lottery_rows_are_distributions():
    rows = random_lottery_rows(np.random.default_rng(0), 500, 4)
    assert rows.shape == (500, 4)
    assert np.all(rows >= 0) and np.allclose(rows.sum(axis=1), 1.0, atol=1e-12)


def test_random_beliefs_on_one_state_has_one_measure():
    one = StateSpace(("s",))
    b = random_beliefs(np.random.default_rng(0), one, 3)
    assert len(b) == 1 and b.weights.tolist() == [1.0]


def test_bracket_root_finds_sign_change():
    root = bracket_root(lambda t: t - 0.3, 0.0, 1.0)
    assert abs(root - 0.3) < 1e-9


def test_tie_constructions_produce_indifference():
    for seed in range(30):
        sc = random_scenario(seed=seed)
        menu = sc.menu("M")
        others, target = list(menu.acts[1:]), menu.acts[0]
        for rule in (Rule.MER, Rule.MWER, Rule.MMEU, Rule.REG):
            g = tie_with(rule, sc.beliefs, others, target, others[0], "tied")
            c = constant_tied_with(rule, sc.beliefs, others, target, "const")
            assert c.is_constant()
            for new in (g, c):
                r = rank(rule, Menu([*others, target, new]), sc.beliefs)
                assert abs(r.advantage(target.name, new.name)) < 1e-7


# ---------------------------------------------------------------------------
# single-axiom checks
# ---------------------------------------------------------------------------


def test_independence_fails_for_mmeu_on_updown(updown):
    probe = {"menu": "M", "f": "up", "g": "down", "h": "up", "p": 0.5}
    report = check_axiom(Axiom.INDEPENDENCE, Rule.MMEU, updown, MenuPolicy.TRANSFORMED, probe)
    assert report.verdict == "counterexample"
    c1, c2 = report.witness.comparisons
    assert c1.relation == "~"
    # mixing both with ``up`` leaves the down-mix with min EU 0.5 against 0
    assert c2.relation == "<" and c2.score_a == 0.0 and c2.score_b == 0.5
    assert replay(report.witness).verdict == "counterexample"


def test_independence_holds_for_mwer_on_updown(updown):
    probe = {"menu": "M", "f": "up", "g": "down", "h": "up", "p": 0.5}
    report = check_axiom(Axiom.INDEPENDENCE, Rule.MWER, updown, MenuPolicy.TRANSFORMED, probe)
    assert report.verdict == "supported"


def test_probe_preconditions(updown):
    with pytest.raises(RulePreconditionError):
        check_axiom(Axiom.INDEPENDENCE, Rule.MWER, updown, "transformed",
                    {"menu": "M", "f": "up", "g": "down", "h": "up", "p": 1.0})
    with pytest.raises(RulePreconditionError):
        check_axiom(Axiom.C_INDEPENDENCE, Rule.MWER, updown, "fixed",
                    {"menu": "M", "f": "up", "g": "down", "h": "up", "p": 0.5})
    with pytest.raises(RulePreconditionError):
        check_axiom(Axiom.TRANSITIVITY, Rule.SEU, updown, "fixed", {"menu": "M"})


@pytest.mark.parametrize("rule", list(Rule))
def test_nontriviality_on_delivery(delivery, rule):
    sc = delivery
    if rule is Rule.SEU:
        sc = sc.with_beliefs(WeightedBeliefs([(sc.beliefs.measure("Pr1"), 1.0)]))
    report = check_axiom(Axiom.NONTRIVIALITY, rule, sc, "fixed", {"menu": "M0"})
    assert report.verdict == "supported"
    assert report.supported == 1


def test_never_strictly_optimal_examples(delivery):
    m0 = delivery.menu("M0")
    assert not never_strictly_optimal(delivery.act("new"), m0)
    for a in m0:
        assert never_strictly_optimal(a, m0)
    # check is beaten by cont in one state and by back in the other
    assert never_strictly_optimal(delivery.act("check"), Menu([delivery.act("cont"), delivery.act("back")]))
    assert not never_strictly_optimal(delivery.act("back"), Menu([delivery.act("check"), delivery.act("cont")]))


@pytest.mark.parametrize("rule", [Rule.SEU, Rule.REG, Rule.MER, Rule.MWER, Rule.MMEU])
@pytest.mark.parametrize(
    "axiom",
    [Axiom.TRANSITIVITY, Axiom.COMPLETENESS, Axiom.AMBIGUITY_AVERSION, Axiom.BOUNDEDNESS, Axiom.MONOTONICITY],
)
def test_structural_axioms_have_no_violations(axiom, rule):
    report = audit_axiom(axiom, rule, MenuPolicy.FIXED, trials=300, seed=11)
    assert report.violations == 0
    assert report.trials == 300


def test_constant_mix_axiom_supported_for_mer():
    report = audit_axiom(Axiom.AXIOM12, Rule.MER, MenuPolicy.FIXED, trials=300, seed=5)
    assert report.violations == 0 and report.supported > 0


def test_audit_is_deterministic():
    a = audit_axiom(Axiom.INDEPENDENCE, Rule.MMEU, "transformed", trials=200, seed=9)
    b = audit_axiom(Axiom.INDEPENDENCE, Rule.MMEU, "transformed", trials=200, seed=9)
    assert (a.violations, a.supported, a.vacuous) == (b.violations, b.supported, b.vacuous)
    assert a.witness.probe == b.witness.probe
    assert same_scenario(a.witness.scenario, b.witness.scenario)


# ---------------------------------------------------------------------------
# counterexample search
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "axiom, rule, policy",
    [
        (Axiom.INDEPENDENCE, Rule.MMEU, MenuPolicy.TRANSFORMED),
        (Axiom.C_INDEPENDENCE, Rule.MER, MenuPolicy.FIXED),
        (Axiom.C_INDEPENDENCE, Rule.REG, MenuPolicy.FIXED),
        (Axiom.C_INDEPENDENCE, Rule.MWER, MenuPolicy.FIXED),
        (Axiom.AXIOM12, Rule.MWER, MenuPolicy.FIXED),
    ],
)
def test_search_finds_known_counterexamples(axiom, rule, policy):
    w, used = find_counterexample(axiom, rule, policy, budget=10_000, seed=0)
    assert w is not None and used <= 10_000
    assert replay(w).verdict == "counterexample"


def test_search_finds_nothing_for_mwer_independence():
    w, used = find_counterexample(Axiom.INDEPENDENCE, Rule.MWER, MenuPolicy.TRANSFORMED, budget=2_000)
    assert w is None and used == 2_000


def test_search_budget_must_be_positive():
    with pytest.raises(ValidationError):
        find_counterexample(Axiom.INDEPENDENCE, Rule.MMEU, budget=0)


def test_witness_survives_serialization():
    w, _ = find_counterexample(Axiom.C_INDEPENDENCE, Rule.MER, MenuPolicy.FIXED, budget=10_000)
    doc = loads_json(dumps_json(witness_document(w)))
    back = parse_witness(doc)
    assert back.probe == w.probe and back.axiom is w.axiom and back.policy is w.policy
    assert same_scenario(back.scenario, w.scenario)
    again = replay(back)
    assert again.verdict == "counterexample"
    assert [c.relation for c in again.witness.comparisons] == [c.relation for c in w.comparisons]


def test_rule_axiom_table_small_run_matches_pattern():
    report = table4_matrix(trials=40, budget=2_000, seed=0, rows=["Ind", "C-Ind"])
    assert report.cell("Ind", Rule.MWER).verdict == "supported"
    assert report.cell("Ind", Rule.MMEU).verdict == "counterexample"
    assert report.cell("C-Ind", Rule.MER).verdict == "counterexample"
    assert report.cell("C-Ind", Rule.SEU).verdict == "supported"
    text = report.render()
    assert "Ind" in text and "CX" in text
    with pytest.raises(ValidationError):
        table4_matrix(trials=0)


# ---------------------------------------------------------------------------
# dynamic consistency
# ---------------------------------------------------------------------------


def test_spliced_regret_identity_examples(delivery):
    m0 = delivery.menu("M0")
    full = Event.full(delivery.states)
    for f in m0:
        assert check_theorem2_identity(delivery.beliefs, full, m0, f, delivery.act("back")) == 0.0
        assert check_theorem2_identity(
            delivery.beliefs, delivery.event("one"), m0, f, delivery.act("back")
        ) < 1e-9


def test_spliced_regret_identity_random():
    for seed in range(300):
        sc = random_scenario(seed=seed)
        e = sc.event("E")
        menu = sc.menu("M")
        for f in menu:
            assert check_theorem2_identity(sc.beliefs, e, menu, f, menu.acts[-1]) < 1e-9


def test_mdc_holds_for_likelihood_updating():
    for seed in range(200):
        sc = random_scenario(seed=seed)
        menu = sc.menu("M")
        f, g = menu.acts[0], menu.acts[1]
        assert check_mdc(sc.beliefs, sc.event("E"), menu, f, g, menu.acts[-1]).violations == 0


def test_mdc_full_event_compares_identically(delivery):
    m0 = delivery.menu("M0")
    r = check_mdc(delivery.beliefs, Event.full(delivery.states), m0,
                  delivery.act("cont"), delivery.act("check"), delivery.act("back"))
    assert r.verdict == "supported"


def test_mdc_breaks_with_measure_by_measure_updating():
    w, _ = find_counterexample(
        Axiom.MDC, Rule.MWER, MenuPolicy.FIXED, budget=10_000, probe_overrides={"updater": "mbm"}
    )
    assert w is not None
    assert w.probe["updater"] == "mbm"
    assert replay(w).verdict == "counterexample"


def test_update_order_examples():
    s3 = StateSpace(("s1", "s2", "s3"))
    b = WeightedBeliefs(
        [(Measure(s3, (0.6, 0.3, 0.1), "P"), 1.0), (Measure(s3, (0.1, 0.25, 0.65), "Q"), 1.0)]
    )
    full = Event.full(s3)
    assert check_prop1(b, full, full) == 0.0
    e1, e2 = Event(s3, frozenset({"s1", "s2"})), Event(s3, frozenset({"s2", "s3"}))
    assert check_prop1(b, e1, e2) < 1e-9


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@given(st.data())
def test_monotone_dominance_is_respected_by_every_rule(data):
    states, prizes = data.draw(spaces())
    # point-mass acts so that utility dominance is state-wise
    g = data.draw(acts(states, prizes, "g"))
    best = prizes.best
    bump = data.draw(st.lists(st.booleans(), min_size=len(states), max_size=len(states)))
    m = g.matrix.copy()
    for i, up in enumerate(bump):
        if up:
            m[i] = 0.0
            m[i, prizes.index(best)] = 1.0
    from mwer.model import Act

    f = Act("f", states, prizes, m)
    assume(np.all(f.utilities >= g.utilities))
    others = [data.draw(acts(states, prizes, f"o{i}")) for i in range(data.draw(st.integers(0, 2)))]
    menu = Menu([f, g, *others])
    raw = np.array([data.draw(st.integers(1, 9)) for _ in states], float)
    b = WeightedBeliefs([(Measure(states, tuple(raw / raw.sum()), "P"), 1.0)])
    for rule in Rule:
        r = rank(rule, menu, b)
        assert r.advantage("f", "g") >= -1e-9
