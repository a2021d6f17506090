from __future__ import annotations

import copy
import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import acts, beliefs, events, spaces

from mwer.audit import random_scenario
from mwer.errors import DocumentError, ValidationError
from mwer.fixtures import delivery_scenario, updown_scenario, utility_prize_name
from mwer.model import Menu, Scenario
from mwer.rules import Rule, rank
from mwer.scenario_io import (
    FORMAT,
    dump_scenario,
    dumps_json,
    load_scenario,
    loads_json,
    parse_candidates,
    parse_scenario,
    same_scenario,
    scenario_document,
)

DEMOS = Path(__file__).resolve().parents[1] / "demos" / "scenarios"
CORPUS = sorted(p for p in DEMOS.glob("*.json") if "format" in json.loads(p.read_text()))


def roundtrip(sc: Scenario) -> Scenario:
    return parse_scenario(loads_json(dump_scenario(sc)))


def test_corpus_is_present():
    assert {p.stem for p in CORPUS} >= {"delivery", "updown", "three_state"}


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_corpus_round_trips(path):
    sc = load_scenario(str(path))
    again = roundtrip(sc)
    assert same_scenario(sc, again)
    assert dump_scenario(again) == dump_scenario(sc)


def test_fixtures_round_trip():
    for sc in (delivery_scenario(), delivery_scenario(0.25), updown_scenario()):
        assert same_scenario(sc, roundtrip(sc))


def test_delivery_document_matches_fixture():
    doc = load_scenario(str(DEMOS / "delivery.json"))
    fixture = delivery_scenario()
    for name in ("M0", "M1"):
        for a in fixture.menu(name):
            assert np.array_equal(doc.act(a.name).utilities, a.utilities)
        got = rank(Rule.MER, doc.menu(name), doc.beliefs)
        assert got.same_order(rank(Rule.MER, fixture.menu(name), fixture.beliefs))


def test_random_scenarios_round_trip():
    for seed in range(300):
        sc = random_scenario(seed=seed)
        assert same_scenario(sc, roundtrip(sc))


@given(st.data())
def test_generated_scenarios_round_trip(data):
    states, prizes = data.draw(spaces())
    fs = [data.draw(acts(states, prizes, f"a{i}")) for i in range(data.draw(st.integers(1, 3)))]
    e = data.draw(events(states))
    sc = Scenario(states, prizes, {f.name: f for f in fs}, {"M": Menu(fs)}, data.draw(beliefs(states)), {"E": e})
    assert same_scenario(sc, roundtrip(sc))


def test_float_text_is_exact():
    text = dumps_json({"x": 0.1 + 0.2, "y": 1 / 3})
    back = loads_json(text)
    assert back["x"] == 0.1 + 0.2 and back["y"] == 1 / 3
    with pytest.raises(ValueError):
        dumps_json({"x": float("nan")})


def test_shorthand_prizes():
    assert utility_prize_name(5001.0) == "u5001"
    assert utility_prize_name(-0.5) == "u-0.5"
    v = 0.1 + 0.2
    assert float(utility_prize_name(v)[1:]) == v
    sc = parse_scenario(
        {
            "format": FORMAT,
            "states": ["a", "b"],
            "prizes": [{"name": "zero", "utility": 0}],
            "acts": {"f": [0, 3], "g": [3, 3]},
            "measures": [{"name": "P", "probs": [0.5, 0.5]}],
        }
    )
    # a listed prize with the same utility is reused
    assert sc.prizes.prizes == ("zero", "u3")
    assert sc.act("f").utilities.tolist() == [0.0, 3.0]


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------


def base_doc():
    return json.loads((DEMOS / "three_state.json").read_text())


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d.update(format="other/9"), "format"),
        (lambda d: d["measures"][1].update(probs=[0.5, 0.3, 0.1]), "measures[1] (Q)"),
        (lambda d: d["acts"]["bet1"].update(s1="jackpot"), "acts.bet1.s1"),
        (lambda d: d["acts"]["bet1"].pop("s2"), "acts.bet1"),
        (lambda d: d["menus"].update(M=["bet1", "ghost"]), "menus.M[1]"),
        (lambda d: d["events"].update(E1=["s9"]), "events.E1[0]"),
        (lambda d: d["prizes"][0].update(utility="high"), "prizes[0].utility"),
        (lambda d: d.update(states=["s1", "s1", "s3"]), "states"),
        (lambda d: d["measures"].append(dict(d["measures"][0])), "measures[2].name"),
    ],
)
def test_diagnostics_name_the_offending_entry(mutate, where):
    doc = base_doc()
    mutate(doc)
    with pytest.raises(DocumentError) as info:
        parse_scenario(doc)
    assert info.value.path == where
    assert str(info.value).startswith(where)


def test_measure_sum_diagnostic_mentions_the_sum():
    doc = base_doc()
    doc["measures"][0]["probs"] = [0.5, 0.3, 0.1]
    with pytest.raises(ValidationError, match=r"measures\[0\] \(P\).*0\.9"):
        parse_scenario(doc)


def test_bad_json_reports_position():
    with pytest.raises(DocumentError, match="line 2 column"):
        loads_json('{"a": 1,\n  oops}')


def test_parse_is_pure():
    doc = base_doc()
    snapshot = copy.deepcopy(doc)
    parse_scenario(doc)
    assert doc == snapshot


def test_candidates_document():
    doc = json.loads((DEMOS / "coin.json").read_text())
    b, named = parse_candidates(doc)
    assert len(b) == 3 and b.weights.tolist() == [1.0, 1.0, 1.0]
    assert set(named) == {"p0.4", "p0.5", "p0.6", "fair", "heads-heavy"}
    assert named["heads-heavy"].probs == (0.7, 0.3)


def test_scenario_document_shape():
    doc = scenario_document(delivery_scenario())
    assert doc["format"] == FORMAT
    assert doc["acts"]["cont"] == {"one_broken": "u10000", "ten_broken": "u-10000"}
    assert doc["menus"]["M0"] == ["cont", "back", "check"]
