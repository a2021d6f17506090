"""JSON documents for scenarios, audit witnesses and belief sets.

A scenario document looks like::

    {
      "format": "mwer-scenario/1",
      "states": ["s1", "s2"],
      "prizes": [{"name": "lo", "utility": 0}, {"name": "hi", "utility": 1}],
      "acts": {
        "f": {"s1": {"hi": 0.5, "lo": 0.5}, "s2": "lo"},
        "g": [3, -1]
      },
      "measures": [{"name": "P1", "probs": [0.5, 0.5], "weight": 1}],
      "menus": {"M": ["f", "g"]},
      "events": {"E": ["s1"]}
    }

An act is either an object mapping each state to a lottery (a prize name or
a ``{prize: probability}`` object), or a list of per-state utilities.  Each
distinct utility in the list form becomes a sure prize ``u<value>`` added to
the prize list unless a listed prize already has exactly that utility.

Serialization always writes the explicit lottery form, so
``parse(dump(parse(doc)))`` reproduces ``parse(doc)``.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from typing import Any

import numpy as np

from .audit.checks import (
    AuditReport,
    Axiom,
    Comparison,
    MenuPolicy,
    Witness,
)
from .errors import DocumentError, MwerError
from .fixtures import utility_prize_name
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
from .rules import PreferenceRanking, Rule
from .updating import UpdateResult

FORMAT = "mwer-scenario/1"
WITNESS_FORMAT = "mwer-witness/1"

# ---------------------------------------------------------------------------
# low-level helpers
# ---------------------------------------------------------------------------


def _expect(value, kind, path: str):
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise DocumentError(path, f"expected {names}, got {type(value).__name__}")
    return value


def _number(value, path: str) -> float:
    _expect(value, (int, float), path)
    x = float(value)
    if not np.isfinite(x):
        raise DocumentError(path, "number must be finite")
    return x


def _name(value, path: str) -> str:
    _expect(value, str, path)
    if not value:
        raise DocumentError(path, "name must be nonempty")
    return value


def _wrap(path: str, fn, *args):
    """Run a model constructor, prefixing any validation error with ``path``."""
    try:
        return fn(*args)
    except DocumentError:
        raise
    except MwerError as exc:
        raise DocumentError(path, str(exc)) from exc


def loads_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def dumps_json(record: Any, indent: int | None = 2) -> str:
    """Deterministic JSON text; floats use the shortest exact round-trip form."""
    return json.dumps(record, indent=indent, sort_keys=False, allow_nan=False)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _states(doc: Mapping) -> StateSpace:
    raw = _expect(doc.get("states"), list, "states")
    names = tuple(_name(s, f"states[{i}]") for i, s in enumerate(raw))
    return _wrap("states", StateSpace, names)


def _shorthand_values(acts: Mapping) -> list[float]:
    out = []
    for name, spec in acts.items():
        if isinstance(spec, list):
            out.extend(_number(v, f"acts.{name}[{i}]") for i, v in enumerate(spec))
    return out


def _prizes(doc: Mapping, acts: Mapping) -> PrizeSpace:
    names: list[str] = []
    utils: list[float] = []
    for i, entry in enumerate(_expect(doc.get("prizes", []), list, "prizes")):
        path = f"prizes[{i}]"
        _expect(entry, dict, path)
        names.append(_name(entry.get("name"), f"{path}.name"))
        utils.append(_number(entry.get("utility"), f"{path}.utility"))
    known = set(utils)
    for v in sorted(set(_shorthand_values(acts))):
        if v in known:
            continue
        base = name = utility_prize_name(v)
        k = 1
        while name in names:
            k += 1
            name = f"{base}#{k}"
        names.append(name)
        utils.append(v)
        known.add(v)
    return _wrap("prizes", PrizeSpace, tuple(names), tuple(utils))


def _lottery_row(spec, prizes: PrizeSpace, path: str) -> np.ndarray:
    row = np.zeros(len(prizes))
    if isinstance(spec, str):
        row[_wrap(path, prizes.index, spec)] = 1.0
        return row
    _expect(spec, dict, path)
    for y, p in spec.items():
        row[_wrap(f"{path}.{y}", prizes.index, y)] += _number(p, f"{path}.{y}")
    return row


def _act(name: str, spec, states: StateSpace, prizes: PrizeSpace) -> Act:
    path = f"acts.{name}"
    if isinstance(spec, list):
        if len(spec) != len(states):
            raise DocumentError(path, f"expected {len(states)} utilities, got {len(spec)}")
        by_utility: dict[float, int] = {}
        for j, u in enumerate(prizes.utilities):
            by_utility.setdefault(u, j)
        m = np.zeros((len(states), len(prizes)))
        for i, u in enumerate(spec):
            m[i, by_utility[float(u)]] = 1.0
        return _wrap(path, Act, name, states, prizes, m)
    _expect(spec, dict, path)
    extra = [s for s in spec if s not in states]
    if extra:
        raise DocumentError(f"{path}.{extra[0]}", "unknown state")
    missing = [s for s in states if s not in spec]
    if missing:
        raise DocumentError(path, f"no lottery for state {missing[0]!r}")
    rows = [_lottery_row(spec[s], prizes, f"{path}.{s}") for s in states]
    return _wrap(path, Act, name, states, prizes, np.vstack(rows))


def _probs(spec, states: StateSpace, path: str) -> tuple[float, ...]:
    if isinstance(spec, list):
        if len(spec) != len(states):
            raise DocumentError(path, f"expected {len(states)} probabilities, got {len(spec)}")
        return tuple(_number(v, f"{path}[{i}]") for i, v in enumerate(spec))
    _expect(spec, dict, path)
    for s in spec:
        if s not in states:
            raise DocumentError(f"{path}.{s}", "unknown state")
    return tuple(_number(spec.get(s, 0.0), f"{path}.{s}") for s in states)


def _measures(entries, states: StateSpace, path: str, weighted: bool = True):
    out = []
    seen = set()
    for i, entry in enumerate(_expect(entries, list, path)):
        p = f"{path}[{i}]"
        _expect(entry, dict, p)
        name = _name(entry.get("name"), f"{p}.name")
        if name in seen:
            raise DocumentError(f"{p}.name", f"duplicate measure name {name!r}")
        seen.add(name)
        m = _wrap(f"{p} ({name})", Measure, states, _probs(entry.get("probs"), states, f"{p}.probs"), name)
        w = _number(entry.get("weight", 1.0), f"{p}.weight") if weighted else 1.0
        out.append((m, w))
    return out


def _beliefs(doc: Mapping, states: StateSpace) -> WeightedBeliefs:
    entries = _measures(doc.get("measures"), states, "measures")
    if not entries:
        raise DocumentError("measures", "need at least one measure")
    return _wrap("measures", WeightedBeliefs, entries)


def parse_scenario(doc: Any) -> Scenario:
    """Build a validated :class:`Scenario` from a decoded JSON document."""
    _expect(doc, dict, "")
    fmt = doc.get("format")
    if fmt != FORMAT:
        raise DocumentError("format", f"expected {FORMAT!r}, got {fmt!r}")
    states = _states(doc)
    acts_doc = _expect(doc.get("acts"), dict, "acts")
    prizes = _prizes(doc, acts_doc)
    acts = {name: _act(_name(name, "acts"), spec, states, prizes) for name, spec in acts_doc.items()}
    beliefs = _beliefs(doc, states)

    menus = {}
    for mname, members in _expect(doc.get("menus", {}), dict, "menus").items():
        path = f"menus.{mname}"
        _expect(members, list, path)
        if not members:
            raise DocumentError(path, "menu must contain at least one act")
        chosen = []
        for i, a in enumerate(members):
            if a not in acts:
                raise DocumentError(f"{path}[{i}]", f"unknown act {a!r}")
            chosen.append(acts[a])
        menus[mname] = _wrap(path, Menu, chosen)

    events = {}
    for ename, members in _expect(doc.get("events", {}), dict, "events").items():
        path = f"events.{ename}"
        _expect(members, list, path)
        for i, s in enumerate(members):
            if s not in states:
                raise DocumentError(f"{path}[{i}]", f"unknown state {s!r}")
        events[ename] = Event(states, frozenset(members), ename)
    return _wrap("", Scenario, states, prizes, acts, menus, beliefs, events)


def load_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(loads_json(fh.read()))


def parse_candidates(doc: Any) -> tuple[WeightedBeliefs, dict[str, Measure]]:
    """Weighted candidate measures plus every named measure (``measures`` and ``truths``)."""
    _expect(doc, dict, "")
    states = _states(doc)
    beliefs = _beliefs(doc, states)
    named = {m.name: m for m in beliefs.measures}
    for m, _ in _measures(doc.get("truths", []), states, "truths", weighted=False):
        named.setdefault(m.name, m)
    return beliefs, named


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _lottery_doc(row: np.ndarray, prizes: PrizeSpace):
    support = {y: float(p) for y, p in zip(prizes.prizes, row) if p != 0}
    if len(support) == 1 and next(iter(support.values())) == 1.0:
        return next(iter(support))
    return support


def act_document(act: Act) -> dict:
    return {s: _lottery_doc(act.matrix[i], act.prizes) for i, s in enumerate(act.states)}


def beliefs_document(beliefs: WeightedBeliefs) -> list[dict]:
    return [
        {"name": m.name or f"m{i + 1}", "probs": list(m.probs), "weight": float(w)}
        for i, (m, w) in enumerate(beliefs)
    ]


def scenario_document(sc: Scenario) -> dict:
    return {
        "format": FORMAT,
        "states": list(sc.states.states),
        "prizes": [
            {"name": y, "utility": u} for y, u in zip(sc.prizes.prizes, sc.prizes.utilities)
        ],
        "acts": {name: act_document(a) for name, a in sc.acts.items()},
        "measures": beliefs_document(sc.beliefs),
        "menus": {name: list(m.names) for name, m in sc.menus.items()},
        "events": {
            name: [s for s in sc.states.states if s in e.members] for name, e in sc.events.items()
        },
    }


def dump_scenario(sc: Scenario) -> str:
    return dumps_json(scenario_document(sc))


def same_scenario(a: Scenario, b: Scenario) -> bool:
    """Semantic equality: same spaces, acts, menus, weighted measures and events."""
    return (
        a.states == b.states
        and a.prizes == b.prizes
        and a.acts.keys() == b.acts.keys()
        and all(a.acts[k] == b.acts[k] for k in a.acts)
        and a.menus.keys() == b.menus.keys()
        and all(a.menus[k] == b.menus[k] for k in a.menus)
        and a.beliefs == b.beliefs
        and [m.name for m in a.beliefs.measures] == [m.name for m in b.beliefs.measures]
        and a.events.keys() == b.events.keys()
        and all(a.events[k] == b.events[k] for k in a.events)
    )


# ---------------------------------------------------------------------------
# results as records
# ---------------------------------------------------------------------------


def ranking_record(r: PreferenceRanking, menu: str | None = None) -> dict:
    rec = {"rule": r.rule.value}
    if menu is not None:
        rec["menu"] = menu
    rec["tiers"] = [list(t) for t in r.tiers]
    rec["scores"] = {k: float(v) for k, v in r.scores.items()}
    return rec


def update_record(
    before: WeightedBeliefs, after: WeightedBeliefs, method: str, event: str,
    result: UpdateResult | None = None,
) -> dict:
    names = [m.name or f"m{i + 1}" for i, m in enumerate(before.measures)]
    rec = {"method": method, "event": event, "beliefs": beliefs_document(after)}
    if result is not None:
        rec["dropped"] = [names[i] for i in sorted(result.dropped)]
        rec["groups"] = [[names[i] for i in g] for g in result.groups]
    return rec


def comparison_record(c: Comparison) -> dict:
    return {
        "menu": c.menu,
        "a": c.a,
        "b": c.b,
        "relation": c.relation,
        "score_a": float(c.score_a),
        "score_b": float(c.score_b),
        "advantage": float(c.advantage),
    }


def _probe_record(probe: Mapping[str, Any]) -> dict:
    out = {}
    for k, v in probe.items():
        if isinstance(v, (np.floating, np.integer)):
            v = v.item()
        out[k] = v
    return out


def witness_document(w: Witness) -> dict:
    """A scenario document carrying the witness, so it loads as a scenario too."""
    doc = scenario_document(w.scenario)
    doc["witness"] = {
        "format": WITNESS_FORMAT,
        "axiom": w.axiom.value,
        "rule": w.rule.value,
        "policy": w.policy.value,
        "probe": _probe_record(w.probe),
        "note": w.note,
        "comparisons": [comparison_record(c) for c in w.comparisons],
    }
    return doc


def parse_witness(doc: Any) -> Witness:
    sc = parse_scenario(doc)
    body = _expect(doc.get("witness"), dict, "witness")
    if body.get("format") != WITNESS_FORMAT:
        raise DocumentError("witness.format", f"expected {WITNESS_FORMAT!r}")
    comps = tuple(
        Comparison(
            c["menu"], c["a"], c["b"], c["score_a"], c["score_b"], c["relation"], c["advantage"]
        )
        for c in _expect(body.get("comparisons", []), list, "witness.comparisons")
    )
    return Witness(
        _wrap("witness.axiom", Axiom.parse, body.get("axiom")),
        _wrap("witness.rule", Rule.parse, body.get("rule")),
        _wrap("witness.policy", MenuPolicy.parse, body.get("policy")),
        sc,
        dict(_expect(body.get("probe"), dict, "witness.probe")),
        comps,
        str(body.get("note", "")),
    )


def audit_record(report: AuditReport) -> dict:
    rec = {
        "axiom": report.axiom.value,
        "rule": report.rule.value,
        "policy": report.policy.value,
        "verdict": report.verdict,
        "trials": report.trials,
        "violations": report.violations,
        "supported": report.supported,
        "vacuous": report.vacuous,
        "inconclusive": report.inconclusive,
    }
    if report.witness is not None:
        rec["witness"] = witness_document(report.witness)
    return rec
