"""Hypothesis strategies for small decision problems."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from mwer.model import Act, Event, Measure, Menu, PrizeSpace, StateSpace, WeightedBeliefs

unit = st.floats(0.0, 1.0, allow_nan=False)
utility = st.floats(-50.0, 50.0, allow_nan=False).map(lambda x: round(x, 3))


@st.composite
def spaces(draw, max_states=4, max_prizes=4):
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(2, max_prizes))
    utils = draw(st.lists(utility, min_size=k, max_size=k).filter(lambda u: len(set(u)) >= 2))
    states = StateSpace(tuple(f"s{i + 1}" for i in range(n)))
    prizes = PrizeSpace(tuple(f"y{j + 1}" for j in range(k)), tuple(utils))
    return states, prizes


def _simplex_row(draw, k):
    raw = draw(st.lists(st.integers(0, 20), min_size=k, max_size=k).filter(lambda r: sum(r) > 0))
    row = np.array(raw, dtype=float)
    return row / row.sum()


@st.composite
def acts(draw, states, prizes, name="f"):
    m = np.vstack([_simplex_row(draw, len(prizes)) for _ in states])
    return Act(name, states, prizes, m)


@st.composite
def measures(draw, states, name=None):
    return Measure(states, tuple(_simplex_row(draw, len(states))), name)


@st.composite
def beliefs(draw, states, max_measures=3, unit_weights=False):
    n = draw(st.integers(1, max_measures))
    ms = []
    for i in range(n):
        m = draw(measures(states, f"P{i + 1}"))
        if all(m.distance(o) > 1e-9 for o in ms):
            ms.append(m)
    if unit_weights:
        ws = [1.0] * len(ms)
    else:
        ws = [draw(st.floats(0.01, 1.0)) for _ in ms]
    return WeightedBeliefs(zip(ms, ws))


@st.composite
def events(draw, states, nonempty=False):
    members = draw(st.sets(st.sampled_from(states.states), min_size=1 if nonempty else 0))
    return Event(states, frozenset(members))


@st.composite
def problems(draw, max_states=4, max_acts=4, max_measures=3, unit_weights=False):
    """(menu, beliefs) over shared spaces."""
    states, prizes = draw(spaces(max_states=max_states))
    k = draw(st.integers(1, max_acts))
    menu = Menu([draw(acts(states, prizes, f"a{i + 1}")) for i in range(k)])
    b = draw(beliefs(states, max_measures, unit_weights))
    return menu, b
