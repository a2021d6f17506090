"""Domain types for Anscombe-Aumann decision problems.

States, prizes, lotteries, acts, menus, probability measures and weighted
belief sets, plus the act algebra (mixtures, splices, constant acts) that
the decision rules and axiom checks are built on.

Acts are stored as row-stochastic matrices over a fixed prize space, one row
per state.  Every value is immutable after construction.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from .errors import (
    InvalidReferenceError,
    MenuMembershipError,
    SpaceMismatchError,
    ValidationError,
)

PROB_TOL = 1e-9
"""Tolerance on probability sums accepted on input."""

DUPLICATE_TOL = 1e-12
"""Two measures closer than this in sup norm are treated as the same measure."""


def _frozen(arr: NDArray) -> NDArray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def _check_distribution(values: NDArray, what: str) -> NDArray:
    if values.size == 0:
        raise ValidationError(f"{what}: empty distribution")
    total = float(values.sum())
    if abs(total - 1.0) <= 1e-12 and values.min() >= 0:
        return values
    if not np.all(np.isfinite(values)):
        raise ValidationError(f"{what}: non-finite probability")
    if np.any(values < 0):
        raise ValidationError(f"{what}: negative probability")
    total = float(values.sum())
    if abs(total - 1.0) > PROB_TOL:
        raise ValidationError(f"{what}: probabilities sum to {total!r}, expected 1")
    if abs(total - 1.0) > 1e-12:
        return values / total
    return values


# ---------------------------------------------------------------------------
# spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateSpace:
    states: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise ValidationError("state space must contain at least one state")
        if len(set(self.states)) != len(self.states):
            raise ValidationError(f"duplicate state identifiers in {self.states}")

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, state: object) -> bool:
        return state in self._index

    @cached_property
    def _index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    def index(self, state: str) -> int:
        try:
            return self._index[state]
        except KeyError:
            raise InvalidReferenceError(f"unknown state {state!r}") from None


@dataclass(frozen=True)
class PrizeSpace:
    """Prizes with their utilities ``U``."""

    prizes: tuple[str, ...]
    utilities: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prizes", tuple(self.prizes))
        object.__setattr__(self, "utilities", tuple(float(u) for u in self.utilities))
        if len(self.prizes) != len(self.utilities):
            raise ValidationError("prizes and utilities differ in length")
        if len(set(self.prizes)) != len(self.prizes):
            raise ValidationError(f"duplicate prize identifiers in {self.prizes}")
        if not all(np.isfinite(self.utilities)):
            raise ValidationError("prize utilities must be finite")
        if len(set(self.utilities)) < 2:
            raise ValidationError("need at least two prizes with distinct utilities")

    @classmethod
    def from_mapping(cls, utilities: Mapping[str, float]) -> PrizeSpace:
        return cls(tuple(utilities), tuple(utilities.values()))

    def __len__(self) -> int:
        return len(self.prizes)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {y: i for i, y in enumerate(self.prizes)}

    @cached_property
    def vector(self) -> NDArray:
        return _frozen(self.utilities)

    def index(self, prize: str) -> int:
        try:
            return self._index[prize]
        except KeyError:
            raise InvalidReferenceError(f"unknown prize {prize!r}") from None

    def utility(self, prize: str) -> float:
        return self.utilities[self.index(prize)]

    @property
    def best(self) -> str:
        return self.prizes[int(np.argmax(self.vector))]

    @property
    def worst(self) -> str:
        return self.prizes[int(np.argmin(self.vector))]


# ---------------------------------------------------------------------------
# lotteries and acts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lottery:
    """A finitely supported distribution over prizes."""

    support: Mapping[str, float]

    def __post_init__(self) -> None:
        items = {str(k): float(v) for k, v in dict(self.support).items()}
        probs = _check_distribution(np.array(list(items.values())), "lottery")
        object.__setattr__(
            self, "support", {k: float(p) for k, p in zip(items, probs) if p > 0}
        )

    @classmethod
    def point(cls, prize: str) -> Lottery:
        return cls({prize: 1.0})

    def vector(self, prizes: PrizeSpace) -> NDArray:
        out = np.zeros(len(prizes))
        for y, p in self.support.items():
            out[prizes.index(y)] += p
        return out

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.support.items())))


def lottery_utility(lottery: Lottery, prizes: PrizeSpace) -> float:
    """Expected prize utility of a lottery."""
    return float(sum(p * prizes.utility(y) for y, p in lottery.support.items()))


class Act:
    """A named map from states to lotteries.

    ``matrix[i, j]`` is the probability of prize ``j`` in state ``i``.
    """

    __slots__ = ("name", "states", "prizes", "matrix", "_utilities")

    def __init__(self, name: str, states: StateSpace, prizes: PrizeSpace, matrix):
        m = np.array(matrix, dtype=float)
        if m.shape != (len(states), len(prizes)):
            raise ValidationError(
                f"act {name!r}: matrix shape {m.shape} does not match "
                f"({len(states)} states, {len(prizes)} prizes)"
            )
        sums = m.sum(axis=1)
        if not (np.isfinite(sums).all() and m.min() >= 0 and np.abs(sums - 1.0).max() <= 1e-12):
            for i, s in enumerate(states):
                m[i] = _check_distribution(m[i], f"act {name!r} at state {s!r}")
        m.setflags(write=False)
        object.__setattr__(self, "name", str(name))
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "prizes", prizes)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_utilities", None)

    @classmethod
    def from_lotteries(
        cls,
        name: str,
        states: StateSpace,
        prizes: PrizeSpace,
        outcomes: Mapping[str, Lottery],
    ) -> Act:
        missing = [s for s in states if s not in outcomes]
        if missing:
            raise ValidationError(f"act {name!r} undefined on states {missing}")
        extra = [s for s in outcomes if s not in states]
        if extra:
            raise InvalidReferenceError(f"act {name!r} refers to unknown states {extra}")
        return cls(name, states, prizes, [outcomes[s].vector(prizes) for s in states])

    @classmethod
    def from_prizes(
        cls, name: str, states: StateSpace, prizes: PrizeSpace, outcomes: Iterable[str]
    ) -> Act:
        """Act giving a sure prize in each state (listed in state order)."""
        outcomes = list(outcomes)
        if len(outcomes) != len(states):
            raise ValidationError(f"act {name!r}: need one prize per state")
        m = np.zeros((len(states), len(prizes)))
        for i, y in enumerate(outcomes):
            m[i, prizes.index(y)] = 1.0
        return cls(name, states, prizes, m)

    def __setattr__(self, key, value):
        raise AttributeError("Act is immutable")

    @property
    def utilities(self) -> NDArray:
        """Per-state lottery utilities ``u(f(s))``."""
        if self._utilities is None:
            u = self.matrix @ self.prizes.vector
            u.setflags(write=False)
            object.__setattr__(self, "_utilities", u)
        return self._utilities

    def outcome(self, state: str) -> Lottery:
        row = self.matrix[self.states.index(state)]
        return Lottery({y: p for y, p in zip(self.prizes.prizes, row) if p > 0})

    def renamed(self, name: str) -> Act:
        return Act(name, self.states, self.prizes, self.matrix)

    def same_outcomes(self, other: Act) -> bool:
        if other is self or other.matrix is self.matrix:
            return True
        return (
            self.states == other.states
            and self.prizes == other.prizes
            and np.array_equal(self.matrix, other.matrix)
        )

    def is_constant(self) -> bool:
        return bool(np.all(self.matrix == self.matrix[0]))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Act) and self.name == other.name and self.same_outcomes(other)

    def __hash__(self) -> int:
        return hash((self.name, self.matrix.tobytes()))

    def __repr__(self) -> str:
        return f"Act({self.name!r}, u={np.round(self.utilities, 6).tolist()})"


def _same_spaces(*acts: Act) -> None:
    first = acts[0]
    for a in acts[1:]:
        if a.states != first.states:
            raise SpaceMismatchError(f"acts {first.name!r} and {a.name!r} use different states")
        if a.prizes != first.prizes:
            raise SpaceMismatchError(f"acts {first.name!r} and {a.name!r} use different prizes")


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"mixing weight {p!r} outside [0, 1]")
    return p


def mix_name(p: float, f: str, g: str) -> str:
    return f"mix({p!r},{f},{g})"


def mix_acts(p: float, f: Act, g: Act, name: str | None = None) -> Act:
    """State-wise lottery mixture ``p*f + (1-p)*g``.

    The endpoints return the original acts, so names survive ``p in {0, 1}``.
    """
    p = _check_p(p)
    _same_spaces(f, g)
    if name is None:
        if p == 1.0:
            return f
        if p == 0.0:
            return g
        name = mix_name(p, f.name, g.name)
    return Act(name, f.states, f.prizes, p * f.matrix + (1.0 - p) * g.matrix)


def constant_act(
    lottery: Lottery, states: StateSpace, prizes: PrizeSpace, name: str | None = None
) -> Act:
    """The act ``l*`` that plays ``lottery`` in every state."""
    row = lottery.vector(prizes)
    if name is None:
        body = ",".join(f"{y}:{p!r}" for y, p in sorted(lottery.support.items()))
        name = f"const({body})"
    return Act(name, states, prizes, np.tile(row, (len(states), 1)))


# ---------------------------------------------------------------------------
# menus
# ---------------------------------------------------------------------------


class Menu:
    """A finite nonempty set of named acts over shared spaces."""

    __slots__ = ("_acts", "__dict__")

    def __init__(self, acts: Iterable[Act]):
        table: dict[str, Act] = {}
        for a in acts:
            prev = table.get(a.name)
            if prev is not None:
                if not prev.same_outcomes(a):
                    raise ValidationError(f"menu has two different acts named {a.name!r}")
                continue
            table[a.name] = a
        if not table:
            raise ValidationError("menu must contain at least one act")
        _same_spaces(*table.values())
        self._acts = table

    @property
    def acts(self) -> tuple[Act, ...]:
        return tuple(self._acts.values())

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._acts)

    @property
    def states(self) -> StateSpace:
        return next(iter(self._acts.values())).states

    @property
    def prizes(self) -> PrizeSpace:
        return next(iter(self._acts.values())).prizes

    def __len__(self) -> int:
        return len(self._acts)

    def __iter__(self):
        return iter(self._acts.values())

    def __getitem__(self, name: str) -> Act:
        try:
            return self._acts[name]
        except KeyError:
            raise InvalidReferenceError(f"act {name!r} not in menu") from None

    def __contains__(self, act: object) -> bool:
        if isinstance(act, str):
            return act in self._acts
        if isinstance(act, Act):
            mine = self._acts.get(act.name)
            return mine is not None and mine.same_outcomes(act)
        return False

    def require(self, *acts: Act) -> None:
        for a in acts:
            if a not in self:
                raise MenuMembershipError(f"act {a.name!r} is not a member of the menu")

    def with_acts(self, *acts: Act) -> Menu:
        return Menu([*self._acts.values(), *acts])

    def index(self, name: str) -> int:
        return self.names.index(name)

    @cached_property
    def utility_matrix(self) -> NDArray:
        """``u(f(s))`` for every act (rows, menu order) and state (columns)."""
        return _frozen(np.vstack([a.utilities for a in self._acts.values()]))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Menu)
            and self.names == other.names
            and all(a.same_outcomes(other[a.name]) for a in self)
        )

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Menu({list(self.names)})"


def mix_menu(p: float, menu: Menu, h: Act) -> Menu:
    """The menu ``p*M + (1-p)*h``."""
    p = _check_p(p)
    return Menu(mix_acts(p, f, h) for f in menu)


# ---------------------------------------------------------------------------
# events, measures, weighted beliefs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Event:
    space: StateSpace
    members: frozenset[str]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        bad = [s for s in self.members if s not in self.space]
        if bad:
            raise InvalidReferenceError(f"event refers to unknown states {sorted(bad)}")

    @classmethod
    def full(cls, space: StateSpace) -> Event:
        return cls(space, frozenset(space.states), "S")

    @classmethod
    def empty(cls, space: StateSpace) -> Event:
        return cls(space, frozenset(), "empty")

    @cached_property
    def mask(self) -> NDArray:
        arr = np.array([s in self.members for s in self.space.states])
        arr.setflags(write=False)
        return arr

    def __and__(self, other: Event) -> Event:
        if other.space != self.space:
            raise SpaceMismatchError("events over different state spaces")
        label = None
        if self.name and other.name:
            label = f"{self.name}&{other.name}"
        return Event(self.space, self.members & other.members, label)

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        return "{" + ",".join(s for s in self.space.states if s in self.members) + "}"


@dataclass(frozen=True, eq=False)
class Measure:
    """A probability measure on a finite state space."""

    space: StateSpace
    probs: tuple[float, ...]
    name: str | None = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.probs, dtype=float)
        if arr.shape != (len(self.space),):
            raise ValidationError(
                f"measure {self.name!r}: expected {len(self.space)} probabilities"
            )
        arr = _check_distribution(arr, f"measure {self.name!r}")
        object.__setattr__(self, "probs", tuple(arr.tolist()))

    @classmethod
    def from_mapping(
        cls, space: StateSpace, probs: Mapping[str, float], name: str | None = None
    ) -> Measure:
        bad = [s for s in probs if s not in space]
        if bad:
            raise InvalidReferenceError(f"measure {name!r} refers to unknown states {bad}")
        return cls(space, tuple(float(probs.get(s, 0.0)) for s in space.states), name)

    @classmethod
    def point_mass(cls, space: StateSpace, state: str) -> Measure:
        probs = [0.0] * len(space)
        probs[space.index(state)] = 1.0
        return cls(space, tuple(probs), f"delta_{state}")

    @classmethod
    def uniform(cls, space: StateSpace) -> Measure:
        n = len(space)
        return cls(space, tuple([1.0 / n] * n), "uniform")

    @cached_property
    def vector(self) -> NDArray:
        return _frozen(self.probs)

    def prob(self, event: Event) -> float:
        if event.space != self.space:
            raise SpaceMismatchError("event and measure over different state spaces")
        return float(self.vector[event.mask].sum())

    def distance(self, other: Measure) -> float:
        return float(np.max(np.abs(self.vector - other.vector)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Measure) and self.space == other.space and self.probs == other.probs

    def __hash__(self) -> int:
        return hash(self.probs)

    def as_mapping(self) -> dict[str, float]:
        return dict(zip(self.space.states, self.probs))


class WeightedBeliefs:
    """A finite set of probability measures, each carrying a weight in [0, 1].

    Weights are rescaled so the largest is exactly 1.  Measures that coincide
    within ``DUPLICATE_TOL`` are rejected.
    """

    __slots__ = ("entries", "__dict__")

    def __init__(self, entries: Iterable[tuple[Measure, float]]):
        items = [(m, float(w)) for m, w in entries]
        if not items:
            raise ValidationError("weighted beliefs need at least one measure")
        space = items[0][0].space
        for m, w in items:
            if m.space != space:
                raise SpaceMismatchError("measures over different state spaces")
            if not np.isfinite(w) or w < 0 or w > 1:
                raise ValidationError(f"weight {w!r} of measure {m.name!r} outside [0, 1]")
        top = max(w for _, w in items)
        if top == 0:
            raise ValidationError("all weights are zero")
        if top != 1.0:
            items = [(m, w / top) for m, w in items]
        if len(items) > 1:
            rows = np.array([m.probs for m, _ in items])
            gaps = np.abs(rows[:, None, :] - rows[None, :, :]).max(axis=2)
            close = np.argwhere(np.tril(gaps <= DUPLICATE_TOL, k=-1))
            if len(close):
                i, j = close[0]
                raise ValidationError(
                    f"measure {items[i][0].name!r} duplicates {items[j][0].name!r}"
                )
        self.entries: tuple[tuple[Measure, float], ...] = tuple(items)

    @classmethod
    def unweighted(cls, measures: Iterable[Measure]) -> WeightedBeliefs:
        return cls((m, 1.0) for m in measures)

    @property
    def space(self) -> StateSpace:
        return self.entries[0][0].space

    @property
    def measures(self) -> tuple[Measure, ...]:
        return tuple(m for m, _ in self.entries)

    @cached_property
    def weights(self) -> NDArray:
        return _frozen([w for _, w in self.entries])

    @cached_property
    def matrix(self) -> NDArray:
        """Measures as rows."""
        return _frozen(np.vstack([m.vector for m, _ in self.entries]))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def weight_of(self, name: str) -> float:
        for m, w in self.entries:
            if m.name == name:
                return w
        raise InvalidReferenceError(f"no measure named {name!r}")

    def measure(self, name: str) -> Measure:
        for m, _ in self.entries:
            if m.name == name:
                return m
        raise InvalidReferenceError(f"no measure named {name!r}")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeightedBeliefs)
            and len(self) == len(other)
            and all(m1 == m2 and w1 == w2 for (m1, w1), (m2, w2) in zip(self, other))
        )

    def __hash__(self) -> int:
        return hash(tuple((m.probs, w) for m, w in self.entries))

    def __repr__(self) -> str:
        body = ", ".join(f"({m.name or list(m.probs)}, {w:.6g})" for m, w in self.entries)
        return f"WeightedBeliefs[{body}]"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def expected_utility(f: Act, measure: Measure, prizes: PrizeSpace | None = None) -> float:
    """``sum_s Pr(s) u(f(s))``."""
    if prizes is not None and prizes != f.prizes:
        raise SpaceMismatchError("prize space differs from the act's")
    if measure.space != f.states:
        raise SpaceMismatchError(f"measure and act {f.name!r} over different state spaces")
    return float(measure.vector @ f.utilities)


def splice_name(f: str, event: Event, h: str) -> str:
    return f"splice({f},{event.label},{h})"


def splice(f: Act, event: Event, h: Act, name: str | None = None) -> Act:
    """The act ``fEh``: ``f`` on ``event`` and ``h`` off it."""
    _same_spaces(f, h)
    if event.space != f.states:
        raise SpaceMismatchError("event and acts over different state spaces")
    if name is None:
        if event.mask.all():
            return f
        if not event.mask.any():
            return h
        name = splice_name(f.name, event, h.name)
    m = np.where(event.mask[:, None], f.matrix, h.matrix)
    return Act(name, f.states, f.prizes, m)


def splice_menu(menu: Menu, event: Event, h: Act) -> Menu:
    """``MEh = {fEh : f in M}``."""
    return Menu(splice(f, event, h) for f in menu)


# ---------------------------------------------------------------------------
# scenario
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Scenario:
    """Everything needed to pose a weighted-belief decision problem."""

    states: StateSpace
    prizes: PrizeSpace
    acts: Mapping[str, Act]
    menus: Mapping[str, Menu]
    beliefs: WeightedBeliefs
    events: Mapping[str, Event] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "acts", dict(self.acts))
        object.__setattr__(self, "menus", dict(self.menus))
        object.__setattr__(self, "events", dict(self.events))
        for name, a in self.acts.items():
            if a.name != name:
                raise ValidationError(f"act stored under {name!r} is named {a.name!r}")
            if a.states != self.states or a.prizes != self.prizes:
                raise SpaceMismatchError(f"act {name!r} does not use the scenario spaces")
        for mname, menu in self.menus.items():
            for a in menu:
                known = self.acts.get(a.name)
                if known is None or not known.same_outcomes(a):
                    raise InvalidReferenceError(f"menu {mname!r} refers to unknown act {a.name!r}")
        if self.beliefs.space != self.states:
            raise SpaceMismatchError("beliefs are not over the scenario states")
        for ename, e in self.events.items():
            if e.space != self.states:
                raise SpaceMismatchError(f"event {ename!r} is not over the scenario states")

    def menu(self, name: str) -> Menu:
        try:
            return self.menus[name]
        except KeyError:
            raise InvalidReferenceError(f"unknown menu {name!r}") from None

    def act(self, name: str) -> Act:
        try:
            return self.acts[name]
        except KeyError:
            raise InvalidReferenceError(f"unknown act {name!r}") from None

    def event(self, name: str) -> Event:
        try:
            return self.events[name]
        except KeyError:
            raise InvalidReferenceError(f"unknown event {name!r}") from None

    def extended(
        self,
        acts: Iterable[Act] = (),
        menus: Mapping[str, Menu] | None = None,
        events: Mapping[str, Event] | None = None,
    ) -> Scenario:
        """Copy with extra acts, menus and events (menu acts are added too)."""
        table = dict(self.acts)
        new_menus = dict(self.menus)
        pending = list(acts)
        for menu in (menus or {}).values():
            pending.extend(menu)
        for a in pending:
            prev = table.get(a.name)
            if prev is not None and not prev.same_outcomes(a):
                raise ValidationError(f"act name {a.name!r} already used for a different act")
            table[a.name] = a
        new_menus.update(menus or {})
        return Scenario(
            self.states,
            self.prizes,
            table,
            new_menus,
            self.beliefs,
            {**self.events, **(events or {})},
        )

    def with_beliefs(self, beliefs: WeightedBeliefs) -> Scenario:
        return Scenario(self.states, self.prizes, self.acts, self.menus, beliefs, self.events)
