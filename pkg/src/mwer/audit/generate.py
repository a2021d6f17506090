"""Random scenarios and per-axiom probes for the audit harness.

Everything here is a deterministic function of a ``numpy`` generator, so a
trial is reproducible from ``(seed, trial index)`` alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError
from ..model import (
    Act,
    Event,
    Measure,
    Menu,
    PrizeSpace,
    Scenario,
    StateSpace,
    WeightedBeliefs,
    mix_acts,
)
from ..rules import Rule, score_matrix
from ..updating import event_weight


@dataclass(frozen=True)
class ScenarioParams:
    """Size bounds (inclusive) for random scenarios."""

    states: tuple[int, int] = (2, 3)
    acts: tuple[int, int] = (2, 4)
    measures: tuple[int, int] = (1, 3)
    prizes: tuple[int, int] = (2, 4)
    utility_range: tuple[float, float] = (-10.0, 10.0)
    integer_utilities: float = 0.5
    """Probability of drawing integer-valued prize utilities (encourages ties)."""

    def __post_init__(self) -> None:
        for label in ("states", "acts", "measures", "prizes"):
            lo, hi = getattr(self, label)
            if lo < 1 or hi < lo:
                raise ValidationError(f"bad {label} bounds {(lo, hi)}")
        if self.prizes[1] < 2:
            raise ValidationError("need room for at least two prizes")
        lo, hi = self.utility_range
        if not hi > lo:
            raise ValidationError("utility range must have positive width")
        if not 0.0 <= self.integer_utilities <= 1.0:
            raise ValidationError("integer_utilities must be a probability")

    def replace(self, **changes) -> ScenarioParams:
        fields = {k: getattr(self, k) for k in self.__dataclass_fields__}
        fields.update(changes)
        return ScenarioParams(**fields)


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial."""
    return np.random.default_rng([int(seed), int(trial)])


def _between(rng: np.random.Generator, bounds: tuple[int, int]) -> int:
    return int(rng.integers(bounds[0], bounds[1] + 1))


def random_prizes(rng: np.random.Generator, params: ScenarioParams) -> PrizeSpace:
    n = max(2, _between(rng, params.prizes))
    lo, hi = params.utility_range
    integer = rng.random() < params.integer_utilities and np.floor(hi) - np.ceil(lo) >= 1
    while True:
        if integer:
            u = rng.integers(int(np.ceil(lo)), int(np.floor(hi)) + 1, size=n).astype(float)
        else:
            u = rng.uniform(lo, hi, size=n)
        if len(set(u.tolist())) >= 2:
            return PrizeSpace(tuple(f"y{i + 1}" for i in range(n)), tuple(u.tolist()))


def random_lottery_rows(rng: np.random.Generator, n_rows: int, n_prizes: int) -> np.ndarray:
    """Independent random lotteries, one per row.

    Each row is degenerate with probability 0.4; otherwise it is a flat
    Dirichlet draw on a random support of 2 or more prizes.
    """
    degenerate = rng.random(n_rows) < 0.4
    point = rng.integers(n_prizes, size=n_rows)
    k = rng.integers(2, n_prizes + 1, size=n_rows)
    keys = rng.random((n_rows, n_prizes))
    ranks = keys.argsort(axis=1).argsort(axis=1)
    mass = rng.standard_exponential((n_rows, n_prizes)) * (ranks < k[:, None])
    rows = mass / mass.sum(axis=1, keepdims=True)
    rows[degenerate] = 0.0
    rows[degenerate, point[degenerate]] = 1.0
    return rows


def random_lottery_row(rng: np.random.Generator, n_prizes: int) -> np.ndarray:
    return random_lottery_rows(rng, 1, n_prizes)[0]


def random_act(
    rng: np.random.Generator, name: str, states: StateSpace, prizes: PrizeSpace
) -> Act:
    return Act(name, states, prizes, random_lottery_rows(rng, len(states), len(prizes)))


def random_constant(
    rng: np.random.Generator, name: str, states: StateSpace, prizes: PrizeSpace
) -> Act:
    row = random_lottery_row(rng, len(prizes))
    return Act(name, states, prizes, np.tile(row, (len(states), 1)))


def random_measure_vectors(rng: np.random.Generator, k: int, n: int) -> np.ndarray:
    """``k`` flat-Dirichlet measures on ``n`` states; about 30% get forced zeros."""
    p = rng.standard_exponential((k, n))
    if n > 1:
        sparse = rng.random(k) < 0.3
        zero = (rng.random((k, n)) < 0.4) & sparse[:, None]
        full = zero.all(axis=1)
        if full.any():
            keep = rng.integers(n, size=k)
            zero[full, keep[full]] = False
        p[zero] = 0.0
    return p / p.sum(axis=1, keepdims=True)


def random_measure_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    return random_measure_vectors(rng, 1, n)[0]


def random_beliefs(
    rng: np.random.Generator, states: StateSpace, n: int
) -> WeightedBeliefs:
    if len(states) == 1:
        n = 1  # only one measure exists on a single state
    while True:
        vectors = random_measure_vectors(rng, n, len(states))
        gaps = np.abs(vectors[:, None, :] - vectors[None, :, :]).max(axis=2)
        if not np.tril(gaps <= 1e-6, k=-1).any():
            break
    if rng.random() < 0.3:
        weights = np.ones(n)
    else:
        weights = rng.uniform(0.0, 1.0, size=n)
        weights[rng.integers(n)] = 1.0
    measures = [Measure(states, tuple(v), f"P{i + 1}") for i, v in enumerate(vectors.tolist())]
    return WeightedBeliefs(zip(measures, weights.tolist()))


def random_event(
    rng: np.random.Generator, beliefs: WeightedBeliefs, min_weight: float = 0.0, name="E"
) -> Event:
    """A nonempty event whose weighted probability is at least ``min_weight``."""
    space = beliefs.space
    n = len(space)
    for _ in range(100):
        mask = rng.random(n) < 0.5
        if not mask.any():
            mask[rng.integers(n)] = True
        e = Event(space, frozenset(s for s, m in zip(space.states, mask) if m), name)
        if event_weight(beliefs, e) >= max(min_weight, 1e-300):
            return e
    return Event(space, frozenset(space.states), name)


def random_scenario(params: ScenarioParams | None = None, seed=0) -> Scenario:
    """A valid random scenario with one menu ``M`` over all acts and one event ``E``."""
    params = params or ScenarioParams()
    rng = as_rng(seed)
    states = StateSpace(tuple(f"s{i + 1}" for i in range(_between(rng, params.states))))
    prizes = random_prizes(rng, params)
    acts = [random_act(rng, f"a{i + 1}", states, prizes) for i in range(_between(rng, params.acts))]
    beliefs = random_beliefs(rng, states, _between(rng, params.measures))
    event = random_event(rng, beliefs)
    return Scenario(
        states,
        prizes,
        {a.name: a for a in acts},
        {"M": Menu(acts)},
        beliefs,
        {"E": event},
    )


# ---------------------------------------------------------------------------
# tie construction
# ---------------------------------------------------------------------------


def _rule_arrays(rule: Rule, beliefs: WeightedBeliefs):
    if rule is Rule.REG:
        return np.eye(len(beliefs.space))[:1], np.ones(1)
    return beliefs.matrix, beliefs.weights


def bracket_root(advantage, lo: float, hi: float, points: int = 32, rounds: int = 9) -> float:
    """Sign change of a continuous function that is <= 0 at ``lo`` and >= 0 at ``hi``.

    ``advantage`` takes an array of parameters and returns an array; each
    round evaluates a grid and shrinks to the bracketing cell.  The functions
    met here are piecewise linear, so each round also tries the secant point
    of the cell and stops once it is a root to rounding.
    """
    ends = advantage(np.array([lo, hi]))
    if ends[0] >= 0:
        return lo
    if ends[1] <= 0:
        return hi
    a_lo, a_hi = float(ends[0]), float(ends[1])
    tol = 1e-12 * max(1.0, abs(a_lo), abs(a_hi))
    for _ in range(rounds):
        ts = np.linspace(lo, hi, points)
        vals = advantage(ts)
        above = vals >= 0
        if not above[1:].any() or above[0]:
            break
        k = int(np.argmax(above))
        if vals[k] == 0:
            return float(ts[k])
        lo, hi = float(ts[k - 1]), float(ts[k])
        a_lo, a_hi = float(vals[k - 1]), float(vals[k])
        guess = lo + (hi - lo) * a_lo / (a_lo - a_hi)
        if lo < guess < hi:
            a = float(advantage(np.array([guess]))[0])
            if abs(a) <= tol:
                return guess
            if a < 0:
                lo, a_lo = guess, a
            else:
                hi, a_hi = guess, a
    return hi if abs(a_hi) <= abs(a_lo) else lo


def _batched_advantage(rule, base, candidates, probs, weights) -> np.ndarray:
    """Goodness of each candidate row minus that of ``base[-1]``, with the
    candidate appended to ``base``."""
    stack = np.concatenate(
        [np.broadcast_to(base, (len(candidates), *base.shape)), candidates[:, None, :]], axis=1
    )
    raw = score_matrix(rule, stack, probs, weights)
    sign = -1.0 if rule.minimizes else 1.0
    return sign * (raw[:, -1] - raw[:, -2])


def tie_with(
    rule: Rule,
    beliefs: WeightedBeliefs,
    others: list[Act],
    target: Act,
    seed_act: Act,
    name: str,
) -> Act:
    """An act on the path worst-constant -> ``seed_act`` -> best-constant tied with ``target``.

    The tie is evaluated in the menu ``others + [target, new act]``.
    """
    states, prizes = target.states, target.prizes
    worst = Act.from_prizes("_w", states, prizes, [prizes.worst] * len(states))
    best = Act.from_prizes("_b", states, prizes, [prizes.best] * len(states))
    probs, weights = _rule_arrays(rule, beliefs)
    base = np.vstack([a.utilities for a in others] + [target.utilities])
    uw, uf, ub = worst.utilities, seed_act.utilities, best.utilities

    def path(t: np.ndarray) -> np.ndarray:
        t = t[:, None]
        low = t * uf + (1.0 - t) * uw
        high = (t - 1.0) * ub + (2.0 - t) * uf
        return np.where(t <= 1.0, low, high)

    def advantage(t: np.ndarray) -> np.ndarray:
        return _batched_advantage(rule, base, path(t), probs, weights)

    t = bracket_root(advantage, 0.0, 2.0)
    if t <= 1.0:
        return mix_acts(t, seed_act, worst, name=name)
    return mix_acts(t - 1.0, best, seed_act, name=name)


def constant_tied_with(
    rule: Rule,
    beliefs: WeightedBeliefs,
    others: list[Act],
    target: Act,
    name: str,
) -> Act:
    """A constant act mixing the best and worst prizes, tied with ``target``.

    The tie is evaluated in ``others + [target, new act]``.
    """
    states, prizes = target.states, target.prizes
    worst = Act.from_prizes("_w", states, prizes, [prizes.worst] * len(states))
    best = Act.from_prizes("_b", states, prizes, [prizes.best] * len(states))
    probs, weights = _rule_arrays(rule, beliefs)
    base = np.vstack([a.utilities for a in others] + [target.utilities])
    uw, ub = worst.utilities, best.utilities

    def advantage(t: np.ndarray) -> np.ndarray:
        t = t[:, None]
        return _batched_advantage(rule, base, t * ub + (1 - t) * uw, probs, weights)

    t = bracket_root(advantage, 0.0, 1.0)
    return mix_acts(t, best, worst, name=name)
