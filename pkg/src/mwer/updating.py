"""Updating weighted belief sets on an observed event.

Likelihood updating conditions every measure and reweights it by how well it
predicted the event, relative to the best weighted predictor.  Measure-by-
measure and threshold (Epstein-Schneider) updating are provided as unweighted
baselines.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import SpaceMismatchError, UpdateUndefinedError, ValidationError
from .model import Event, Measure, WeightedBeliefs

GROUP_TOL = 1e-12
"""Conditionals closer than this in sup norm are the same measure."""


@dataclass(frozen=True)
class UpdateResult:
    beliefs: WeightedBeliefs
    dropped: frozenset[int]
    """Indices of source measures that gave the event probability zero."""
    groups: tuple[tuple[int, ...], ...]
    """``groups[k]`` lists the source indices merged into entry ``k``."""


def _check_space(beliefs: WeightedBeliefs, event: Event) -> None:
    if event.space != beliefs.space:
        raise SpaceMismatchError("event and beliefs over different state spaces")


def _likelihoods(beliefs: WeightedBeliefs, event: Event) -> np.ndarray:
    _check_space(beliefs, event)
    if event.mask.all():
        return np.ones(len(beliefs))
    return beliefs.matrix[:, event.mask].sum(axis=1)


def event_weight(beliefs: WeightedBeliefs, event: Event) -> float:
    """Largest weighted probability any measure gives the event."""
    return float(np.max(beliefs.weights * _likelihoods(beliefs, event)))


def is_null_event(beliefs: WeightedBeliefs, event: Event) -> bool:
    return event_weight(beliefs, event) == 0.0


def condition(measure: Measure, event: Event) -> Measure:
    """``Pr( . | E)``."""
    if event.space != measure.space:
        raise SpaceMismatchError("event and measure over different state spaces")
    if event.mask.all():
        return measure
    mass = measure.prob(event)
    if mass <= 0:
        raise UpdateUndefinedError(
            f"cannot condition {measure.name or 'measure'} on {event.label}: probability 0"
        )
    probs = np.where(event.mask, measure.vector, 0.0) / mass
    name = f"{measure.name}|{event.label}" if measure.name else None
    return Measure(measure.space, tuple(probs), name)


def _group(conditionals: list[tuple[int, Measure]]) -> list[list[tuple[int, Measure]]]:
    groups: list[list[tuple[int, Measure]]] = []
    for idx, m in conditionals:
        for g in groups:
            if g[0][1].distance(m) <= GROUP_TOL:
                g.append((idx, m))
                break
        else:
            groups.append([(idx, m)])
    return groups


def likelihood_update(beliefs: WeightedBeliefs, event: Event) -> UpdateResult:
    """Condition on ``event`` and reweight by relative weighted likelihood.

    Conditionals that coincide are merged, keeping the largest
    ``weight * Pr(E)`` of the merged sources.
    """
    likes = _likelihoods(beliefs, event)
    top = float(np.max(beliefs.weights * likes))
    if top == 0.0:
        raise UpdateUndefinedError(f"event {event.label} has zero weighted probability")
    dropped = frozenset(i for i, p in enumerate(likes) if p <= 0)
    survivors = [
        (i, condition(m, event)) for i, (m, _) in enumerate(beliefs.entries) if i not in dropped
    ]
    entries = []
    groups = []
    for members in _group(survivors):
        best = max(beliefs.weights[i] * likes[i] for i, _ in members)
        entries.append((members[0][1], float(best / top)))
        groups.append(tuple(i for i, _ in members))
    return UpdateResult(WeightedBeliefs(entries), dropped, tuple(groups))


def _unweighted(survivors: list[tuple[int, Measure]]) -> WeightedBeliefs:
    return WeightedBeliefs((g[0][1], 1.0) for g in _group(survivors))


def measure_by_measure_update(beliefs: WeightedBeliefs, event: Event) -> WeightedBeliefs:
    """Condition every measure that gives ``event`` positive probability.

    All weights are reset to 1.
    """
    _check_space(beliefs, event)
    survivors = [
        (i, condition(m, event)) for i, m in enumerate(beliefs.measures) if m.prob(event) > 0
    ]
    if not survivors:
        raise UpdateUndefinedError(f"no measure gives {event.label} positive probability")
    return _unweighted(survivors)


def epstein_schneider_update(
    beliefs: WeightedBeliefs, event: Event, threshold: float
) -> WeightedBeliefs:
    """Keep measures whose relative likelihood exceeds ``threshold``, then condition."""
    if not 0.0 < threshold < 1.0:
        raise ValidationError(f"threshold {threshold!r} outside (0, 1)")
    _check_space(beliefs, event)
    likes = [m.prob(event) for m in beliefs.measures]
    top = max(likes)
    if top <= 0:
        raise UpdateUndefinedError(f"no measure gives {event.label} positive probability")
    survivors = [
        (i, condition(m, event))
        for i, (m, p) in enumerate(zip(beliefs.measures, likes))
        if p / top > threshold
    ]
    return _unweighted(survivors)


def sequential_update(
    beliefs: WeightedBeliefs,
    events: Sequence[Event],
    update: Callable[[WeightedBeliefs, Event], UpdateResult] = likelihood_update,
) -> UpdateResult:
    """Apply likelihood updates in order, tracking provenance back to the sources."""
    current = beliefs
    origin: list[tuple[int, ...]] = [(i,) for i in range(len(beliefs))]
    for k, event in enumerate(events):
        try:
            step = update(current, event)
        except UpdateUndefinedError as exc:
            labels = ", ".join(e.label for e in events[: k + 1])
            raise UpdateUndefinedError(f"update undefined after prefix [{labels}]: {exc}") from exc
        origin = [tuple(sorted(i for j in grp for i in origin[j])) for grp in step.groups]
        current = step.beliefs
    kept = {i for grp in origin for i in grp}
    dropped = frozenset(range(len(beliefs))) - kept
    return UpdateResult(current, dropped, tuple(origin))
