"""Decisions under ambiguity with weighted sets of probability measures."""

from .convergence import (
    DeliveryReport,
    WeightTrajectory,
    delivery_demo,
    delivery_weight,
    ranking_divergence,
    simulate_iid,
)
from .errors import (
    InvalidReferenceError,
    MenuMembershipError,
    MwerError,
    RulePreconditionError,
    SpaceMismatchError,
    UpdateUndefinedError,
    ValidationError,
)
from .model import (
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
from .rules import (
    EPS_PREF,
    PreferenceRanking,
    Rule,
    expected_regret,
    max_expected_regret,
    max_weighted_expected_regret,
    rank,
    regret,
    scores,
    worst_case_regret,
)
from .scenario_io import dump_scenario, load_scenario, parse_scenario, scenario_document
from .updating import (
    UpdateResult,
    condition,
    epstein_schneider_update,
    event_weight,
    is_null_event,
    likelihood_update,
    measure_by_measure_update,
    sequential_update,
)

__version__ = "0.1.0"

__all__ = [
    "Act",
    "condition",
    "constant_act",
    "delivery_demo",
    "delivery_weight",
    "DeliveryReport",
    "dump_scenario",
    "EPS_PREF",
    "epstein_schneider_update",
    "Event",
    "event_weight",
    "expected_regret",
    "expected_utility",
    "InvalidReferenceError",
    "is_null_event",
    "likelihood_update",
    "load_scenario",
    "Lottery",
    "lottery_utility",
    "max_expected_regret",
    "max_weighted_expected_regret",
    "Measure",
    "measure_by_measure_update",
    "Menu",
    "MenuMembershipError",
    "mix_acts",
    "mix_menu",
    "MwerError",
    "parse_scenario",
    "PreferenceRanking",
    "PrizeSpace",
    "rank",
    "ranking_divergence",
    "regret",
    "Rule",
    "RulePreconditionError",
    "Scenario",
    "scenario_document",
    "scores",
    "sequential_update",
    "simulate_iid",
    "SpaceMismatchError",
    "splice",
    "splice_menu",
    "StateSpace",
    "UpdateResult",
    "UpdateUndefinedError",
    "ValidationError",
    "WeightedBeliefs",
    "WeightTrajectory",
    "worst_case_regret",
]
